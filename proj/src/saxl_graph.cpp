#include "saxl/saxl_graph.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <random>

#include "saxl/numtheory.hpp"

namespace saxl {

int base_size(const CosetAction& A) { return base_size(A, suborbits(A)); }

int base_size(const CosetAction& A, const SuborbitDecomposition& D) {
  if (A.stab_order() == 1) return 1;
  if (D.regular_count() > 0) return 2;
  const PGammaL& G = A.group();
  // b <= 3 iff some G_{alpha,beta} has a regular orbit; beta up to G_alpha
  for (std::size_t s = 1; s < D.suborbits.size(); ++s) {
    std::uint32_t beta = D.suborbits[s].points.front();
    std::vector<Elem> two;
    for (const auto& m : A.stabilizer().elements())
      if (A.fixes(beta, m)) two.push_back(m);
    ElementSet S2(G, std::move(two));
    for (const auto& o : orbits_of(A, generating_set(G, S2)))
      if (o.size() == S2.size()) return 3;
  }
  return kBaseMoreThan3;
}

std::vector<std::uint32_t> SaxlGraph::neighbors(std::uint32_t u) const {
  std::vector<std::uint32_t> out;
  for (std::size_t w = 0; w < words_; ++w) {
    std::uint64_t bits = rows_[u * words_ + w];
    while (bits) {
      int b = std::countr_zero(bits);
      out.push_back(static_cast<std::uint32_t>(w * 64 + b));
      bits &= bits - 1;
    }
  }
  return out;
}

std::size_t SaxlGraph::degree(std::uint32_t u) const {
  std::size_t d = 0;
  for (std::size_t w = 0; w < words_; ++w) d += std::popcount(rows_[u * words_ + w]);
  return d;
}

int SaxlGraph::eccentricity(std::uint32_t v) const {
  std::vector<int> dist(n_, -1);
  dist[v] = 0;
  std::deque<std::uint32_t> todo{v};
  std::size_t reached = 1;
  int ecc = 0;
  while (!todo.empty()) {
    std::uint32_t x = todo.front();
    todo.pop_front();
    for (auto y : neighbors(x)) {
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        ecc = std::max(ecc, dist[y]);
        ++reached;
        todo.push_back(y);
      }
    }
  }
  return reached == n_ ? ecc : -1;
}

bool SaxlGraph::symmetric() const {
  for (std::uint32_t u = 0; u < n_; ++u)
    for (auto v : neighbors(u))
      if (!adjacent(v, u)) return false;
  return true;
}

bool SaxlGraph::loop_free() const {
  for (std::uint32_t u = 0; u < n_; ++u)
    if (adjacent(u, u)) return false;
  return true;
}

bool SaxlGraph::regular() const {
  for (std::uint32_t u = 0; u < n_; ++u)
    if (degree(u) != gamma_.size()) return false;
  return true;
}

SaxlGraph saxl_graph(const CosetAction& A) { return saxl_graph(A, suborbits(A)); }

SaxlGraph saxl_graph(const CosetAction& A, const SuborbitDecomposition& D) {
  if (base_size(A, D) != 2) throw Error(ErrorCode::NotBaseTwo, "Saxl graph needs b(G) = 2");
  const std::size_t N = A.size();
  if (N > kGraphCeiling) throw Error(ErrorCode::TooManyPoints, "Saxl graph too large for bitset rows");
  SaxlGraph S;
  S.n_ = N;
  S.words_ = (N + 63) / 64;
  S.alpha_ = A.base_point();
  S.gamma_ = D.gamma;
  S.rows_.assign(N * S.words_, 0);
  auto T = schreier_tree(A);
  if (T.bfs_order.size() != N) throw Error(ErrorCode::Internal, "action is not transitive");
  // row(x) = Gamma^t for t with alpha^t = x; children translate their parent's row
  std::vector<std::vector<std::uint32_t>> pending(N);
  pending[S.alpha_] = D.gamma;
  for (auto x : T.bfs_order) {
    if (T.parent[x] >= 0) {
      const auto& prow = pending[static_cast<std::uint32_t>(T.parent[x])];
      const auto& p = A.perms()[static_cast<std::size_t>(T.via[x])];
      pending[x].reserve(prow.size());
      for (auto y : prow) pending[x].push_back(p[y]);
    }
  }
  for (std::uint32_t x = 0; x < N; ++x) {
    for (auto y : pending[x]) S.rows_[x * S.words_ + y / 64] |= std::uint64_t{1} << (y % 64);
    std::vector<std::uint32_t>().swap(pending[x]);
  }
  return S;
}

Diameter diameter(const SaxlGraph& S, unsigned seed) {
  Diameter out;
  out.value = S.eccentricity(S.alpha());
  out.connected = out.value >= 0;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(S.n_vertices() - 1));
  for (int i = 0; i < 3; ++i) {
    std::uint32_t v = pick(rng);
    out.spot_checked.push_back(v);
    if (S.eccentricity(v) != out.value)
      throw Error(ErrorCode::Internal, "eccentricity differs between vertices of a vertex-transitive graph");
  }
  return out;
}

BgVerdict bg_property_check(const CosetAction& A) { return bg_property_check(A, suborbits(A)); }

BgVerdict bg_property_check(const CosetAction& A, const SuborbitDecomposition& D) {
  BgVerdict v;
  const std::size_t N = A.size();
  std::vector<bool> in_gamma(N, false);
  for (auto x : D.gamma) in_gamma[x] = true;
  auto T = schreier_tree(A);
  // Gamma cap Gamma^g is empty or not uniformly on each G_alpha-orbit of alpha^g
  for (std::size_t s = 1; s < D.suborbits.size(); ++s) {
    const auto& so = D.suborbits[s];
    if (so.regular) continue;
    ++v.checked_suborbits;
    auto img = translate(A, T, D.gamma, so.points.front());
    bool meet = std::any_of(img.begin(), img.end(), [&](std::uint32_t x) { return in_gamma[x]; });
    if (!meet) {
      v.holds = false;
      if (!v.witness || so.points.front() < *v.witness) v.witness = so.points.front();
    }
  }
  return v;
}

int diameter_class(const CosetAction& A, const SuborbitDecomposition& D) {
  if (base_size(A, D) != 2) return 0;
  if (D.gamma.size() + 1 == A.size()) return 1;
  return bg_property_check(A, D).holds ? 2 : 3;
}

InheritanceResult subgroup_inheritance_check(const CosetAction& AG, const CosetAction& AG1) {
  if (AG.size() != AG1.size() || AG.model() != AG1.model())
    throw Error(ErrorCode::MisalignedActions, "actions have different point sets");
  for (std::uint32_t i = 0; i < AG.size(); ++i)
    if (!(AG.rep(i) == AG1.rep(i))) throw Error(ErrorCode::MisalignedActions, "representatives differ");
  if (!AG.level().contains_level(AG1.level()))
    throw Error(ErrorCode::MisalignedActions, "G1 is not a subgroup of G");
  auto DG = suborbits(AG), D1 = suborbits(AG1);
  InheritanceResult r;
  r.gamma_contained = std::includes(D1.gamma.begin(), D1.gamma.end(), DG.gamma.begin(), DG.gamma.end());
  int dg = diameter_class(AG, DG), d1 = diameter_class(AG1, D1);
  r.diameter_inherited = dg != 2 || d1 == 2 || d1 == 1;
  return r;
}

bool merge_check(const CosetAction& AT, const CosetAction& APGL, const SubgroupSpec& family) {
  const FieldCtx& F = AT.group().field();
  unsigned n = F.n(), m = family.m;
  if (family.family != Family::Subfield || m == 0 || n % m || !is_prime(n / m) || (n / m) % 2 == 0)
    throw Error(ErrorCode::FamilyMismatch, "merge_check needs the subfield family with n/m an odd prime");
  if (AT.size() != APGL.size()) throw Error(ErrorCode::MisalignedActions, "actions have different sizes");
  auto DT = suborbits(AT), DP = suborbits(APGL);
  // PGL-suborbit -> the T-suborbits it contains
  std::vector<std::vector<std::size_t>> parts(DP.suborbits.size());
  for (std::size_t s = 0; s < DT.suborbits.size(); ++s)
    parts[DP.orbit_of[DT.suborbits[s].points.front()]].push_back(s);
  for (std::size_t s = 0; s < DT.suborbits.size(); ++s) {
    if (!DT.suborbits[s].regular) continue;
    const auto& part = parts[DP.orbit_of[DT.suborbits[s].points.front()]];
    if (part.size() != 2) return false;
    for (auto t : part)
      if (!DT.suborbits[t].regular) return false;
  }
  return true;
}

void write_dot(const SaxlGraph& S, const CosetAction& A, std::ostream& os) {
  os << "graph saxl {\n";
  for (std::uint32_t v = 0; v < S.n_vertices(); ++v) {
    os << "  " << v << " [label=\"" << A.label(v) << "\"";
    if (v == S.alpha()) os << ", style=filled, fillcolor=gold";
    os << "];\n";
  }
  for (std::uint32_t u = 0; u < S.n_vertices(); ++u)
    for (auto v : S.neighbors(u))
      if (u < v) os << "  " << u << " -- " << v << ";\n";
  os << "}\n";
}

}  // namespace saxl
