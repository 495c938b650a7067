#include "saxl/action.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace saxl {

std::uint64_t CosetAction::canon_key(const Elem& x, Elem* rep) const {
  const PGammaL& G = group();
  std::uint64_t best = ~std::uint64_t{0};
  for (const auto& m : point_stab_.elements()) {
    Elem y = G.compose(m, x);
    std::uint64_t k = G.key(y);
    if (k < best) {
      best = k;
      if (rep) *rep = y;
    }
  }
  return best;
}

std::uint32_t CosetAction::image(std::uint32_t i, const Elem& g) const {
  const PGammaL& G = group();
  switch (model_) {
    case ActionModel::Coset:
      return index_.at(canon_key(G.compose(reps_[i], g), nullptr));
    case ActionModel::ProjectiveLine:
      return G.apply(i, g);
    case ActionModel::TwoSubset: {
      Point u = G.apply(pairs_[i].first, g), w = G.apply(pairs_[i].second, g);
      if (u > w) std::swap(u, w);
      return index_.at(std::uint64_t(u) * (G.q() + 1) + w);
    }
  }
  throw Error(ErrorCode::Internal, "unknown action model");
}

std::vector<std::uint32_t> CosetAction::perm_of(const Elem& g) const {
  std::vector<std::uint32_t> p(size());
  for (std::uint32_t i = 0; i < size(); ++i) p[i] = image(i, g);
  return p;
}

bool CosetAction::fixes(std::uint32_t i, const Elem& g) const {
  if (model_ != ActionModel::Coset) return image(i, g) == i;
  const PGammaL& G = group();
  const Elem& t = reps_[i];
  return point_stab_.contains(G.key(G.compose(G.compose(t, g), G.inverse(t))));
}

std::string CosetAction::label(std::uint32_t i) const {
  const std::uint32_t q = group().q();
  auto pt = [q](Point x) { return x == q ? std::string("inf") : std::to_string(x); };
  switch (model_) {
    case ActionModel::Coset: return "M" + std::to_string(i);
    case ActionModel::ProjectiveLine: return pt(i);
    case ActionModel::TwoSubset: return "{" + pt(pairs_[i].first) + "," + pt(pairs_[i].second) + "}";
  }
  return std::to_string(i);
}

void CosetAction::build_perms() {
  perms_.clear();
  for (const auto& g : gens_) perms_.push_back(perm_of(g));
}

CosetAction coset_action(const Level& L, const ElementSet& M, std::uint64_t ceiling) {
  const PGammaL& G = L.group();
  for (const auto& m : M.elements())
    if (!L.contains(m)) throw Error(ErrorCode::NotSubgroup, "M is not contained in G");
  if (M.size() == 0 || L.order() % M.size() || !M.contains(G, G.identity()))
    throw Error(ErrorCode::NotSubgroup, "M is not a subgroup of G");
  const std::uint64_t npts = L.order() / M.size();
  if (npts > ceiling)
    throw Error(ErrorCode::TooManyPoints, std::to_string(npts) + " points exceed ceiling " + std::to_string(ceiling));

  CosetAction A(L);
  A.model_ = ActionModel::Coset;
  A.point_stab_ = M;
  A.stab_ = M;
  A.gens_ = L.generators();
  const std::size_t ng = A.gens_.size();

  std::vector<Elem> reps;
  std::vector<std::uint64_t> keys;
  std::unordered_map<std::uint64_t, std::uint32_t> idx;
  std::vector<std::vector<std::uint32_t>> img(ng);
  {
    Elem r;
    std::uint64_t k = A.canon_key(G.identity(), &r);
    reps.push_back(r);
    keys.push_back(k);
    idx.emplace(k, 0);
  }
  for (std::uint32_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = 0; j < ng; ++j) {
      Elem r;
      std::uint64_t k = A.canon_key(G.compose(reps[i], A.gens_[j]), &r);
      auto [it, fresh] = idx.emplace(k, static_cast<std::uint32_t>(reps.size()));
      if (fresh) {
        if (reps.size() >= npts) throw Error(ErrorCode::NotSubgroup, "more cosets than |G:M|");
        reps.push_back(r);
        keys.push_back(k);
      }
      img[j].push_back(it->second);
    }
  }
  if (reps.size() != npts) throw Error(ErrorCode::NotSubgroup, "coset count differs from |G:M|");

  // relabel points by ascending representative key
  std::vector<std::uint32_t> order(reps.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return keys[x] < keys[y]; });
  std::vector<std::uint32_t> relabel(reps.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) relabel[order[i]] = i;
  A.reps_.resize(reps.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) {
    A.reps_[i] = reps[order[i]];
    A.index_.emplace(keys[order[i]], i);
  }
  A.perms_.assign(ng, std::vector<std::uint32_t>(reps.size()));
  for (std::size_t j = 0; j < ng; ++j)
    for (std::uint32_t old = 0; old < reps.size(); ++old) A.perms_[j][relabel[old]] = relabel[img[j][old]];
  A.base_ = relabel[0];
  if (!is_faithful(A)) throw Error(ErrorCode::UnfaithfulAction, "the core of M in G is nontrivial");
  return A;
}

namespace {

// representatives by BFS over the generators, starting at the base point
void geometric_reps(CosetAction& A, std::vector<Elem>& reps, const std::vector<Elem>& gens,
                    const std::function<std::uint32_t(std::uint32_t, const Elem&)>& act, std::uint32_t base,
                    std::size_t npts) {
  const PGammaL& G = A.group();
  reps.assign(npts, G.identity());
  std::vector<bool> seen(npts, false);
  seen[base] = true;
  std::deque<std::uint32_t> todo{base};
  std::size_t count = 1;
  while (!todo.empty()) {
    std::uint32_t i = todo.front();
    todo.pop_front();
    for (const auto& g : gens) {
      std::uint32_t j = act(i, g);
      if (!seen[j]) {
        seen[j] = true;
        reps[j] = G.compose(reps[i], g);
        todo.push_back(j);
        ++count;
      }
    }
  }
  if (count != npts) throw Error(ErrorCode::Internal, "geometric action is not transitive");
}

}  // namespace

CosetAction projective_line_action(const Level& L) {
  const PGammaL& G = L.group();
  CosetAction A(L);
  A.model_ = ActionModel::ProjectiveLine;
  A.base_ = G.infinity();
  A.gens_ = L.generators();
  std::vector<Elem> stab;
  L.for_each([&](const Elem& g) {
    if (g.mat.c == G.field().zero()) stab.push_back(g);
  });
  A.stab_ = ElementSet(G, std::move(stab));
  A.point_stab_ = A.stab_;
  geometric_reps(A, A.reps_, A.gens_, [&](std::uint32_t i, const Elem& g) { return G.apply(i, g); }, A.base_,
                 G.q() + 1);
  A.build_perms();
  return A;
}

CosetAction two_subset_action(const Level& L) {
  const PGammaL& G = L.group();
  if (G.field().p() == 2) throw Error(ErrorCode::UnsupportedCase, "two-subset action is built for odd q");
  const std::uint32_t q = G.q();
  CosetAction A(L);
  A.model_ = ActionModel::TwoSubset;
  for (Point u = 0; u <= q; ++u)
    for (Point w = u + 1; w <= q; ++w) {
      A.index_.emplace(std::uint64_t(u) * (q + 1) + w, static_cast<std::uint32_t>(A.pairs_.size()));
      A.pairs_.emplace_back(u, w);
    }
  A.base_ = A.index_.at(q);  // {0, inf}
  A.gens_ = L.generators();
  A.stab_ = pair_stabilizer(L, 0, q);
  A.point_stab_ = A.stab_;
  geometric_reps(A, A.reps_, A.gens_, [&](std::uint32_t i, const Elem& g) { return A.image(i, g); }, A.base_,
                 A.pairs_.size());
  A.build_perms();
  return A;
}

CosetAction restrict_action(const CosetAction& A, const Level& H) {
  if (!A.level().contains_level(H)) throw Error(ErrorCode::NotSubset, "H is not inside the acting group");
  CosetAction B = A;
  B.level_ = H;
  B.gens_ = H.generators();
  std::vector<Elem> st;
  for (const auto& m : A.point_stab_.elements())
    if (H.contains(m)) st.push_back(m);
  B.stab_ = ElementSet(A.group(), std::move(st));
  B.build_perms();
  if (!is_transitive(B)) throw Error(ErrorCode::MisalignedActions, "restricted group is not transitive");
  if (H.order() != B.stab_.size() * B.size())
    throw Error(ErrorCode::Internal, "orbit-stabilizer mismatch after restriction");
  return B;
}

std::uint64_t SuborbitDecomposition::regular_count() const {
  return static_cast<std::uint64_t>(
      std::count_if(suborbits.begin(), suborbits.end(), [](const Suborbit& s) { return s.regular; }));
}

std::vector<std::uint64_t> SuborbitDecomposition::lengths() const {
  std::vector<std::uint64_t> out;
  for (const auto& s : suborbits) out.push_back(s.length);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::uint32_t>> orbits_of(const CosetAction& A, const std::vector<Elem>& gens) {
  std::vector<std::vector<std::uint32_t>> perms;
  for (const auto& g : gens) perms.push_back(A.perm_of(g));
  const std::size_t N = A.size();
  std::vector<std::int32_t> orb(N, -1);
  std::vector<std::vector<std::uint32_t>> out;
  for (std::uint32_t s = 0; s < N; ++s) {
    if (orb[s] >= 0) continue;
    std::int32_t id = static_cast<std::int32_t>(out.size());
    out.emplace_back();
    std::vector<std::uint32_t> stack{s};
    orb[s] = id;
    while (!stack.empty()) {
      std::uint32_t x = stack.back();
      stack.pop_back();
      out.back().push_back(x);
      for (const auto& p : perms) {
        std::uint32_t y = p[x];
        if (orb[y] < 0) {
          orb[y] = id;
          stack.push_back(y);
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

SuborbitDecomposition suborbits(const CosetAction& A) {
  const PGammaL& G = A.group();
  auto orbs = orbits_of(A, generating_set(G, A.stabilizer()));
  std::stable_partition(orbs.begin(), orbs.end(), [&](const auto& o) {
    return o.size() == 1 && o[0] == A.base_point();
  });
  SuborbitDecomposition D;
  D.orbit_of.assign(A.size(), 0);
  const std::uint64_t m = A.stab_order();
  for (auto& o : orbs) {
    Suborbit s;
    s.length = o.size();
    if (m % s.length) throw Error(ErrorCode::Internal, "suborbit length does not divide |M|");
    s.stab_order = m / s.length;
    s.regular = s.length == m;
    for (auto x : o) D.orbit_of[x] = static_cast<std::uint32_t>(D.suborbits.size());
    if (s.regular) D.gamma.insert(D.gamma.end(), o.begin(), o.end());
    s.points = std::move(o);
    D.suborbits.push_back(std::move(s));
  }
  std::sort(D.gamma.begin(), D.gamma.end());
  return D;
}

ElementSet point_stabilizer(const CosetAction& A, std::uint32_t beta) {
  const PGammaL& G = A.group();
  const Elem& t = A.rep(beta);
  Elem ti = G.inverse(t);
  // levels are normal in PGammaL, so t^-1 G_alpha t is the stabilizer of beta
  std::vector<Elem> out;
  for (const auto& m : A.stabilizer().elements()) out.push_back(G.compose(G.compose(ti, m), t));
  return ElementSet(G, std::move(out));
}

std::vector<std::uint32_t> fixed_points(const CosetAction& A, const std::vector<Elem>& K) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < A.size(); ++i) {
    bool all = true;
    for (const auto& k : K)
      if (!A.fixes(i, k)) {
        all = false;
        break;
      }
    if (all) out.push_back(i);
  }
  return out;
}

bool is_faithful(const CosetAction& A) {
  const Elem id = A.group().identity();
  for (const auto& m : A.stabilizer().elements()) {
    if (m == id) continue;
    bool all = true;
    for (std::uint32_t i = 0; i < A.size() && all; ++i) all = A.fixes(i, m);
    if (all) return false;
  }
  return true;
}

bool is_transitive(const CosetAction& A) {
  return schreier_tree(A).bfs_order.size() == A.size();
}

bool is_primitive(const CosetAction& A) {
  const std::size_t N = A.size();
  if (N <= 2) return true;
  auto D = suborbits(A);
  const std::uint32_t alpha = A.base_point();
  for (std::size_t s = 1; s < D.suborbits.size(); ++s) {
    std::uint32_t beta = D.suborbits[s].points.front();
    std::vector<std::uint32_t> parent(N);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::size_t classes = N;
    std::deque<std::pair<std::uint32_t, std::uint32_t>> todo;
    parent[find(beta)] = find(alpha);
    --classes;
    todo.emplace_back(alpha, beta);
    while (!todo.empty() && classes > 1) {
      auto [a, b] = todo.front();
      todo.pop_front();
      for (const auto& p : A.perms()) {
        std::uint32_t x = find(p[a]), y = find(p[b]);
        if (x != y) {
          parent[y] = x;
          --classes;
          todo.emplace_back(p[a], p[b]);
        }
      }
    }
    if (classes > 1) return false;
  }
  return true;
}

SchreierTree schreier_tree(const CosetAction& A) {
  SchreierTree T;
  const std::size_t N = A.size();
  T.parent.assign(N, -2);
  T.via.assign(N, -1);
  T.parent[A.base_point()] = -1;
  T.bfs_order.push_back(A.base_point());
  for (std::size_t h = 0; h < T.bfs_order.size(); ++h) {
    std::uint32_t x = T.bfs_order[h];
    for (std::size_t j = 0; j < A.perms().size(); ++j) {
      std::uint32_t y = A.perms()[j][x];
      if (T.parent[y] == -2) {
        T.parent[y] = static_cast<std::int32_t>(x);
        T.via[y] = static_cast<std::int32_t>(j);
        T.bfs_order.push_back(y);
      }
    }
  }
  return T;
}

std::vector<std::uint32_t> translate(const CosetAction& A, const SchreierTree& T,
                                     const std::vector<std::uint32_t>& S, std::uint32_t target) {
  std::vector<std::int32_t> word;
  for (std::int32_t x = static_cast<std::int32_t>(target); T.parent[x] >= 0; x = T.parent[x]) {
    if (T.parent[x] == -2) throw Error(ErrorCode::Internal, "point not reached by the Schreier tree");
    word.push_back(T.via[x]);
  }
  std::vector<std::uint32_t> cur = S;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    const auto& p = A.perms()[*it];
    for (auto& x : cur) x = p[x];
  }
  return cur;
}

std::optional<std::vector<std::uint32_t>> g_set_isomorphism(const CosetAction& A, const CosetAction& B) {
  if (A.size() != B.size() || !A.level().same_group(B.level())) return std::nullopt;
  const std::size_t N = A.size();
  std::vector<std::uint32_t> phi(N);
  std::vector<bool> hit(N, false);
  for (std::uint32_t i = 0; i < N; ++i) {
    phi[i] = B.image(B.base_point(), A.rep(i));
    if (hit[phi[i]]) return std::nullopt;
    hit[phi[i]] = true;
  }
  for (std::size_t j = 0; j < A.generators().size(); ++j)
    for (std::uint32_t i = 0; i < N; ++i)
      if (phi[A.perms()[j][i]] != B.image(phi[i], A.generators()[j])) return std::nullopt;
  return phi;
}

}  // namespace saxl
