#include "saxl/formulas.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "saxl/numtheory.hpp"

namespace saxl {

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

BoundReport make_bound(std::string name, std::vector<std::pair<std::string, std::int64_t>> params,
                       Rational bound, Rational observed, BoundKind kind) {
  BoundReport b;
  b.name = std::move(name);
  b.parameters = std::move(params);
  b.bound = std::move(bound);
  b.observed = std::move(observed);
  b.kind = kind;
  switch (kind) {
    case BoundKind::Upper: b.satisfied = b.observed <= b.bound; break;
    case BoundKind::Lower: b.satisfied = b.observed >= b.bound; break;
    case BoundKind::Exact: b.satisfied = b.observed == b.bound; break;
  }
  return b;
}

// ---------------------------------------------------------------- character sums

std::int64_t feng_lower_bound(std::uint64_t q) {
  // smallest k with 8k >= q - 7 - 2 sqrt(q), i.e. X - 8k <= 0 or (X - 8k)^2 <= 4q
  const std::int64_t X = static_cast<std::int64_t>(q) - 7;
  auto holds = [&](std::int64_t k) {
    BigInt d = BigInt(X) - 8 * BigInt(k);
    return d <= 0 || d * d <= 4 * BigInt(q);
  };
  std::int64_t k = (X - 2 * static_cast<std::int64_t>(isqrt(q) + 1)) / 8 - 2;
  while (!holds(k)) ++k;
  return std::max<std::int64_t>(k, 0);
}

std::int64_t w_of_q(std::uint64_t q) { return 2 * feng_lower_bound(q); }

int feng_l_term(const FieldCtx& F, FieldElement t) {
  if (F.p() == 2) throw Error(ErrorCode::EvenCharacteristic, "quadratic character needs odd q");
  FieldElement one = F.one();
  int e_t = F.eta(t);
  int e_tt = F.eta(F.sub(F.mul(t, t), t));
  if (F.eta(F.neg(one)) == 1) return 3 * F.eta(F.sub(t, one)) + e_tt + 1 - e_t;
  return F.eta(F.sub(one, t)) + e_tt - 3 * e_t - 1;
}

Rational feng_w_formula(const FieldCtx& F, FieldElement t) {
  std::int64_t m = char_sum_cubic(F, t);
  return Rational(static_cast<std::int64_t>(F.q()) - 3 + m + feng_l_term(F, t), 8);
}

// ---------------------------------------------------------------- involutions

std::vector<Elem> involutions_T(const PGammaL& G) {
  Level T(G, GroupLevel{});
  const Elem id = G.identity();
  std::vector<Elem> out;
  T.for_each([&](const Elem& g) {
    if (!(g == id) && G.compose(g, g) == id) out.push_back(g);
  });
  return out;
}

namespace {

bool is_central(const PGammaL& G, const ElementSet& M, const Elem& z) {
  for (const auto& m : M.elements())
    if (!(G.compose(m, z) == G.compose(z, m))) return false;
  return true;
}

}  // namespace

std::uint64_t involution_partner_count(const PGammaL& G, const Elem& g, const SubgroupSpec& M) {
  const Elem id = G.identity();
  if (g == id || !(G.compose(g, g) == id) || !G.is_psl(g))
    throw Error(ErrorCode::NotInvolution, "g is not an involution of T");
  const ElementSet& M0 = M.socle_part;
  if (M0.contains(G, g)) throw Error(ErrorCode::InsideM, "g lies in M");
  const std::uint64_t half = (G.q() + 1) / 2;
  std::uint64_t count = 0;
  for (const auto& m : M0.elements()) {
    if (m == id || !(G.compose(m, m) == id) || is_central(G, M0, m)) continue;
    std::uint64_t o = G.order_upto(G.compose(m, g), half);
    if (o > 2 && half % o == 0) ++count;
  }
  return count;
}

// ---------------------------------------------------------------- incidence graph

IncidenceGraphY incidence_graph_Y(std::uint32_t q) {
  if (q > 31) throw Error(ErrorCode::TooLarge, "incidence graph is built for q <= 31");
  if (q % 2 == 0 || q < 11) throw Error(ErrorCode::BadParameters, "incidence graph needs odd q >= 11");
  PGammaL G(make_field_q(q));
  Level T(G, GroupLevel{});
  SubgroupSpec M = dihedral_plus(T);
  const ElementSet& M0 = M.socle_part;
  CosetAction A = coset_action(T, M0);

  IncidenceGraphY Y;
  Y.q = q;
  Y.w = w_of_q(q);
  Y.involutions = involutions_T(G);
  std::unordered_map<std::uint64_t, std::uint32_t> inv_index;
  for (std::uint32_t i = 0; i < Y.involutions.size(); ++i) inv_index[G.key(Y.involutions[i])] = i;

  std::set<std::vector<std::uint64_t>> seen;
  for (std::uint32_t i = 0; i < A.size(); ++i) {
    ElementSet D = conjugate_set(G, M0, A.rep(i));
    if (!seen.insert(D.keys()).second) throw Error(ErrorCode::Internal, "repeated conjugate of D_{q+1}");
    Y.dihedrals.push_back(std::move(D));
  }
  const std::size_t nD = Y.dihedrals.size(), nI = Y.involutions.size();
  Y.inv_of.resize(nD);
  Y.d_of.resize(nI);
  for (std::uint32_t b = 0; b < nD; ++b)
    for (auto k : Y.dihedrals[b].keys()) {
      auto it = inv_index.find(k);
      if (it == inv_index.end()) continue;
      Y.inv_of[b].push_back(it->second);
      Y.d_of[it->second].push_back(b);
    }

  auto bfs = [&](std::size_t src) {
    std::vector<int> dist(nD + nI, -1);
    std::vector<std::size_t> todo{src};
    dist[src] = 0;
    for (std::size_t h = 0; h < todo.size(); ++h) {
      std::size_t x = todo[h];
      auto visit = [&](std::size_t y) {
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          todo.push_back(y);
        }
      };
      if (x < nD)
        for (auto i : Y.inv_of[x]) visit(nD + i);
      else
        for (auto b : Y.d_of[x - nD]) visit(b);
    }
    return dist;
  };
  Y.dist_from_alpha = bfs(0);
  Y.diameter = 0;
  for (std::size_t v = 0; v < nD + nI; ++v) {
    auto d = bfs(v);
    for (int x : d) Y.diameter = x < 0 ? -1 : std::max(Y.diameter, x);
    if (Y.diameter < 0) break;
  }
  for (std::size_t b = 0; b < nD; ++b) {
    if (Y.dist_from_alpha[b] == 2) ++Y.y2_size;
    if (Y.dist_from_alpha[b] == 4) ++Y.y4_size;
  }

  auto y2 = [&](std::uint32_t b) {
    std::set<std::uint32_t> out;
    for (auto i : Y.inv_of[b])
      for (auto c : Y.d_of[i])
        if (c != b) out.insert(c);
    return out;
  };
  const auto y2a = y2(0);
  const Rational w(Y.w);
  const bool one_mod_4 = q % 4 == 1;
  for (std::uint32_t b = 1; b < nD; ++b) {
    IncidenceGraphY::Row r;
    r.beta = b;
    r.distance = Y.dist_from_alpha[b];
    for (auto k : Y.dihedrals[b].keys()) r.meet += Y.dihedrals[0].contains(k);
    for (auto c : y2(b)) r.n_beta += y2a.count(c);
    if (one_mod_4)
      r.bound = r.distance == 2 ? Rational(q - 1, 2) * w - 2 : Rational(q + 1, 2) * w;
    else
      r.bound = r.meet == 1 ? Rational(q + 1, 4) * w : Rational(q - 3, 4) * w + Rational(q + 1, 4);
    r.ok = Rational(r.n_beta) >= r.bound;
    Y.rows.push_back(std::move(r));
  }
  return Y;
}

bool IncidenceGraphY::census_ok() const {
  const std::uint64_t a = (std::uint64_t(q) * q - 2 * q - 3) / 4, b = (std::uint64_t(q) * q - 1) / 4;
  return q % 4 == 1 ? (y2_size == a && y4_size == b) : (y2_size == b && y4_size == a);
}

bool IncidenceGraphY::bounds_ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const Row& r) { return r.ok; });
}

bool IncidenceGraphY::summary_bound_ok() const {
  Rational s = Rational(q - 3, 4) * w;
  return std::all_of(rows.begin(), rows.end(), [&](const Row& r) { return Rational(r.n_beta) >= s; });
}

bool IncidenceGraphY::degrees_ok() const {
  const std::size_t want = q % 4 == 1 ? (q + 1) / 2 : (q + 3) / 2;
  return std::all_of(inv_of.begin(), inv_of.end(), [&](const auto& v) { return v.size() == want; });
}

// ---------------------------------------------------------------- fixed-point counts

std::uint64_t manning_fixed_points(const Level& L, const ElementSet& H, const ElementSet& K) {
  const PGammaL& G = L.group();
  std::uint64_t total = 0;
  for (const auto& Ki : subgroup_conjugacy_classes(L, K, H)) {
    ElementSet N = normalizer(L, Ki);
    std::uint64_t in_h = 0;
    for (auto k : N.keys()) in_h += H.contains(k);
    if (N.size() % in_h) throw Error(ErrorCode::Internal, "N_H(K) does not divide N_G(K)");
    total += N.size() / in_h;
  }
  (void)G;
  return total;
}

namespace {

void check_subfield_params(std::uint32_t p, unsigned m, unsigned n) {
  if (!is_prime(p) || m == 0 || n % m || ipow(p, m) <= 2 ||
      !((is_prime(n / m) && (n / m) % 2 == 1) || (p == 2 && n == 2 * m)))
    throw Error(ErrorCode::BadParameters, "need p^m > 2 and n/m an odd prime, or p = 2 and n = 2m");
}

}  // namespace

BigInt omega_size_subfield(std::uint32_t p, unsigned m, unsigned n) {
  check_subfield_params(p, m, n);
  BigInt P = p;
  return pow(P, n - m) * (pow(P, 2 * n) - 1) / (pow(P, 2 * m) - 1);
}

BigInt gamma_size_subfield(std::uint32_t p, unsigned m, unsigned n) {
  check_subfield_params(p, m, n);
  const BigInt P = p, pm = pow(P, m), pn = pow(P, n);
  const int sign = (n / m) % 2 == 1 ? 1 : -1;  // (-1)^(n/m - 1)
  Rational g = Rational(pow(P, n - m) * (pn * pn - 1), pm * pm - 1) - 1 - Rational(BigInt((pow(P, n - m) - 1) * (pm + 1)));
  g -= Rational(1, 2) * (Rational(pn - 1, pm - 1) - 1) * Rational(BigInt(pm * (pm + 1)));
  g -= Rational(1, 2) * (Rational(pn + sign, pm + 1) - 1) * Rational(BigInt(pm * (pm - 1)));
  if (denominator(g) != 1) throw Error(ErrorCode::Internal, "|Gamma| formula is not an integer");
  return numerator(g);
}

QHat q_hat(const CosetAction& A) {
  const PGammaL& G = A.group();
  const ElementSet& M = A.stabilizer();
  std::vector<ElementSet> subs;
  std::set<std::vector<std::uint64_t>> seen;
  for (const auto& x : M.elements()) {
    std::uint64_t o = G.order(x);
    if (o < 2 || !is_prime(o)) continue;
    ElementSet C = closure(G, {x});
    if (seen.insert(C.keys()).second) subs.push_back(std::move(C));
  }
  QHat out;
  out.value = 0;
  for (const auto& cls : partition_by_conjugacy(G, M, subs)) {
    const ElementSet& K = subs[cls.front()];
    Elem x = K.elements().front() == G.identity() ? K.elements()[1] : K.elements().front();
    std::uint64_t fix = fixed_points(A, {x}).size();
    out.reps.push_back(x);
    out.class_sizes.push_back(cls.size());
    out.fix_counts.push_back(fix);
    out.value += Rational(cls.size() * fix);
  }
  out.value /= Rational(A.size());
  return out;
}

Rational q_hat_estimate(std::uint64_t m0_order, std::uint32_t p, unsigned n) {
  if (m0_order == 60 && n == 2) {
    const std::int64_t P = p;
    Rational fix_inv = Rational(2 * P * P * P + 3 * P * P - 2 * P - 3, 12);
    Rational sum = Rational(120) * (Rational(1, 8) + Rational(1, 12)) * fix_inv +
                   Rational(120, 12) * Rational(2 * (P * P + 1), 12) + Rational(120, 20) * Rational(2 * (P * P + 1), 20);
    return sum * Rational(120, P * P * (P * P * P * P - 1));
  }
  if (n != 1) throw Error(ErrorCode::FamilyMismatch, "no closed-form estimate for this field");
  std::int64_t c = 0;
  switch (m0_order) {
    case 12: c = 122; break;
    case 24: c = 194; break;
    case 60: c = 722; break;
    default: throw Error(ErrorCode::FamilyMismatch, "no closed-form estimate for this subgroup");
  }
  return Rational(c, std::int64_t(p) * (p - 1));
}

// ---------------------------------------------------------------- 2-subsets

namespace {

void check_pair(const FieldCtx& F, Point u, Point w) {
  if (F.p() == 2) throw Error(ErrorCode::EvenCharacteristic, "2-subset characterization needs odd q");
  if (u == w) throw Error(ErrorCode::DegeneratePair, "u = w");
  if (u > F.q() || w > F.q()) throw Error(ErrorCode::BadParameters, "point outside PG(1,q)");
}

bool special(const FieldCtx& F, Point x) { return x == 0 || x == F.q(); }

}  // namespace

bool fixed_pair_in_X(const FieldCtx& F, Point u, Point w) {
  check_pair(F, u, w);
  if (special(F, u) && special(F, w)) return true;
  if (special(F, u) || special(F, w)) return false;
  return F.eta(F.neg(F.div(F.at(w), F.at(u)))) == 1;
}

bool fixed_pair_T_not_G(const FieldCtx& F, Point u, Point w) {
  check_pair(F, u, w);
  if (special(F, u) && special(F, w)) return false;
  if (special(F, u) || special(F, w)) return F.n() >= 2;
  if (fixed_pair_in_X(F, u, w)) return false;
  FieldElement ratio = F.div(F.at(w), F.at(u));
  for (unsigned r = 1; r < F.n(); ++r)
    if (F.n() % r == 0 && F.in_subfield(ratio, r)) return true;
  return false;
}

// ---------------------------------------------------------------- n'(r')

NPrimeObservation observe_n_prime(const CosetAction& A, const ElementSet& M0, unsigned r_prime, bool slow) {
  const PGammaL& G = A.group();
  const ElementSet& M = A.stabilizer();
  auto orbits = orbits_of(A, generating_set(G, M0));
  std::vector<std::uint32_t> orbit_of(A.size());
  std::vector<std::size_t> regular;
  for (std::size_t o = 0; o < orbits.size(); ++o) {
    for (auto x : orbits[o]) orbit_of[x] = static_cast<std::uint32_t>(o);
    if (orbits[o].size() == M0.size()) regular.push_back(o);
  }
  std::vector<ElementSet> subs;
  std::set<std::vector<std::uint64_t>> seen;
  for (const auto& k : M.elements()) {
    if (M0.contains(G, k) || G.order_upto(k, r_prime) != r_prime) continue;
    ElementSet K = closure(G, {k});
    if (seen.insert(K.keys()).second) subs.push_back(std::move(K));
  }
  std::vector<std::size_t> chosen;
  NPrimeObservation obs;
  if (slow) {
    for (std::size_t i = 0; i < subs.size(); ++i) chosen.push_back(i);
    obs.classes = partition_by_conjugacy(G, M, subs).size();
  } else {
    for (const auto& cls : partition_by_conjugacy(G, M, subs)) chosen.push_back(cls.front());
    obs.classes = chosen.size();
  }
  for (auto i : chosen) {
    const Elem& k = subs[i].elements().back();
    std::uint64_t fixed = 0;
    for (auto o : regular) {
      std::uint32_t x = orbits[o].front();
      fixed += orbit_of[A.image(x, k)] == o;
    }
    obs.max_fixed = std::max(obs.max_fixed, fixed);
    ++obs.subgroups_checked;
  }
  return obs;
}

namespace {

ElementSet with_e_zero(const PGammaL& G, const ElementSet& M) {
  std::vector<Elem> out;
  for (const auto& g : M.elements())
    if (g.e == 0) out.push_back(g);
  return ElementSet(G, std::move(out));
}

BoundReport subfield_n_prime(std::uint32_t p, unsigned m, unsigned r, unsigned r_prime, bool slow,
                             std::string name, Rational bound,
                             std::vector<std::pair<std::string, std::int64_t>> params) {
  PGammaL G(make_field(p, m * r));
  Level L(G, GroupLevel::parse("PGammaL"));
  SubgroupSpec S = subfield(L, m);
  CosetAction A = coset_action(L, S.elements);
  ElementSet M1 = with_e_zero(G, S.elements);
  auto obs = observe_n_prime(A, M1, r_prime, slow);
  auto b = make_bound(std::move(name), std::move(params), std::move(bound), Rational(obs.max_fixed), BoundKind::Upper);
  b.note = std::to_string(obs.subgroups_checked) + " subgroups in " + std::to_string(obs.classes) + " M-classes";
  return b;
}

}  // namespace

BoundReport n_prime_conjugacy(std::uint32_t p, unsigned n, unsigned r_prime, bool slow, BracketReading reading) {
  if (!is_prime(p) || p == 2 || !is_prime(r_prime) || r_prime == 2 || n % r_prime)
    throw Error(ErrorCode::BadParameters, "need odd p and an odd prime r' dividing n");
  BigInt P = pow(BigInt(p), n / r_prime);
  Rational x(P * (P - 1), 2 * (P + 1));
  BigInt fl = numerator(x) / denominator(x);
  BigInt bound = reading == BracketReading::Floor || denominator(x) == 1 ? fl : fl + 1;

  PGammaL G(make_field(p, n));
  Level L(G, GroupLevel::parse("PSigmaL"));
  SubgroupSpec S = dihedral_plus(L);
  CosetAction A = coset_action(L, S.elements);
  auto obs = observe_n_prime(A, S.socle_part, r_prime, slow);
  auto b = make_bound(reading == BracketReading::Floor ? "n'(r') dihedral-plus, floor" : "n'(r') dihedral-plus, ceiling",
                      {{"p", p}, {"n", n}, {"r'", r_prime}}, Rational(bound), Rational(obs.max_fixed),
                      BoundKind::Upper);
  b.note = std::to_string(obs.subgroups_checked) + " subgroups in " + std::to_string(obs.classes) + " M-classes";
  return b;
}

BoundReport n_prime_same_prime(std::uint32_t p, unsigned m, unsigned r, bool slow) {
  if (!is_prime(p) || !is_prime(r) || r == 2 || ipow(p, m) <= 2)
    throw Error(ErrorCode::BadParameters, "need r an odd prime and p^m > 2");
  BigInt pm = pow(BigInt(p), m);
  Rational bound = Rational((r - 1) * (r - 1), 4) * Rational(pm * (pm + 1), pm - 1);
  return subfield_n_prime(p, m, r, r, slow, "n'(r') subfield, r' = r", bound,
                          {{"p", p}, {"m", m}, {"r", r}, {"r'", r}});
}

BoundReport n_prime_cross_prime(std::uint32_t p, unsigned m1, unsigned r, unsigned r_prime, bool slow) {
  if (!is_prime(p) || !is_prime(r) || r == 2 || !is_prime(r_prime) || r == r_prime || ipow(p, m1 * r_prime) <= 2)
    throw Error(ErrorCode::BadParameters, "need primes r != r', r odd, p^m > 2");
  BigInt P = p;
  BigInt num = pow(P, m1 * r) * (pow(P, 2 * m1 * r) - 1);
  BigInt den = pow(P, m1) * (pow(P, 2 * m1) - 1);
  return subfield_n_prime(p, m1 * r_prime, r, r_prime, slow, "n'(r') subfield, r' != r", Rational(num, den * den),
                          {{"p", p}, {"m1", m1}, {"r", r}, {"r'", r_prime}});
}

// ---------------------------------------------------------------- predicates

namespace {

unsigned field_degree(std::uint32_t q) {
  std::uint64_t p;
  unsigned n;
  if (!prime_power(q, p, n)) throw Error(ErrorCode::BadParameters, "q is not a prime power");
  return n;
}

}  // namespace

bool classification_predicate(std::uint32_t q, const GroupLevel& level, ExponentReading reading) {
  const unsigned n = field_degree(q);
  if (q == 9) {
    if (level.tag == LevelTag::PSigmaL) return true;
    if (level.tag == LevelTag::Tf) return level.i % n != 0;
    return false;
  }
  if (q % 2 == 0 || q < 5 || q == 7) return false;
  switch (level.tag) {
    case LevelTag::T:
    case LevelTag::Tf:
    case LevelTag::PSigmaL: return true;
    case LevelTag::PGL:
    case LevelTag::PGammaL: return false;
    case LevelTag::Tdf: {
      const unsigned i = level.i;
      if (i < 1 || i > n - 1) return false;
      if (reading == ExponentReading::Quotient) return n % i == 0 && (n / i) % 2 == 0;
      return (n / gcd_u64(n, i)) % 2 == 0;
    }
    case LevelTag::Custom: break;
  }
  throw Error(ErrorCode::BadParameters, "custom levels need the realized-level predicate");
}

bool classification_predicate(const Level& L) {
  const PGammaL& G = L.group();
  const std::uint32_t q = G.q();
  const auto& mask = L.quotient_mask();
  if (q == 9) return L.same_group(Level(G, GroupLevel::parse("PSigmaL")));
  if (q % 2 == 0 || q < 5 || q == 7) return false;
  // T.<delta f^i> with n/(n,i) even never contains delta; every other admissible group avoids delta too
  return !mask[1 * G.n() + 0];
}

bool d_minus_predicate(std::uint32_t q, const GroupLevel& level) {
  const unsigned n = field_degree(q);
  if (q == 7 || q == 9) return false;
  switch (level.tag) {
    case LevelTag::T:
    case LevelTag::Tf:
    case LevelTag::PSigmaL:
    case LevelTag::PGL: return true;
    case LevelTag::PGammaL: return q % 2 == 0;
    case LevelTag::Tdf:
      if (q % 2 == 0) return true;
      if (level.i % n == 0) return true;
      return (n / gcd_u64(n, level.i % n)) % 2 == 0;
    case LevelTag::Custom: break;
  }
  throw Error(ErrorCode::BadParameters, "custom levels need the realized-level predicate");
}

bool d_minus_predicate(const Level& L) {
  const PGammaL& G = L.group();
  const std::uint32_t q = G.q();
  if (q == 7 || q == 9) return false;
  if (G.d() == 1) return true;
  const auto& mask = L.quotient_mask();
  if (!mask[1 * G.n() + 0]) return true;
  // PGL itself: delta present and no field automorphism part
  for (unsigned e = 1; e < G.n(); ++e)
    if (mask[e] || mask[G.n() + e]) return false;
  return true;
}

}  // namespace saxl
