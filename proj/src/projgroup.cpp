#include "saxl/projgroup.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <unordered_map>

#include "saxl/numtheory.hpp"

namespace saxl {

PGammaL::PGammaL(FieldPtr F) : F_(std::move(F)) {
  const std::uint64_t q = F_->q();
  if (q > kMaxQ) throw Error(ErrorCode::TooLarge, "group enumeration needs q <= " + std::to_string(kMaxQ));
  mat_space_ = q * q * q + q * q;
  frob_.resize(F_->n());
  for (unsigned k = 0; k < F_->n(); ++k) {
    frob_[k].resize(q);
    for (std::uint32_t c = 0; c < q; ++c) frob_[k][c] = F_->frobenius({c}, k).code;
  }
}

std::uint64_t PGammaL::order_T() const {
  std::uint64_t q = F_->q();
  return q * (q * q - 1) / d();
}

Elem PGammaL::make(FieldElement a, FieldElement b, FieldElement c, FieldElement dd, unsigned e) const {
  ProjMatrix m{a, b, c, dd};
  if (det(m) == F_->zero()) throw Error(ErrorCode::NotSubgroup, "singular matrix");
  return {normalize(m), e % n()};
}

Elem PGammaL::delta() const { return make(F_->one(), F_->zero(), F_->zero(), F_->theta()); }

Elem PGammaL::inverse(const Elem& g) const {
  const FieldCtx& F = *F_;
  ProjMatrix adj{g.mat.d, F.neg(g.mat.b), F.neg(g.mat.c), g.mat.a};
  if (g.e) adj = twist(adj, g.e);
  return {normalize(adj), g.e ? n() - g.e : 0};
}

Elem PGammaL::power(const Elem& g, std::int64_t k) const {
  Elem base = k < 0 ? inverse(g) : g;
  std::uint64_t e = static_cast<std::uint64_t>(k < 0 ? -k : k);
  Elem r = identity();
  while (e) {
    if (e & 1) r = compose(r, base);
    base = compose(base, base);
    e >>= 1;
  }
  return r;
}

std::uint64_t PGammaL::order(const Elem& g) const {
  std::uint64_t r = order_upto(g, key_space());
  if (!r) throw Error(ErrorCode::Internal, "element order exceeds group size");
  return r;
}

std::uint64_t PGammaL::order_upto(const Elem& g, std::uint64_t cap) const {
  const Elem id = identity();
  Elem x = g;
  for (std::uint64_t k = 1; k <= cap; ++k) {
    if (x == id) return k;
    x = compose(x, g);
  }
  return 0;
}

Elem PGammaL::from_key(std::uint64_t k) const {
  const std::uint64_t q = F_->q();
  Elem g;
  g.e = static_cast<std::uint32_t>(k / mat_space_);
  std::uint64_t mk = k % mat_space_;
  auto el = [](std::uint64_t v) { return FieldElement{static_cast<std::uint32_t>(v)}; };
  if (mk < q * q * q) {
    g.mat = {F_->one(), el(mk / (q * q)), el((mk / q) % q), el(mk % q)};
  } else {
    mk -= q * q * q;
    g.mat = {F_->zero(), F_->one(), el(mk / q), el(mk % q)};
  }
  return g;
}

FieldElement PGammaL::det(const ProjMatrix& m) const {
  return F_->sub(F_->mul(m.a, m.d), F_->mul(m.b, m.c));
}

Signature PGammaL::signature(const Elem& g) const {
  Signature s;
  s.e = g.e;
  if (F_->p() != 2) s.det_class = F_->is_square(det(g.mat)) ? 0 : 1;
  return s;
}

TraceClass PGammaL::trace_class(const ProjMatrix& m) const {
  const FieldCtx& F = *F_;
  FieldElement D = det(m);
  FieldElement lambda;
  if (F.p() == 2) {
    lambda = F.pow(F.inv(D), F.q() / 2);
  } else {
    if (!F.is_square(D)) throw Error(ErrorCode::NoUnitDetLift, "determinant is not a square");
    lambda = F.exp(-static_cast<std::int64_t>(F.log(D)) / 2);
  }
  FieldElement tr = F.mul(lambda, F.add(m.a, m.d));
  if (tr == F.zero()) return TraceClass::InvolutionInPSL;
  if (tr == F.one() || tr == F.neg(F.one())) return TraceClass::Order3Class;
  return TraceClass::Generic;
}

Point PGammaL::apply(Point x, const Elem& g) const {
  const FieldCtx& F = *F_;
  const std::uint32_t q = F.q();
  FieldElement num, den;
  if (x == q) {
    num = g.mat.d;
    den = g.mat.c;
  } else {
    FieldElement z{x};
    num = F.add(g.mat.b, F.mul(g.mat.d, z));
    den = F.add(g.mat.a, F.mul(g.mat.c, z));
  }
  if (den == F.zero()) return q;
  FieldElement r = F.div(num, den);
  if (g.e) r = {frob_[g.e][r.code]};
  return r.code;
}

void PGammaL::for_each_matrix(const std::function<void(const ProjMatrix&)>& fn) const {
  const FieldCtx& F = *F_;
  const std::uint32_t q = F.q();
  for (std::uint32_t b = 0; b < q; ++b)
    for (std::uint32_t c = 0; c < q; ++c) {
      FieldElement bc = F.mul({b}, {c});
      for (std::uint32_t d = 0; d < q; ++d) {
        if (FieldElement{d} == bc) continue;
        fn({F.one(), {b}, {c}, {d}});
      }
    }
  for (std::uint32_t c = 1; c < q; ++c)
    for (std::uint32_t d = 0; d < q; ++d) fn({F.zero(), F.one(), {c}, {d}});
}

std::string to_string(const PGammaL& G, const Elem& g) {
  std::ostringstream os;
  os << "[[" << g.mat.a.code << "," << g.mat.b.code << "],[" << g.mat.c.code << "," << g.mat.d.code << "]]";
  if (G.n() > 1) os << "f^" << g.e;
  return os.str();
}

// ---------------------------------------------------------------- levels

GroupLevel GroupLevel::parse(const std::string& s) {
  GroupLevel L;
  if (s == "T" || s == "PSL") {
    L.tag = LevelTag::T;
  } else if (s == "PGL") {
    L.tag = LevelTag::PGL;
  } else if (s == "PSigmaL" || s == "PSL:f") {
    L.tag = LevelTag::PSigmaL;
  } else if (s == "PGammaL") {
    L.tag = LevelTag::PGammaL;
  } else if (s.rfind("T:f^", 0) == 0) {
    L.tag = LevelTag::Tf;
    L.i = static_cast<unsigned>(std::stoul(s.substr(4)));
  } else if (s.rfind("T:df^", 0) == 0) {
    L.tag = LevelTag::Tdf;
    L.i = static_cast<unsigned>(std::stoul(s.substr(5)));
  } else {
    throw Error(ErrorCode::BadParameters, "unknown level '" + s + "'");
  }
  return L;
}

std::string GroupLevel::name() const {
  switch (tag) {
    case LevelTag::T: return "T";
    case LevelTag::Tf: return "T:f^" + std::to_string(i);
    case LevelTag::Tdf: return "T:df^" + std::to_string(i);
    case LevelTag::PGL: return "PGL";
    case LevelTag::PSigmaL: return "PSigmaL";
    case LevelTag::PGammaL: return "PGammaL";
    case LevelTag::Custom: {
      std::string s = "custom";
      for (auto g : custom) s += "(" + std::to_string(g.det_class) + "," + std::to_string(g.e) + ")";
      return s;
    }
  }
  return "?";
}

std::vector<Elem> psl_generators(const PGammaL& G) {
  const FieldCtx& F = G.field();
  FieldElement one = F.one(), zero = F.zero();
  return {G.make(one, one, zero, one), G.make(one, zero, zero, F.exp(-2)), G.make(zero, one, F.neg(one), zero)};
}

Level::Level(const PGammaL& G, GroupLevel tag) : G_(&G), tag_(std::move(tag)) {
  const unsigned d = G.d(), n = G.n();
  std::vector<Signature> qgens;
  switch (tag_.tag) {
    case LevelTag::T: break;
    case LevelTag::Tf: qgens.push_back({0, tag_.i % n}); break;
    case LevelTag::Tdf: qgens.push_back({1 % d, tag_.i % n}); break;
    case LevelTag::PGL: qgens.push_back({1 % d, 0}); break;
    case LevelTag::PSigmaL: qgens.push_back({0, 1 % n}); break;
    case LevelTag::PGammaL:
      qgens.push_back({1 % d, 0});
      qgens.push_back({0, 1 % n});
      break;
    case LevelTag::Custom:
      for (auto s : tag_.custom) qgens.push_back({s.det_class % d, s.e % n});
      break;
  }
  mask_.assign(d * n, false);
  mask_[0] = true;
  std::deque<Signature> todo{{0, 0}};
  while (!todo.empty()) {
    Signature s = todo.front();
    todo.pop_front();
    for (auto g : qgens) {
      Signature t{(s.det_class + g.det_class) % d, (s.e + g.e) % n};
      if (!mask_[t.det_class * n + t.e]) {
        mask_[t.det_class * n + t.e] = true;
        todo.push_back(t);
      }
    }
  }
  quotient_size_ = static_cast<std::uint64_t>(std::count(mask_.begin(), mask_.end(), true));
  gens_ = psl_generators(G);
  Elem delta = G.delta();
  for (auto g : qgens) {
    Elem x = g.det_class ? delta : G.identity();
    x = G.compose(x, Elem{G.identity().mat, g.e});
    gens_.push_back(x);
  }
}

bool Level::contains_level(const Level& o) const {
  for (std::size_t i = 0; i < mask_.size(); ++i)
    if (o.mask_[i] && !mask_[i]) return false;
  return true;
}

void Level::for_each(const std::function<void(const Elem&)>& fn) const {
  const PGammaL& G = *G_;
  const unsigned n = G.n();
  const bool even = G.field().p() == 2;
  for (unsigned e = 0; e < n; ++e) {
    bool want0 = mask_[e], want1 = !even && mask_[n + e];
    if (!want0 && !want1) continue;
    G.for_each_matrix([&](const ProjMatrix& m) {
      unsigned cls = even ? 0 : (G.field().is_square(G.det(m)) ? 0 : 1);
      if (cls ? want1 : want0) fn(Elem{m, e});
    });
  }
}

std::vector<Elem> Level::elements() const {
  std::vector<Elem> out;
  out.reserve(order());
  for_each([&](const Elem& g) { out.push_back(g); });
  return out;
}

// ---------------------------------------------------------------- element sets

ElementSet::ElementSet(const PGammaL& G, std::vector<Elem> elems) {
  std::vector<std::pair<std::uint64_t, Elem>> tagged;
  tagged.reserve(elems.size());
  for (auto& g : elems) tagged.emplace_back(G.key(g), g);
  std::sort(tagged.begin(), tagged.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  tagged.erase(std::unique(tagged.begin(), tagged.end(),
                           [](const auto& x, const auto& y) { return x.first == y.first; }),
               tagged.end());
  elems_.reserve(tagged.size());
  keys_.reserve(tagged.size());
  lookup_.reserve(tagged.size() * 2);
  for (auto& [k, g] : tagged) {
    keys_.push_back(k);
    elems_.push_back(g);
    lookup_.insert(k);
  }
}

ElementSet closure(const PGammaL& G, const std::vector<Elem>& gens, std::uint64_t cap) {
  std::vector<Elem> out{G.identity()};
  std::unordered_set<std::uint64_t> seen{G.key(G.identity())};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& g : gens) {
      Elem y = G.compose(out[i], g);
      if (seen.insert(G.key(y)).second) {
        out.push_back(y);
        if (out.size() > cap) throw Error(ErrorCode::TooLarge, "closure exceeds cap");
      }
    }
  }
  return ElementSet(G, std::move(out));
}

std::vector<Elem> generating_set(const PGammaL& G, const ElementSet& H) {
  std::vector<Elem> gens;
  ElementSet cur = closure(G, {});
  for (const auto& h : H.elements()) {
    if (cur.size() == H.size()) break;
    if (cur.contains(G, h)) continue;
    gens.push_back(h);
    cur = closure(G, gens);
  }
  return gens;
}

ElementSet conjugate_set(const PGammaL& G, const ElementSet& K, const Elem& g) {
  Elem gi = G.inverse(g);
  std::vector<Elem> out;
  out.reserve(K.size());
  for (const auto& k : K.elements()) out.push_back(G.compose(G.compose(gi, k), g));
  return ElementSet(G, std::move(out));
}

bool is_subset(const ElementSet& A, const ElementSet& B) {
  for (auto k : A.keys())
    if (!B.contains(k)) return false;
  return true;
}

std::string family_name(Family f, unsigned m) {
  switch (f) {
    case Family::DihedralPlus: return "d-plus";
    case Family::DihedralMinus: return "d-minus";
    case Family::Borel: return "borel";
    case Family::Subfield: return "subfield:" + std::to_string(m);
    case Family::PGLSubfield: return "pgl-subfield:" + std::to_string(m);
    case Family::A4: return "a4";
    case Family::S4: return "s4";
    case Family::A5: return "a5";
  }
  return "?";
}

// ---------------------------------------------------------------- normalizers

namespace {

std::uint64_t fnv(std::uint64_t h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t fingerprint(const Level& L, const ElementSet& K, std::uint64_t salt) {
  std::uint64_t h = 1469598103934665603ull;
  const FieldCtx& F = L.group().field();
  h = fnv(h, salt);
  h = fnv(h, F.p());
  h = fnv(h, F.n());
  for (auto c : F.modulus()) h = fnv(h, c);
  for (bool b : L.quotient_mask()) h = fnv(h, b);
  h = fnv(h, K.size());
  for (auto k : K.keys()) h = fnv(h, k);
  return h;
}

std::mutex g_cache_mutex;
std::unordered_map<std::uint64_t, ElementSet> g_cache;

template <class Pred>
ElementSet scan_cached(const Level& L, const ElementSet& K, std::uint64_t salt, Pred pred) {
  std::uint64_t fp = fingerprint(L, K, salt);
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = g_cache.find(fp);
    if (it != g_cache.end()) return it->second;
  }
  const PGammaL& G = L.group();
  for (const auto& k : K.elements())
    if (!L.contains(k)) throw Error(ErrorCode::NotSubset, "K is not contained in the level");
  std::vector<Elem> kgens = generating_set(G, K);
  std::vector<Elem> out;
  L.for_each([&](const Elem& g) {
    if (pred(G, kgens, g)) out.push_back(g);
  });
  ElementSet result(G, std::move(out));
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  g_cache[fp] = result;
  return result;
}

}  // namespace

void clear_normalizer_cache() {
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  g_cache.clear();
}

ElementSet normalizer(const Level& L, const ElementSet& K) {
  return scan_cached(L, K, 1, [&K](const PGammaL& G, const std::vector<Elem>& kgens, const Elem& g) {
    Elem gi = G.inverse(g);
    for (const auto& k : kgens)
      if (!K.contains(G.key(G.compose(G.compose(gi, k), g)))) return false;
    return true;
  });
}

ElementSet centralizer(const Level& L, const ElementSet& K) {
  return scan_cached(L, K, 2, [](const PGammaL& G, const std::vector<Elem>& kgens, const Elem& g) {
    for (const auto& k : kgens)
      if (!(G.compose(k, g) == G.compose(g, k))) return false;
    return true;
  });
}

std::vector<std::vector<std::size_t>> partition_by_conjugacy(const PGammaL& G, const ElementSet& H,
                                                             const std::vector<ElementSet>& subs) {
  std::map<std::vector<std::uint64_t>, std::size_t> index;
  for (std::size_t i = 0; i < subs.size(); ++i) index.emplace(subs[i].keys(), i);
  std::vector<int> cls(subs.size(), -1);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (cls[i] >= 0) continue;
    int c = static_cast<int>(out.size());
    out.emplace_back();
    for (const auto& h : H.elements()) {
      auto it = index.find(conjugate_set(G, subs[i], h).keys());
      if (it != index.end() && cls[it->second] < 0) {
        cls[it->second] = c;
        out.back().push_back(it->second);
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

std::vector<ElementSet> subgroup_conjugacy_classes(const Level& L, const ElementSet& K, const ElementSet& H) {
  const PGammaL& G = L.group();
  std::set<std::vector<std::uint64_t>> seen;
  std::vector<ElementSet> inside;
  L.for_each([&](const Elem& g) {
    ElementSet c = conjugate_set(G, K, g);
    if (!seen.insert(c.keys()).second) return;
    if (is_subset(c, H)) inside.push_back(std::move(c));
  });
  std::sort(inside.begin(), inside.end(), [](const ElementSet& a, const ElementSet& b) { return a.keys() < b.keys(); });
  std::vector<ElementSet> reps;
  for (const auto& cls : partition_by_conjugacy(G, H, inside)) reps.push_back(inside[cls.front()]);
  return reps;
}

// ---------------------------------------------------------------- families

namespace {

// x + y*alpha in GF(q^2) with alpha^2 = c1*alpha + c0
struct Quad {
  FieldElement x, y;
};

Quad quad_mul(const FieldCtx& F, Quad u, Quad v, FieldElement c0, FieldElement c1) {
  FieldElement yy = F.mul(u.y, v.y);
  return {F.add(F.mul(u.x, v.x), F.mul(yy, c0)),
          F.add(F.add(F.mul(u.x, v.y), F.mul(u.y, v.x)), F.mul(yy, c1))};
}

Quad quad_pow(const FieldCtx& F, Quad u, std::uint64_t e, FieldElement c0, FieldElement c1) {
  Quad r{F.one(), F.zero()};
  while (e) {
    if (e & 1) r = quad_mul(F, r, u, c0, c1);
    u = quad_mul(F, u, u, c0, c1);
    e >>= 1;
  }
  return r;
}

// smallest x + y*alpha (x outer, y != 0) generating GF(q^2)^*
Quad quad_generator(const FieldCtx& F, FieldElement c0, FieldElement c1) {
  const std::uint64_t q = F.q();
  const std::uint64_t N = q * q - 1;
  auto factors = prime_factors(N);
  for (std::uint32_t x = 0; x < q; ++x)
    for (std::uint32_t y = 1; y < q; ++y) {
      Quad z{{x}, {y}};
      bool ok = true;
      for (auto r : factors) {
        Quad w = quad_pow(F, z, N / r, c0, c1);
        if (w.x == F.one() && w.y == F.zero()) {
          ok = false;
          break;
        }
      }
      if (ok) return z;
    }
  throw Error(ErrorCode::SearchExhausted, "no generator of GF(q^2)");
}

ElementSet intersect_T(const PGammaL& G, const ElementSet& M) {
  std::vector<Elem> out;
  for (const auto& g : M.elements())
    if (G.is_psl(g)) out.push_back(g);
  return ElementSet(G, std::move(out));
}

void finish(const Level& L, SubgroupSpec& S, const ElementSet& M) {
  const PGammaL& G = L.group();
  S.level = L.tag();
  S.elements = M;
  S.socle_part = intersect_T(G, M);
  S.generators = generating_set(G, M);
  // |G:M| = |T:M0| exactly when M T = G
  if (L.order() * S.socle_part.size() != G.order_T() * M.size()) {
    std::string w = "M is not a supplement of T in G (|G:M| != |T:M cap T|); action is not primitive";
    S.maximality_warning = S.maximality_warning ? *S.maximality_warning + "; " + w : w;
  }
}

}  // namespace

DihedralPlusData dihedral_plus_data(const PGammaL& G) {
  const FieldCtx& F = G.field();
  const std::uint32_t p = F.p(), q = F.q();
  const unsigned n = F.n();
  if (p == 2) throw Error(ErrorCode::UnsupportedCase, "explicit dihedral-plus data needs odd q");
  std::uint64_t k = q - 1;
  while (k % 2 == 0) k /= 2;
  DihedralPlusData D;
  D.theta2 = F.exp(static_cast<std::int64_t>(k));
  Quad z = quad_generator(F, D.theta2, F.zero());
  FieldElement one = F.one(), zero = F.zero();
  D.s = G.make(z.x, F.mul(z.y, D.theta2), z.y, z.x);
  D.a = G.compose(D.s, D.s);
  D.t = G.make(one, zero, zero, F.neg(one));
  // theta2^((1-p)/2)
  D.w = G.make(one, zero, zero, F.pow(D.theta2, -static_cast<std::int64_t>((p - 1) / 2)));
  Elem fw = G.compose(G.frob(), D.w);
  if (p % 4 == 3 && n % 2 == 1) {
    D.case_id = 1;
    D.b = G.compose(D.s, D.t);
    D.c = fw;
  } else if (p % 4 == 1) {
    D.case_id = 2;
    D.b = D.t;
    D.c = fw;
  } else {
    D.case_id = 3;
    D.b = D.t;
    D.c = G.compose(fw, G.power(D.s, (q + 1) / 2));
  }
  return D;
}

SubgroupSpec dihedral_plus(const Level& L) {
  const PGammaL& G = L.group();
  const FieldCtx& F = G.field();
  const std::uint32_t q = F.q();
  SubgroupSpec S;
  S.family = Family::DihedralPlus;
  ElementSet M0;
  if (F.p() != 2) {
    auto D = dihedral_plus_data(G);
    M0 = closure(G, {D.a, D.b});
    if (M0.size() != q + 1) throw Error(ErrorCode::Internal, "dihedral-plus order mismatch");
  } else {
    // alpha^2 = alpha + c with x^2 + x + c irreducible: c of absolute trace 1
    FieldElement c0 = F.zero();
    for (std::uint32_t c = 1; c < q; ++c) {
      FieldElement tr = trace_norm_rel(F, {c}, 1).first;
      if (tr == F.one()) {
        c0 = {c};
        break;
      }
    }
    Quad z = quad_generator(F, c0, F.one());
    Elem s = G.make(z.x, F.mul(z.y, c0), z.y, F.add(z.x, z.y));
    Level T(G, GroupLevel{});
    M0 = normalizer(T, closure(G, {s}));
    if (M0.size() != 2 * (q + 1)) throw Error(ErrorCode::Internal, "dihedral-plus order mismatch");
  }
  for (const auto& g : M0.elements())
    if (!G.is_psl(g)) throw Error(ErrorCode::Internal, "dihedral-plus not inside T");
  if (q == 7 || (q == 9 && L.quotient_size() == 1))
    S.maximality_warning = "D_{2(q+1)/d} is not maximal in T for q = 7, 9";
  finish(L, S, normalizer(L, M0));
  return S;
}

ElementSet pair_stabilizer(const Level& L, Point u, Point w) {
  const PGammaL& G = L.group();
  std::vector<Elem> out;
  L.for_each([&](const Elem& g) {
    Point a = G.apply(u, g), b = G.apply(w, g);
    if ((a == u && b == w) || (a == w && b == u)) out.push_back(g);
  });
  return ElementSet(G, std::move(out));
}

SubgroupSpec dihedral_minus(const Level& L) {
  const PGammaL& G = L.group();
  const FieldCtx& F = G.field();
  if (F.p() == 2) throw Error(ErrorCode::UnsupportedCase, "dihedral-minus is built for odd q");
  const std::uint32_t q = F.q();
  SubgroupSpec S;
  S.family = Family::DihedralMinus;
  Elem s = G.make(F.one(), F.zero(), F.zero(), F.exp(2));
  Elem v = G.make(F.zero(), F.neg(F.one()), F.one(), F.zero());
  ElementSet M0 = closure(G, {s, v});
  if (M0.size() != q - 1) throw Error(ErrorCode::Internal, "dihedral-minus order mismatch");
  if (q == 5 || q == 7 || q == 9 || q == 11)
    S.maximality_warning = "D_{2(q-1)/d} is not maximal in T for q = 5, 7, 9, 11";
  ElementSet M = pair_stabilizer(L, 0, G.infinity());
  if (!is_subset(M0, M)) throw Error(ErrorCode::Internal, "<s,v> does not fix {0,inf}");
  finish(L, S, M);
  return S;
}

SubgroupSpec borel(const Level& L) {
  const PGammaL& G = L.group();
  SubgroupSpec S;
  S.family = Family::Borel;
  std::vector<Elem> out;
  L.for_each([&](const Elem& g) {
    if (g.mat.c == G.field().zero()) out.push_back(g);
  });
  finish(L, S, ElementSet(G, std::move(out)));
  std::uint64_t q = G.q();
  if (S.socle_part.size() != q * (q - 1) / G.d()) throw Error(ErrorCode::Internal, "Borel order mismatch");
  return S;
}

namespace {

ElementSet subfield_matrices(const PGammaL& G, unsigned m, bool square_det_only) {
  const FieldCtx& F = G.field();
  auto sub = F.subfield_elements(m);
  const std::uint64_t qm = sub.size();
  std::vector<Elem> out;
  auto ok_det = [&](FieldElement D) {
    if (D == F.zero()) return false;
    if (!square_det_only || F.p() == 2) return true;
    return F.pow(D, static_cast<std::int64_t>((qm - 1) / 2)) == F.one();
  };
  for (auto b : sub)
    for (auto c : sub)
      for (auto d : sub) {
        ProjMatrix M{F.one(), b, c, d};
        if (ok_det(G.det(M))) out.push_back({M, 0});
      }
  for (auto c : sub)
    for (auto d : sub) {
      ProjMatrix M{F.zero(), F.one(), c, d};
      if (ok_det(G.det(M))) out.push_back({M, 0});
    }
  return ElementSet(G, std::move(out));
}

}  // namespace

SubgroupSpec subfield(const Level& L, unsigned m) {
  const PGammaL& G = L.group();
  const FieldCtx& F = G.field();
  const unsigned n = F.n();
  if (m == 0 || n % m || !((is_prime(n / m) && (n / m) % 2 == 1) || (F.p() == 2 && n == 2 * m)))
    throw Error(ErrorCode::BadSubfieldDegree, "need n/m an odd prime, or p = 2 and n = 2m");
  SubgroupSpec S;
  S.family = Family::Subfield;
  S.m = m;
  ElementSet M0 = subfield_matrices(G, m, true);
  std::uint64_t pm = ipow(F.p(), m);
  if (M0.size() != pm * (pm * pm - 1) / (F.p() == 2 ? 1 : 2))
    throw Error(ErrorCode::Internal, "subfield order mismatch");
  if (pm == 2) S.maximality_warning = "PSL(2,2) lies in a Borel or dihedral subgroup";
  finish(L, S, normalizer(L, M0));
  return S;
}

SubgroupSpec pgl_subfield(const Level& L, unsigned m) {
  const PGammaL& G = L.group();
  const FieldCtx& F = G.field();
  if (F.p() == 2 || F.n() != 2 * m) throw Error(ErrorCode::BadSubfieldDegree, "need n = 2m and p odd");
  SubgroupSpec S;
  S.family = Family::PGLSubfield;
  S.m = m;
  ElementSet M0 = subfield_matrices(G, m, false);
  std::uint64_t pm = ipow(F.p(), m);
  if (M0.size() != pm * (pm * pm - 1)) throw Error(ErrorCode::Internal, "PGL subfield order mismatch");
  finish(L, S, normalizer(L, M0));
  return S;
}

std::vector<SubgroupSpec> exceptional(const Level& L, Family type) {
  const PGammaL& G = L.group();
  const FieldCtx& F = G.field();
  const std::uint32_t p = F.p(), q = F.q();
  std::uint64_t target_order = 0, xy_order = 0;
  bool ok = false;
  switch (type) {
    case Family::A4:
      target_order = 12, xy_order = 3;
      ok = F.n() == 1 && p >= 5;
      break;
    case Family::S4:
      target_order = 24, xy_order = 4;
      ok = F.n() == 1 && p >= 5;
      break;
    case Family::A5:
      target_order = 60, xy_order = 5;
      ok = p != 2 && p != 5 &&
           ((F.n() == 1 && (q % 5 == 1 || q % 5 == 4)) || (F.n() == 2 && q % 5 == 4));
      break;
    default:
      throw Error(ErrorCode::BadParameters, "not an exceptional family");
  }
  if (!ok) throw Error(ErrorCode::ConditionsNotMet, family_name(type) + " not available for q = " + std::to_string(q));

  std::vector<Elem> all = L.elements();
  ElementSet ambient(G, all);
  const Elem id = G.identity();
  std::vector<Elem> inv2, ord3;
  for (const auto& g : all) {
    if (g == id) continue;
    Elem g2 = G.compose(g, g);
    if (g2 == id) inv2.push_back(g);
    else if (G.compose(g2, g) == id) ord3.push_back(g);
  }
  // representatives of the involution classes of L
  std::vector<Elem> inv_reps;
  {
    std::unordered_set<std::uint64_t> covered;
    for (const auto& x : inv2) {
      if (covered.count(G.key(x))) continue;
      inv_reps.push_back(x);
      for (const auto& g : all) covered.insert(G.key(G.conjugate(x, g)));
    }
  }
  std::vector<ElementSet> found;
  std::set<std::vector<std::uint64_t>> seen;
  for (const auto& x : inv_reps)
    for (const auto& y : ord3) {
      if (G.order_upto(G.compose(x, y), xy_order) != xy_order) continue;
      ElementSet K = closure(G, {x, y}, 1000);
      if (K.size() != target_order) continue;
      if (seen.insert(K.keys()).second) found.push_back(std::move(K));
    }
  if (found.empty())
    throw Error(ErrorCode::ConditionsNotMet, family_name(type) + " has no subgroup in level " + L.tag().name());
  std::vector<SubgroupSpec> out;
  for (const auto& cls : partition_by_conjugacy(G, ambient, found)) {
    SubgroupSpec S;
    S.family = type;
    const ElementSet& K = found[cls.front()];
    if (type == Family::A4 && !(q % 40 == 3 || q % 40 == 13 || q % 40 == 27 || q % 40 == 37) &&
        L.quotient_size() == 1)
      S.maximality_warning = "A4 is maximal in T only for q = 3, 13, 27, 37 mod 40";
    if (type == Family::S4 && !(q % 8 == 1 || q % 8 == 7) && L.quotient_size() == 1)
      S.maximality_warning = "S4 lies in T only for q = +-1 mod 8";
    finish(L, S, normalizer(L, K));
    out.push_back(std::move(S));
  }
  return out;
}

}  // namespace saxl
