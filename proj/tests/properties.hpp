#pragma once
// Property checks shared by the unit tests and the acceptance binary.
// Each returns an empty string on success, otherwise a short description.

#include <functional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "saxl/numtheory.hpp"
#include "support.hpp"

namespace saxl::properties {

inline std::string field_axioms() {
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, unsigned>>{{5, 1}, {2, 3}, {3, 2}, {2, 4}, {5, 2}, {3, 3}}) {
    FieldPtr F = make_field(p, n);
    const std::uint32_t q = F->q();
    const std::string tag = "GF(" + std::to_string(q) + ")";
    for (std::uint32_t a = 0; a < q; ++a) {
      FieldElement x = F->at(a);
      if (!(F->add(x, F->neg(x)) == F->zero())) return tag + " additive inverse";
      if (a && !(F->mul(x, F->inv(x)) == F->one())) return tag + " multiplicative inverse";
      if (!(F->frobenius(x, n) == x)) return tag + " frobenius order";
      for (std::uint32_t b = 0; b < q; ++b) {
        FieldElement y = F->at(b);
        if (!(F->add(x, y) == F->add(y, x)) || !(F->mul(x, y) == F->mul(y, x))) return tag + " commutativity";
        if (!(F->frobenius(F->add(x, y), 1) == F->add(F->frobenius(x, 1), F->frobenius(y, 1))))
          return tag + " frobenius additive";
        for (std::uint32_t c = 0; c < q; ++c) {
          FieldElement z = F->at(c);
          if (!(F->add(F->add(x, y), z) == F->add(x, F->add(y, z)))) return tag + " additive associativity";
          if (!(F->mul(F->mul(x, y), z) == F->mul(x, F->mul(y, z)))) return tag + " multiplicative associativity";
          if (!(F->mul(x, F->add(y, z)) == F->add(F->mul(x, y), F->mul(x, z)))) return tag + " distributivity";
        }
      }
    }
    std::uint64_t order = 1;
    for (FieldElement t = F->theta(); !(t == F->one()); t = F->mul(t, F->theta())) ++order;
    if (order != q - 1) return tag + " theta is not primitive";
  }
  return {};
}

inline std::string eta_identities() {
  for (std::uint32_t q : {13u, 17u, 25u, 27u, 49u}) {
    FieldPtr F = make_field_q(q);
    const std::string tag = "q=" + std::to_string(q);
    std::int64_t s = 0;
    for (std::uint32_t x = 0; x < q; ++x) s += F->eta(F->at(x));
    if (s != 0) return tag + " sum of eta";
    for (std::uint32_t A = 0; A < q; ++A)
      for (std::uint32_t B = 0; B < q; ++B) {
        FieldElement a = F->at(A), b = F->at(B);
        std::int64_t sum = 0;
        for (std::uint32_t x = 0; x < q; ++x) {
          FieldElement X = F->at(x);
          sum += F->eta(F->add(F->add(F->mul(X, X), F->mul(a, X)), b));
        }
        FieldElement disc = F->sub(F->mul(a, a), F->mul(F->from_int(4), b));
        std::int64_t want = disc == F->zero() ? std::int64_t(q) - 1 : -1;
        if (sum != want) return tag + " quadratic sum";
      }
  }
  return {};
}

inline std::string hilbert90_round_trips() {
  for (std::uint32_t q = 4; q <= 81; ++q) {
    std::uint64_t p;
    unsigned n;
    if (!prime_power(q, p, n) || n == 1) continue;
    FieldPtr F = make_field(static_cast<std::uint32_t>(p), n);
    for (unsigned m = 1; m < n; ++m) {
      if (n % m) continue;
      const std::string tag = "q=" + std::to_string(q) + " m=" + std::to_string(m);
      std::size_t trace_zero = 0;
      for (std::uint32_t a = 0; a < q; ++a) {
        FieldElement d = F->at(a);
        auto [tr, nm] = trace_norm_rel(*F, d, m);
        if (tr == F->zero()) {
          ++trace_zero;
          FieldElement c = hilbert90_additive(*F, d, m);
          if (!(F->sub(c, F->frobenius(c, m)) == d)) return tag + " additive";
        }
        if (a && nm == F->one()) {
          FieldElement c = hilbert90_multiplicative(*F, d, m);
          if (!(F->div(c, F->frobenius(c, m)) == d)) return tag + " multiplicative";
        }
      }
      if (trace_zero * ipow(static_cast<std::uint32_t>(p), m) != q) return tag + " trace-zero count";
    }
  }
  return {};
}

// A few actions of different shapes, small enough for exhaustive checks.
inline std::vector<testing::Case> sample_cases() {
  std::vector<testing::Case> out;
  out.push_back(testing::run_case(13, "T", "d-plus"));
  out.push_back(testing::run_case(11, "PGL", "d-minus"));
  out.push_back(testing::run_case(9, "PSigmaL", "d-plus"));
  out.push_back(testing::run_case(8, "PSigmaL", "subfield:1"));
  out.push_back(testing::run_case(25, "T:f^1", "d-plus"));
  return out;
}

inline std::string action_homomorphism() {
  std::mt19937 rng(7);
  for (const auto& c : sample_cases()) {
    const PGammaL& G = *c.G;
    auto elems = c.L->elements();
    for (int it = 0; it < 200; ++it) {
      const Elem& g = elems[rng() % elems.size()];
      const Elem& h = elems[rng() % elems.size()];
      Elem gh = G.compose(g, h);
      for (std::uint32_t x = 0; x < c.A->size(); ++x)
        if (c.A->image(c.A->image(x, g), h) != c.A->image(x, gh)) return "composition at q=" + std::to_string(G.q());
    }
    for (std::uint32_t x = 0; x < c.A->size(); ++x)
      if (c.A->image(x, G.identity()) != x) return "identity";
  }
  return {};
}

inline std::string orbit_stabilizer() {
  for (const auto& c : sample_cases()) {
    const std::uint64_t M = c.A->stab_order();
    if (c.A->size() * M != c.A->group_order()) return "|Omega||M| != |G|";
    for (std::uint32_t x = 0; x < c.A->size(); x += 7)
      if (point_stabilizer(*c.A, x).size() != M) return "point stabilizer order";
    for (const auto& so : c.D.suborbits)
      if (so.length * so.stab_order != M || so.regular != (so.length == M)) return "suborbit length";
  }
  return {};
}

// prime-order cyclic subgroups of H, one per H-class
inline std::vector<ElementSet> prime_order_classes(const PGammaL& G, const ElementSet& H) {
  std::vector<ElementSet> subs;
  std::set<std::vector<std::uint64_t>> seen;
  for (const auto& h : H.elements()) {
    std::uint64_t o = G.order(h);
    if (o < 2 || !is_prime(o)) continue;
    ElementSet K = closure(G, {h});
    if (seen.insert(K.keys()).second) subs.push_back(std::move(K));
  }
  std::vector<ElementSet> reps;
  for (const auto& cls : partition_by_conjugacy(G, H, subs)) reps.push_back(subs[cls.front()]);
  return reps;
}

inline std::string manning_matrix() {
  struct Row {
    std::uint32_t q;
    const char* level;
    const char* family;
  };
  for (const Row& r : {Row{11, "T", "d-plus"}, Row{11, "PGL", "d-plus"}, Row{11, "PGL", "s4"}, Row{13, "T", "d-minus"},
                       Row{13, "PGL", "borel"}, Row{9, "PGammaL", "d-plus"}, Row{8, "PGammaL", "subfield:1"},
                       Row{27, "PSigmaL", "subfield:1"}, Row{25, "PGL", "pgl-subfield:1"}}) {
    testing::Case c = testing::run_case(r.q, r.level, r.family, false);
    for (const auto& K : prime_order_classes(*c.G, c.A->stabilizer())) {
      std::uint64_t formula = manning_fixed_points(*c.L, c.A->stabilizer(), K);
      std::uint64_t direct = fixed_points(*c.A, K.elements()).size();
      if (formula != direct)
        return std::string(r.level) + "(2," + std::to_string(r.q) + ")/" + r.family + ": " + std::to_string(formula) +
               " vs " + std::to_string(direct);
    }
  }
  return {};
}

inline std::string saxl_adjacency() {
  for (const auto& c : sample_cases()) {
    if (c.b != 2) continue;
    SaxlGraph S = saxl_graph(*c.A, c.D);
    if (!S.symmetric() || !S.loop_free() || !S.regular()) return "graph shape at q=" + std::to_string(c.G->q());
    // x ~ y exactly when no nonidentity element of G_x fixes y
    for (std::uint32_t x = 0; x < c.A->size(); x += 5) {
      ElementSet Gx = point_stabilizer(*c.A, x);
      for (std::uint32_t y = 0; y < c.A->size(); ++y) {
        std::size_t fixing = 0;
        for (const auto& g : Gx.elements())
          if (c.A->fixes(y, g)) ++fixing;
        if ((fixing == 1) != S.adjacent(x, y)) return "adjacency at q=" + std::to_string(c.G->q());
      }
    }
  }
  return {};
}

// PGL(2,7) on the cosets of an A4: b = 2 with a disconnected Saxl graph
inline testing::Case disconnected_example() {
  testing::Case c;
  c.G = std::make_unique<PGammaL>(make_field_q(7));
  c.L = std::make_unique<Level>(*c.G, GroupLevel::parse("PGL"));
  Level T(*c.G, GroupLevel{});
  c.S = exceptional(T, Family::A4).front();  // N_T(A4) = S4 here
  std::vector<Elem> threes;
  for (const auto& g : c.S.socle_part.elements())
    if (c.G->order(g) == 3) threes.push_back(g);
  ElementSet A4 = closure(*c.G, threes);
  c.A = std::make_unique<CosetAction>(coset_action(*c.L, A4));
  c.D = suborbits(*c.A);
  c.b = base_size(*c.A, c.D);
  return c;
}

inline std::string diameter_double_implication() {
  auto cases = sample_cases();
  cases.push_back(disconnected_example());
  cases.push_back(testing::run_case(27, "T", "subfield:1", false));
  bool saw_false = false;
  for (const auto& c : cases) {
    if (c.b != 2) continue;
    auto d = diameter(saxl_graph(*c.A, c.D));
    bool bfs = d.connected && d.value <= 2;
    bool bg = bg_property_check(*c.A, c.D).holds;
    if (bfs != bg) return "disagreement at q=" + std::to_string(c.G->q());
    saw_false = saw_false || !bg;
  }
  return saw_false ? std::string() : "no case with diameter > 2 was exercised";
}

inline std::string inheritance_pairs() {
  struct Row {
    std::uint32_t q;
    const char* big;
    const char* small;
    const char* family;
  };
  for (const Row& r : {Row{25, "PSigmaL", "T", "d-plus"}, Row{13, "PGL", "T", "d-minus"},
                       Row{27, "PGammaL", "PSigmaL", "subfield:1"}}) {
    testing::Case c = testing::run_case(r.q, r.big, r.family, false);
    Level small(*c.G, GroupLevel::parse(r.small));
    CosetAction A1 = restrict_action(*c.A, small);
    auto res = subgroup_inheritance_check(*c.A, A1);
    auto D1 = suborbits(A1);
    std::string tag = std::string(r.big) + ">" + r.small + " q=" + std::to_string(r.q);
    if (diameter_class(*c.A, c.D) != 2) return tag + ": the larger group does not have diameter 2";
    if (!res.ok()) return tag;
    if (base_size(A1, D1) != 2) return tag + ": subgroup lost b = 2";
  }
  return {};
}

struct PairAgreement {
  std::size_t agree = 0, total = 0;
};

// compare the closed-form pair predicates with stabilizers computed from M
inline PairAgreement fixed_pair_agreement(std::uint32_t q) {
  PGammaL G(make_field_q(q));
  Level Sigma(G, GroupLevel::parse("PSigmaL"));
  const FieldCtx& F = G.field();
  const Point inf = G.infinity();
  ElementSet M = pair_stabilizer(Sigma, 0, inf);
  const Elem id = G.identity();
  PairAgreement out;
  for (Point u = 0; u <= inf; ++u)
    for (Point w = u + 1; w <= inf; ++w) {
      bool in_m0 = false, in_m = false;
      for (const auto& g : M.elements()) {
        if (g == id) continue;
        Point a = G.apply(u, g), b = G.apply(w, g);
        if (!((a == u && b == w) || (a == w && b == u))) continue;
        in_m = true;
        if (G.is_psl(g)) in_m0 = true;
      }
      bool is_alpha = u == 0 && w == inf;
      bool x_t = in_m0 || is_alpha;
      bool t_not_g = !in_m0 && in_m && !is_alpha;
      ++out.total;
      if (fixed_pair_in_X(F, u, w) == x_t && fixed_pair_T_not_G(F, u, w) == t_not_g) ++out.agree;
    }
  return out;
}

inline std::vector<std::pair<std::string, std::function<std::string()>>> all() {
  return {{"field-axioms", field_axioms},
          {"eta-identities", eta_identities},
          {"hilbert90", hilbert90_round_trips},
          {"action-homomorphism", action_homomorphism},
          {"orbit-stabilizer", orbit_stabilizer},
          {"manning", manning_matrix},
          {"saxl-adjacency", saxl_adjacency},
          {"diameter-vs-bg", diameter_double_implication},
          {"inheritance", inheritance_pairs}};
}

}  // namespace saxl::properties
