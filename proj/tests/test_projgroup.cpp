#include "doctest.h"

#include <set>

#include "properties.hpp"
#include "saxl/numtheory.hpp"
#include "saxl/projgroup.hpp"

using namespace saxl;

TEST_CASE("basic element operations") {
  PGammaL G(make_field(5, 1));
  const FieldCtx& F = G.field();
  Elem u = G.make(F.one(), F.one(), F.zero(), F.one());
  CHECK(G.order(u) == 5);
  CHECK(G.compose(u, G.identity()) == u);
  CHECK(G.compose(u, G.inverse(u)) == G.identity());
  PGammaL G27(make_field(3, 3));
  CHECK(G27.order(G27.frob()) == 3);
}

TEST_CASE("trace classes") {
  PGammaL G(make_field(7, 1));
  const FieldCtx& F = G.field();
  CHECK(G.trace_class(G.make(F.zero(), F.from_int(-1), F.one(), F.zero()).mat) == TraceClass::InvolutionInPSL);
  CHECK(G.trace_class(G.make(F.one(), F.one(), F.zero(), F.one()).mat) == TraceClass::Generic);
  Elem x = G.make(F.zero(), F.from_int(-1), F.one(), F.from_int(-1));
  CHECK(G.trace_class(x.mat) == TraceClass::Order3Class);
  CHECK(G.order(x) == 3);
}

TEST_CASE("composition is a right action on the projective line") {
  for (std::uint32_t q : {8u, 9u, 25u, 27u}) {
    PGammaL G(make_field_q(q));
    Level L(G, GroupLevel::parse("PGammaL"));
    auto all = L.elements();
    CHECK(all.size() == G.order_T() * (G.d()) * G.n());
    std::mt19937 rng(q);
    for (int it = 0; it < 300; ++it) {
      const Elem& g = all[rng() % all.size()];
      const Elem& h = all[rng() % all.size()];
      const Elem& k = all[rng() % all.size()];
      CHECK(G.compose(G.compose(g, h), k) == G.compose(g, G.compose(h, k)));
      for (Point x = 0; x <= q; ++x) CHECK(G.apply(x, G.compose(g, h)) == G.apply(G.apply(x, g), h));
      Signature sg = G.signature(g), sh = G.signature(h), s = G.signature(G.compose(g, h));
      CHECK(s.e == (sg.e + sh.e) % G.n());
      if (G.d() == 2) CHECK(s.det_class == (sg.det_class + sh.det_class) % 2);
    }
  }
}

TEST_CASE("signatures of the named generators") {
  PGammaL G(make_field(5, 2));
  CHECK(G.signature(G.delta()) == Signature{1, 0});
  Level L(G, GroupLevel::parse("T:df^1"));
  for (const auto& g : L.generators()) CHECK(L.contains(g));
  CHECK(L.order() == 2 * G.order_T());
  CHECK_FALSE(L.contains(G.delta()));
  CHECK_FALSE(L.contains(G.frob()));
  CHECK(L.contains(G.compose(G.delta(), G.frob())));
}

TEST_CASE("level orders") {
  PGammaL G(make_field(3, 4));
  CHECK(Level(G, GroupLevel::parse("T")).order() == 81 * (81 * 81 - 1) / 2);
  CHECK(Level(G, GroupLevel::parse("PGL")).order() == 81 * (81 * 81 - 1));
  CHECK(Level(G, GroupLevel::parse("PSigmaL")).order() == 81 * (81 * 81 - 1) / 2 * 4);
  CHECK(Level(G, GroupLevel::parse("PGammaL")).order() == 81ull * (81 * 81 - 1) * 4);
  CHECK(Level(G, GroupLevel::parse("T:f^2")).order() == 81 * (81 * 81 - 1));
  CHECK(Level(G, GroupLevel::parse("T:df^2")).order() == 81 * (81 * 81 - 1));
  CHECK_FALSE(Level(G, GroupLevel::parse("T:df^2")).same_group(Level(G, GroupLevel::parse("PGL"))));
}

TEST_CASE("family orders") {
  {
    PGammaL G(make_field(5, 1));
    CHECK(dihedral_plus(Level(G, GroupLevel{})).order() == 6);
  }
  {
    PGammaL G(make_field(3, 2));
    SubgroupSpec S = dihedral_plus(Level(G, GroupLevel::parse("PSigmaL")));
    CHECK(S.order() == 20);
  }
  {
    PGammaL G(make_field(13, 1));
    Level T(G, GroupLevel{});
    SubgroupSpec S = dihedral_minus(T);
    CHECK(S.socle_part.size() == 12);
    const Point inf = G.infinity();
    for (const auto& g : S.elements.elements()) {
      std::set<Point> img{G.apply(0, g), G.apply(inf, g)};
      CHECK(img == std::set<Point>{0, inf});
    }
    CHECK(borel(T).order() == 78);
  }
  {
    PGammaL G(make_field(2, 4));
    CHECK(subfield(Level(G, GroupLevel{}), 2).order() == 60);
  }
  {
    PGammaL G(make_field(3, 3));
    CHECK(subfield(Level(G, GroupLevel{}), 1).order() == 12);
    CHECK_THROWS(subfield(Level(G, GroupLevel{}), 2));
    CHECK_THROWS(pgl_subfield(Level(G, GroupLevel{}), 1));
  }
  {
    PGammaL G(make_field(2, 3));
    CHECK(subfield(Level(G, GroupLevel{}), 1).maximality_warning.has_value());
  }
  {
    PGammaL G(make_field(5, 2));
    CHECK(pgl_subfield(Level(G, GroupLevel{}), 1).order() == 120);
  }
}

TEST_CASE("every family is closed and has the predicted order") {
  struct Row {
    std::uint32_t q;
    const char* level;
    const char* family;
    std::uint64_t order;
  };
  for (const Row& r : {Row{13, "T", "d-plus", 14}, Row{13, "PGL", "d-plus", 28}, Row{16, "T", "d-plus", 34},
                       Row{25, "PSigmaL", "d-plus", 52}, Row{13, "T", "d-minus", 12}, Row{13, "T", "borel", 78},
                       Row{27, "PGammaL", "subfield:1", 72}, Row{29, "T", "a5", 60}, Row{17, "T", "s4", 24},
                       Row{13, "T", "a4", 12}}) {
    PGammaL G(make_field_q(r.q));
    Level L(G, GroupLevel::parse(r.level));
    SubgroupSpec S = build_family(L, FamilyChoice::parse(r.family));
    CAPTURE(std::string(r.family));
    CHECK(S.order() == r.order);
    CHECK(closure(G, S.generators) == S.elements);
    for (const auto& g : S.elements.elements())
      for (const auto& h : S.generators) CHECK(S.elements.contains(G, G.compose(g, h)));
  }
}

TEST_CASE("exceptional class counts") {
  {
    PGammaL G(make_field(11, 1));
    CHECK(exceptional(Level(G, GroupLevel{}), Family::A5).size() == 2);
  }
  {
    PGammaL G(make_field(17, 1));
    CHECK(exceptional(Level(G, GroupLevel{}), Family::S4).size() == 2);
    // in PGL(2,17) every S4 lies inside T, so none is maximal in PGL
    Level P(G, GroupLevel::parse("PGL"));
    for (const auto& S : exceptional(P, Family::S4))
      for (const auto& g : S.socle_part.elements()) CHECK(G.is_psl(g));
    for (const auto& S : exceptional(P, Family::S4)) CHECK(S.socle_part.size() == 24);
  }
  {
    PGammaL G(make_field(13, 1));
    CHECK(exceptional(Level(G, GroupLevel{}), Family::A4).size() == 1);
  }
  PGammaL G4(make_field(2, 2));
  CHECK_THROWS(exceptional(Level(G4, GroupLevel{}), Family::A4));
}

TEST_CASE("normalizers and centralizers") {
  PGammaL G(make_field(13, 1));
  Level T(G, GroupLevel{});
  const FieldCtx& F = G.field();
  Elem x = G.make(F.zero(), F.from_int(-1), F.one(), F.zero());
  ElementSet C = centralizer(T, closure(G, {x}));
  CHECK(C.size() == 12);  // D_{q-1}, q = 1 mod 4
  SubgroupSpec M = dihedral_plus(T);
  CHECK(normalizer(T, M.elements) == M.elements);

  Level P(G, GroupLevel::parse("PGL"));
  ElementSet A4 = exceptional(T, Family::A4).front().socle_part;
  CHECK(A4.size() == 12);
  CHECK(normalizer(P, A4).size() == 24);
}

TEST_CASE("subgroup conjugacy classes") {
  PGammaL G(make_field(13, 1));
  Level T(G, GroupLevel{});
  SubgroupSpec B = borel(T);
  const FieldCtx& F = G.field();
  ElementSet P = closure(G, {G.make(F.one(), F.one(), F.zero(), F.one())});
  CHECK(subgroup_conjugacy_classes(T, P, B.elements).size() == 1);
  CHECK(subgroup_conjugacy_classes(T, B.elements, B.elements).size() == 1);
}

TEST_CASE("explicit dihedral-plus data generates D_{q+1}.Z_n") {
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, unsigned>>{{5, 2}, {3, 3}, {7, 2}, {3, 4}, {11, 1}}) {
    PGammaL G(make_field(p, n));
    DihedralPlusData D = dihedral_plus_data(G);
    CAPTURE(p);
    CAPTURE(n);
    const std::uint64_t q = G.q();
    CHECK(G.order(D.s) == q + 1);
    CHECK(G.power(D.a, (q + 1) / 2) == G.identity());
    CHECK(G.order(D.b) == 2);
    ElementSet M0 = closure(G, {D.a, D.b});
    CHECK(M0.size() == q + 1);
    CHECK(G.signature(D.c).e == (n > 1 ? 1u : 0u));
    CHECK(conjugate_set(G, M0, D.c) == M0);
    CHECK(dihedral_plus(Level(G, GroupLevel::parse("PSigmaL"))).order() == (q + 1) * n);
    SubgroupSpec M = dihedral_plus(Level(G, GroupLevel::parse("PGammaL")));
    CHECK(M.order() == 2 * (q + 1) * n);
    CHECK(M.elements.contains(G, D.c));
  }
  PGammaL G8(make_field(2, 3));
  CHECK_THROWS(dihedral_plus_data(G8));
}
