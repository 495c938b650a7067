#include "doctest.h"

#include <sstream>

#include "properties.hpp"
#include "support.hpp"

using namespace saxl;
using saxl::testing::brute_base_size;
using saxl::testing::run_case;

TEST_CASE("base size agrees with the pointwise-stabilizer oracle") {
  struct Row {
    std::uint32_t q;
    const char* level;
    const char* family;
  };
  for (const Row& r : {Row{13, "T", "d-plus"}, Row{13, "PGL", "d-plus"}, Row{9, "PSigmaL", "d-plus"},
                       Row{11, "T", "d-minus"}, Row{13, "PGL", "borel"}, Row{7, "T", "borel"},
                       Row{8, "T", "subfield:1"}, Row{27, "T", "subfield:1"}, Row{11, "PGL", "s4"},
                       Row{11, "T", "a5"}, Row{13, "T", "a4"}, Row{25, "T", "pgl-subfield:1"}}) {
    auto c = run_case(r.q, r.level, r.family, false);
    CAPTURE(std::string(r.family));
    CAPTURE(r.q);
    int brute = brute_base_size(*c.A);
    CHECK(c.b == brute);
    CHECK(base_size(*c.A) == c.b);
    CHECK((c.b == 2) == (c.regular() > 0));
  }
}

TEST_CASE("borel base sizes") {
  CHECK(run_case(13, "PGL", "borel", false).b == 3);
  CHECK(run_case(16, "PGammaL", "borel", false).b == kBaseMoreThan3);
}

TEST_CASE("saxl graph adjacency matches the definition") { CHECK(properties::saxl_adjacency() == ""); }

TEST_CASE("graph basics") {
  auto c = run_case(13, "T", "d-plus", false);
  REQUIRE(c.b == 2);
  SaxlGraph S = saxl_graph(*c.A, c.D);
  CHECK(S.n_vertices() == c.omega());
  CHECK(S.degree(S.alpha()) == c.gamma());
  CHECK(S.neighbors(S.alpha()) == c.D.gamma);
  CHECK(S.symmetric());
  CHECK(S.loop_free());
  CHECK(S.regular());
  CHECK_FALSE(S.is_frobenius());
  auto d = diameter(S);
  CHECK(d.connected);
  CHECK(d.spot_checked.size() == 3);
  for (auto v : d.spot_checked) CHECK(S.eccentricity(v) == d.value);
  CHECK(d.value == diameter_class(*c.A, c.D));
}

TEST_CASE("the projective line is 2-transitive") {
  PGammaL G(make_field(7, 1));
  Level P(G, GroupLevel::parse("PGL"));
  CHECK(base_size(projective_line_action(P)) == 3);
  CHECK(run_case(7, "PGL", "borel", false).D.suborbits.size() == 2);
}

TEST_CASE("non base-two actions are rejected") {
  auto c = run_case(13, "PGL", "borel", false);
  try {
    saxl_graph(*c.A, c.D);
    FAIL("expected NotBaseTwo");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotBaseTwo);
  }
  CHECK(diameter_class(*c.A, c.D) == 0);
}

TEST_CASE("disconnected saxl graph") {
  auto c = properties::disconnected_example();
  CHECK(c.omega() == 28);
  CHECK(c.b == 2);
  auto d = diameter(saxl_graph(*c.A, c.D));
  CHECK_FALSE(d.connected);
  CHECK(d.value == -1);
  BgVerdict v = bg_property_check(*c.A, c.D);
  CHECK_FALSE(v.holds);
  REQUIRE(v.witness.has_value());
  CHECK(*v.witness != c.A->base_point());
  CHECK(diameter_class(*c.A, c.D) == 3);
}

TEST_CASE("diameter at most 2 exactly when the intersection property holds") {
  CHECK(properties::diameter_double_implication() == "");
}

TEST_CASE("bg witness is the least failing point") {
  auto c = run_case(27, "T", "subfield:1", false);
  REQUIRE(c.b == 2);
  SaxlGraph S = saxl_graph(*c.A, c.D);
  BgVerdict v = bg_property_check(*c.A, c.D);
  // brute force: Gamma cap Gamma^g is the common neighbourhood of alpha and beta
  std::optional<std::uint32_t> least;
  for (std::uint32_t beta = 0; beta < c.omega() && !least; ++beta) {
    if (beta == S.alpha() || S.adjacent(S.alpha(), beta)) continue;
    bool common = false;
    for (auto x : S.gamma()) common = common || S.adjacent(beta, x);
    if (!common) least = beta;
  }
  CHECK(v.holds == !least.has_value());
  CHECK(v.witness == least);
}

TEST_CASE("subgroup inheritance") { CHECK(properties::inheritance_pairs() == ""); }

TEST_CASE("inheritance rejects actions on different points") {
  auto a = run_case(13, "PGL", "d-plus", false);
  auto b = run_case(13, "PGL", "d-minus", false);
  CHECK_THROWS_AS(subgroup_inheritance_check(*a.A, *b.A), Error);
}

TEST_CASE("regular suborbits merge for PGL(2,125) on PSL(2,5)") {
  PGammaL G(make_field(5, 3));
  Level T(G, GroupLevel{});
  Level P(G, GroupLevel::parse("PGL"));
  SubgroupSpec S = subfield(P, 1);
  CosetAction AP = coset_action(P, S.elements);
  CosetAction AT = restrict_action(AP, T);
  CHECK(AP.size() == 16275);
  CHECK(merge_check(AT, AP, subfield(T, 1)));
  CHECK(suborbits(AT).regular_count() == 2 * suborbits(AP).regular_count());
}

TEST_CASE("merge check needs the odd-prime subfield family") {
  PGammaL G(make_field(13, 1));
  Level T(G, GroupLevel{});
  Level P(G, GroupLevel::parse("PGL"));
  CosetAction AP = coset_action(P, dihedral_plus(P).elements);
  CosetAction AT = restrict_action(AP, T);
  try {
    merge_check(AT, AP, dihedral_plus(T));
    FAIL("expected FamilyMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FamilyMismatch);
  }
}

TEST_CASE("dot output lists every edge once") {
  auto c = run_case(11, "T", "d-plus", false);
  SaxlGraph S = saxl_graph(*c.A, c.D);
  std::ostringstream os;
  write_dot(S, *c.A, os);
  std::string dot = os.str();
  CHECK(dot.rfind("graph", 0) == 0);
  std::size_t edges = 0;
  for (std::size_t pos = dot.find("--"); pos != std::string::npos; pos = dot.find("--", pos + 2)) ++edges;
  CHECK(edges == c.omega() * c.gamma() / 2);
}
