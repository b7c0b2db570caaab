#include <doctest.h>

#include "testutil.hpp"

using namespace rspace;

namespace {
const Field kQ = Field::rationals();
}

TEST_CASE("projective space construction") {
  RingedSpace p0 = build_projective(kQ, 0);
  CHECK(p0.size() == 1);
  CHECK(p0.stalk(0) == LocalizedRing::constants(kQ));

  RingedSpace p1 = build_projective(kQ, 1);
  // chart {1}: polynomial in the single generator x2/x1
  const LocalizedRing& chart = p1.stalk(p1.poset().index_of("{1}"));
  auto gens = chart.hom_generators();
  REQUIRE(gens.size() == 1);
  CHECK(gens[0].to_string() == "(x2)/(x1)");
  // chart {1,2}: Laurent ring on x2/x1
  const LocalizedRing& laurent = p1.stalk(p1.poset().index_of("{1,2}"));
  auto lgens = laurent.hom_generators();
  REQUIRE(lgens.size() == 2);
  CHECK(lgens[0] * lgens[1] == laurent.one());
}

TEST_CASE("twisting modules and their global sections") {
  // Gamma(P^n, O(1)) contains the coordinates, with U_{x_i} = U_{i}
  AlgTopInvQuotient universal = projective_universal_object(kQ, 2);
  PartsPoset parts = nonempty_parts_poset(3);
  const RingedSpace& p2 = universal.module.base();
  for (size_t i = 0; i < 3; ++i) {
    OpenSet locus = universal.sections[i].section.unit_locus(universal.module);
    CHECK(locus == p2.poset().min_open(parts.index_of_mask(1u << i)));
    CHECK(universal.sections[i].open_part == locus);
  }

  CHECK(twisting_global_basis(kQ, 2, 2).size() == 6);
  CHECK(twisting_global_basis(kQ, 1, -1).empty());
  CHECK(twisting_global_basis_labels(kQ, 2, 1) ==
        std::vector<std::string>{"x1", "x2", "x3"});

  // no compatible family exists for O(-1) on P^1
  RingedSpace p1 = build_projective(kQ, 1);
  InvertibleModule om1 = twisting_module(kQ, 1, -1);
  size_t anchor = p1.poset().index_of("{1}");
  const LocalizedRing& chart = p1.stalk(anchor);
  for (const RingElement& value :
       {chart.one(), chart.var_element(1) * chart.denominator_inverse(0), chart.constant_element(3)})
    CHECK_FALSE(extend_twist_family(p1, om1, -1, anchor, value).has_value());
  // while every O(1) family extends from any degree-zero value times the basis
  InvertibleModule o1 = twisting_module(kQ, 1, 1);
  CHECK(extend_twist_family(p1, o1, 1, anchor, chart.one()).has_value());

  // O(d) tensor O(d') = O(d + d'); O(0) is trivial
  InvertibleModule o2 = twisting_module(kQ, 1, 2);
  CHECK(o1.tensor(o1) == o2);
  CHECK(twisting_module(kQ, 1, 0) == InvertibleModule::trivial(p1));
  InvertibleModule o0 = o1.tensor(twisting_module(kQ, 1, -1));
  CHECK(o0 == InvertibleModule::trivial(p1));
}

TEST_CASE("projective representability bijection") {
  // the universal triple induces the identity
  for (size_t n = 0; n <= 2; ++n) {
    AlgTopInvQuotient universal = projective_universal_object(kQ, n);
    SpaceMorphism m = morphism_from_quotient(universal.module.base(), universal);
    CHECK(m.is_identity());
    AlgTopInvQuotient back = quotient_from_morphism(m, n);
    CHECK(inv_quotients_equivalent(back, universal));
  }

  // one-point example: sections (1, 0, ..., 0), cover U_1 = {*}
  RingedSpace pt = RingedSpace::point(LocalizedRing::constants(kQ), "pt");
  InvertibleModule trivial = InvertibleModule::trivial(pt);
  std::vector<AlgTopSection> sections;
  for (size_t j = 0; j < 3; ++j) {
    ModuleSection s(trivial, {pt.stalk(0).constant_element(j == 0 ? 1 : 0)});
    OpenSet u = j == 0 ? pt.poset().whole() : pt.poset().empty_open();
    sections.push_back(AlgTopSection{std::move(s), std::move(u)});
  }
  SpaceMorphism m = morphism_from_quotient(pt, make_inv_quotient(trivial, sections));
  CHECK(m.target.poset().label(m.top.apply(0)) == "{1}");
  // x_j / x_1 maps to 0 for j > 1
  const LocalizedRing& chart = m.target.stalk(m.top.apply(0));
  for (size_t j = 1; j < 3; ++j) {
    RingElement gen = chart.var_element(j) * chart.denominator_inverse(0);
    CHECK(m.comorphisms[0].apply(gen).is_zero());
  }
}

TEST_CASE("projective round trips on random quotients") {
  testutil::Sampler s(testutil::global_seed() + 30);
  for (const RingedSpace& space : testutil::test_space_library(kQ)) {
    for (size_t n1 : {1, 2, 3}) {
      for (int trial = 0; trial < 5; ++trial) {
        AlgTopInvQuotient q = s.inv_quotient(space, n1);
        SpaceMorphism m = morphism_from_quotient(space, q);
        AlgTopInvQuotient back = quotient_from_morphism(m, n1 - 1);
        CHECK(inv_quotients_equivalent(q, back));
      }
    }
  }
}

TEST_CASE("pullback of the twisting module along the quotient map") {
  auto [p1, projection] = quotient_by_gm(homothety_action(build_punctured(kQ, 2)));
  InvertibleModule o1 = twisting_module(kQ, 1, 1);
  // the quotient target matches P^1, so O(1) pulls back to A^2-0
  REQUIRE(spaces_match(p1, build_projective(kQ, 1)));
  InvertibleModule pulled = pullback_invertible(projection, o1);
  const RingedSpace& a20 = projection.source;
  size_t c1 = a20.poset().index_of("{1}");
  size_t c2 = a20.poset().index_of("{2}");
  size_t c12 = a20.poset().index_of("{1,2}");
  // transition on the {2} <= {1,2} edge is x2/x1, named the same upstairs
  RingElement expected = a20.stalk(c12).var_element(1) *
                         a20.stalk(c12).denominator_inverse(0);
  CHECK(pulled.transition(c2, c12) == expected);
  CHECK(pulled.transition(c1, c12) == a20.stalk(c12).one());
}

TEST_CASE("pi0 behavior of quotients") {
  testutil::Sampler s(testutil::global_seed() + 31);
  RingedSpace a1 = build_affine(kQ, 1);
  for (int trial = 0; trial < 10; ++trial) {
    AlgTopInvQuotient q = s.inv_quotient(a1, 2);
    AlgTopInvQuotient sat = saturate_quotient(q);
    CHECK(inv_quotient_leq(q, sat));
    AlgTopInvQuotient sat2 = saturate_quotient(sat);
    for (size_t i = 0; i < sat.sections.size(); ++i)
      CHECK(sat.sections[i].open_part == sat2.sections[i].open_part);
    // saturation is the unique maximal dominator
    CHECK(inv_quotient_leq(sat, sat));
  }
}
