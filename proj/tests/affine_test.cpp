#include <doctest.h>

#include "testutil.hpp"

using namespace rspace;

namespace {
const Field kQ = Field::rationals();
}

TEST_CASE("affine constructors") {
  RingedSpace alg1 = build_affine_alg(kQ, 1);
  CHECK(alg1.size() == 1);
  CHECK(alg1.stalk(0) == LocalizedRing::polynomial(kQ, {"x"}));
  CHECK(build_affine_alg(kQ, 0).stalk(0) == LocalizedRing::constants(kQ));
  CHECK(build_affine_alg(kQ, 3).stalk(0) ==
        LocalizedRing::polynomial(kQ, {"x1", "x2", "x3"}));

  RingedSpace top1 = build_affine_top(kQ, 1);
  CHECK(top1.size() == 2);
  CHECK(top1.stalk(0) == LocalizedRing::constants(kQ));
  CHECK(build_affine_top(kQ, 0).size() == 1);
  RingedSpace top2 = build_affine_top(kQ, 2);
  CHECK(top2.size() == 4);
  for (size_t p = 0; p < top2.size(); ++p) CHECK(top2.stalk(p) == LocalizedRing::constants(kQ));

  RingedSpace a1 = build_affine(kQ, 1);
  CHECK(a1.stalk(a1.poset().index_of("{}")) == LocalizedRing::polynomial(kQ, {"x"}));
  CHECK(a1.stalk(a1.poset().index_of("{1}")) ==
        LocalizedRing::monomial_localization(kQ, {"x"}, {"x"}));

  RingedSpace a2 = build_affine(kQ, 2);
  CHECK(a2.stalk(a2.poset().index_of("{}")) == LocalizedRing::polynomial(kQ, {"x1", "x2"}));
  CHECK(a2.stalk(a2.poset().index_of("{1,2}")) ==
        LocalizedRing::monomial_localization(kQ, {"x1", "x2"}, {"x1", "x2"}));
}

TEST_CASE("punctured spaces and the multiplicative group") {
  RingedSpace gm = build_gm(kQ);
  CHECK(gm.size() == 1);
  CHECK(gm.stalk(0) == LocalizedRing::monomial_localization(kQ, {"x"}, {"x"}));
  CHECK(spaces_match(build_punctured(kQ, 1), gm));
  CHECK(build_punctured(kQ, 2).size() == 3);
  CHECK_THROWS_AS(build_punctured(kQ, 0), domain_error);
}

TEST_CASE("open-function space and the flag chain") {
  RingedSpace f1 = build_open_function_space(kQ, 1);
  CHECK(f1.stalk(f1.poset().index_of("{}")) == LocalizedRing::constants(kQ));
  CHECK(f1.stalk(f1.poset().index_of("{1}")) == LocalizedRing::polynomial(kQ, {"x"}));

  RingedSpace chain1 = build_flag_chain(kQ, 1);
  CHECK(chain1.size() == 1);
  CHECK(chain1.stalk(0) == LocalizedRing::polynomial(kQ, {"x1"}));
  RingedSpace chain2 = build_flag_chain(kQ, 2);
  CHECK(chain2.stalk(1) == LocalizedRing::monomial_localization(kQ, {"x1", "x2"}, {"x1"}));
}

TEST_CASE("unit loci of coordinates") {
  RingedSpace a2 = build_affine(kQ, 2);
  PartsPoset parts = parts_poset(2);
  AlgTopTuple universal = affine_universal_object(a2, 2);
  for (size_t i = 0; i < 2; ++i) {
    OpenSet locus = unit_locus(universal[i].function);
    CHECK(locus == a2.poset().min_open(parts.index_of_mask(1u << i)));
    CHECK(universal[i].open_part == locus);
  }
}

TEST_CASE("the affine representability bijection") {
  // universal object maps to the identity
  for (size_t n = 0; n <= 2; ++n) {
    RingedSpace an = build_affine(kQ, n);
    SpaceMorphism m = morphism_from_algtop(an, affine_universal_object(an, n));
    CHECK(m.is_identity());
    AlgTopTuple back = algtop_from_morphism(SpaceMorphism::identity(an), n);
    AlgTopTuple universal = affine_universal_object(an, n);
    REQUIRE(back.size() == universal.size());
    for (size_t i = 0; i < back.size(); ++i) {
      CHECK(back[i].function == universal[i].function);
      CHECK(back[i].open_part == universal[i].open_part);
    }
  }

  // one-point examples
  RingedSpace pt = RingedSpace::point(LocalizedRing::constants(kQ), "pt");
  GlobalSection one(pt, {pt.stalk(0).one()});
  SpaceMorphism m1 = morphism_from_algtop(
      pt, {make_algtop_function(one, pt.poset().whole())});
  CHECK(m1.target.poset().label(m1.top.apply(0)) == "{1}");
  CHECK(m1.comorphisms[0].var_images()[0] == pt.stalk(0).one());

  GlobalSection zero(pt, {pt.stalk(0).zero()});
  SpaceMorphism m0 = morphism_from_algtop(
      pt, {make_algtop_function(zero, pt.poset().empty_open())});
  CHECK(m0.target.poset().label(m0.top.apply(0)) == "{}");
  CHECK(m0.comorphisms[0].var_images()[0] == pt.stalk(0).zero());

  // declaring the open too large is rejected
  CHECK_THROWS_AS(make_algtop_function(zero, pt.poset().whole()), domain_error);
}

TEST_CASE("affine round trips on random tuples") {
  testutil::Sampler s(testutil::global_seed() + 20);
  for (const RingedSpace& space : testutil::test_space_library(kQ)) {
    for (size_t n = 0; n <= 2; ++n) {
      for (int trial = 0; trial < 8; ++trial) {
        AlgTopTuple thetas = s.tuple(space, n, false);
        SpaceMorphism m = morphism_from_algtop(space, thetas);
        AlgTopTuple back = algtop_from_morphism(m, n);
        REQUIRE(back.size() == thetas.size());
        for (size_t i = 0; i < n; ++i) {
          CHECK(back[i].function == thetas[i].function);
          CHECK(back[i].open_part == thetas[i].open_part);
        }
        // h^{-1}(U_f) lands inside U_{h^* f}; only the inclusion holds in general
        for (size_t i = 0; i < n; ++i) {
          AlgTopTuple universal = affine_universal_object(m.target, n);
          OpenSet pulled_open = m.top.preimage(unit_locus(universal[i].function));
          CHECK(pulled_open.subset_of(unit_locus(universal[i].function.pullback(m))));
        }
      }
    }
  }
}

TEST_CASE("punctured round trips need coverings") {
  testutil::Sampler s(testutil::global_seed() + 21);
  RingedSpace a1 = build_affine(kQ, 1);
  for (int trial = 0; trial < 10; ++trial) {
    AlgTopTuple thetas = s.tuple(a1, 2, true);
    SpaceMorphism m = morphism_from_algtop_punctured(a1, thetas);
    AlgTopTuple back = algtop_from_morphism_punctured(m, 2);
    for (size_t i = 0; i < 2; ++i) {
      CHECK(back[i].function == thetas[i].function);
      CHECK(back[i].open_part == thetas[i].open_part);
    }
  }
  GlobalSection zero(a1, {a1.stalk(0).zero(), a1.stalk(1).zero()});
  AlgTopFunction partial = make_algtop_function(zero, a1.poset().empty_open());
  CHECK_THROWS_AS(morphism_from_algtop_punctured(a1, {partial, partial}), domain_error);
}

TEST_CASE("quotients by the multiplicative group") {
  RingedSpace a2 = build_affine(kQ, 2);
  std::vector<Grading> trivial;
  for (size_t p = 0; p < a2.size(); ++p)
    trivial.push_back(Grading{std::vector<long>(a2.stalk(p).poly_ring().arity(), 0)});
  auto [same, id] = quotient_by_gm(make_gm_action(a2, trivial));
  CHECK(spaces_match(same, a2));
  CHECK(id.is_identity());

  for (size_t n = 0; n <= 2; ++n) {
    auto [quotient, projection] = quotient_by_gm(homothety_action(build_punctured(kQ, n + 1)));
    CHECK(spaces_match(quotient, build_projective(kQ, n)));
    CHECK(check_morphism(projection).ok);
  }

  auto [gmq, gmproj] = quotient_by_gm(homothety_action(build_gm(kQ)));
  CHECK(gmq.stalk(0) == LocalizedRing::constants(kQ));

  // non-homothety gradings are rejected rather than mis-quotiented
  std::vector<Grading> mixed(a2.size(), Grading{{1, 0}});
  CHECK_THROWS_AS(quotient_by_gm(make_gm_action(a2, mixed)), domain_error);
}

TEST_CASE("saturation and pi0") {
  RingedSpace a2 = build_affine(kQ, 2);
  AlgTopTuple universal = affine_universal_object(a2, 2);
  // theta = (x1, empty) saturates to (x1, U_{1})
  AlgTopFunction theta{universal[0].function, a2.poset().empty_open()};
  AlgTopFunction sat = saturate(theta);
  CHECK(sat.open_part == universal[0].open_part);
  CHECK(algtop_leq(theta, sat));
  AlgTopFunction sat2 = saturate(sat);
  CHECK(sat2.open_part == sat.open_part);

  // nested tuples with equal sections share a pi0 class
  AlgTopTuple small{theta}, large{sat};
  auto classes = pi0_classes({small, large});
  REQUIRE(classes.size() == 1);
  CHECK(classes[0] == std::vector<size_t>{0, 1});

  testutil::Sampler s(testutil::global_seed() + 22);
  for (const RingedSpace& space : testutil::test_space_library(kQ)) {
    std::vector<AlgTopTuple> tuples;
    for (int trial = 0; trial < 10; ++trial) tuples.push_back(s.tuple(space, 2, false));
    for (const auto& t : tuples) {
      AlgTopTuple satd = saturate_tuple(t);
      CHECK(tuple_leq(t, satd));
      CHECK(tuple_leq(satd, saturate_tuple(satd)));
      CHECK(tuple_leq(saturate_tuple(satd), satd));
      // any maximal element dominating t is exactly its saturation
      for (const auto& other : tuples) {
        AlgTopTuple other_sat = saturate_tuple(other);
        if (tuple_leq(t, other_sat)) {
          CHECK(tuple_leq(other_sat, satd));
          CHECK(tuple_leq(satd, other_sat));
        }
      }
    }
    auto classes = pi0_classes(tuples);
    size_t total = 0;
    for (const auto& c : classes) total += c.size();
    CHECK(total == tuples.size());
  }
}
