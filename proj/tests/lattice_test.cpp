#include <doctest.h>

#include <algorithm>

#include "rspace/lattice.hpp"
#include "testutil.hpp"

using namespace rspace;

TEST_CASE("free distributive lattices") {
  std::vector<size_t> sizes{2, 3, 6, 20, 168};
  for (size_t n = 0; n <= 4; ++n) CHECK(free_dl(n).size() == sizes[n]);
  CHECK_THROWS_AS(free_dl(5), domain_error);

  DistLattice kx = free_dl(1);
  std::vector<std::string> names = kx.names();
  std::sort(names.begin(), names.end());
  CHECK(names == std::vector<std::string>{"0", "1", "x1"});
}

TEST_CASE("lattice axioms are enforced") {
  DistLattice k2 = free_dl(1);
  auto names = k2.names();
  std::vector<std::vector<size_t>> add(3, std::vector<size_t>(3));
  std::vector<std::vector<size_t>> mul(3, std::vector<size_t>(3));
  for (size_t a = 0; a < 3; ++a)
    for (size_t b = 0; b < 3; ++b) {
      add[a][b] = k2.add(a, b);
      mul[a][b] = k2.mul(a, b);
    }
  // break commutativity
  add[0][1] = add[1][0] == 0 ? 1 : 0;
  CHECK_THROWS_AS(DistLattice(names, add, mul, k2.zero(), k2.one()), domain_error);
}

TEST_CASE("prime spectra") {
  SSpecResult k_spec = sspec(free_dl(0));
  CHECK(k_spec.poset.size() == 1);

  SSpecResult kx_spec = sspec(free_dl(1));
  REQUIRE(kx_spec.poset.size() == 2);
  CHECK((kx_spec.poset.leq(0, 1) || kx_spec.poset.leq(1, 0)));
  // primes of K[x] are {0} and {0, x}
  std::vector<size_t> sizes;
  for (const auto& p : kx_spec.primes) sizes.push_back(p.size());
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<size_t>{1, 2});

  // join-irreducible enumeration matches the brute-force oracle
  for (const DistLattice& l : {free_dl(0), free_dl(1), free_dl(2),
                               closed_lattice(FinitePoset::chain(3))}) {
    SSpecResult ss = sspec(l);
    auto brute = prime_ideals_brute_force(l);
    auto sorted_primes = ss.primes;
    std::sort(sorted_primes.begin(), sorted_primes.end());
    std::sort(brute.begin(), brute.end());
    CHECK(sorted_primes == brute);
  }
}

TEST_CASE("sspec of the free lattice is the parts poset") {
  for (size_t n = 0; n <= 3; ++n) CHECK(testutil::sspec_of_free_matches_parts(n));
}

TEST_CASE("closed-set lattices") {
  DistLattice pt = closed_lattice(FinitePoset::point());
  CHECK(pt.size() == 2);

  DistLattice chain2 = closed_lattice(FinitePoset::chain(2));
  CHECK(chain2.size() == 3);

  // A(P_n) is the free lattice on n generators: explicit isomorphism via
  // complements of the generated up-sets
  for (size_t n = 0; n <= 3; ++n) {
    PartsPoset parts = parts_poset(n);
    DistLattice closed = closed_lattice(parts.poset);
    DistLattice free = free_dl(n);
    REQUIRE(closed.size() == free.size());
    size_t subsets = 1u << n;
    std::vector<uint32_t> antichains;
    for (uint32_t members = 0; members < (1u << subsets); ++members) {
      bool anti = true;
      for (size_t s = 0; s < subsets && anti; ++s) {
        if (!(members & (1u << s))) continue;
        for (size_t t = 0; t < subsets && anti; ++t)
          if (s != t && (members & (1u << t)) && (s & t) == s) anti = false;
      }
      if (anti) antichains.push_back(members);
    }
    std::vector<uint32_t> masks = closed_lattice_masks(parts.poset);
    std::vector<size_t> image(free.size());
    for (size_t e = 0; e < free.size(); ++e) {
      // the up-set of the antichain, then its complementary down-set
      uint32_t upset = 0;
      for (size_t point = 0; point < parts.poset.size(); ++point) {
        uint32_t delta = parts.masks[point];
        for (size_t s = 0; s < subsets; ++s)
          if ((antichains[e] & (1u << s)) && (s & ~delta) == 0) upset |= (1u << point);
      }
      uint32_t down = (static_cast<uint32_t>((1ull << parts.poset.size()) - 1)) & ~upset;
      bool found = false;
      for (size_t i = 0; i < masks.size() && !found; ++i)
        if (masks[i] == down) {
          image[e] = i;
          found = true;
        }
      REQUIRE(found);
    }
    CHECK(image[free.zero()] == closed.zero());
    CHECK(image[free.one()] == closed.one());
    for (size_t x = 0; x < free.size(); ++x)
      for (size_t y = 0; y < free.size(); ++y) {
        CHECK(image[free.add(x, y)] == closed.add(image[x], image[y]));
        CHECK(image[free.mul(x, y)] == closed.mul(image[x], image[y]));
      }
  }
}

TEST_CASE("birkhoff duality round trips") {
  for (const FinitePoset& s : testutil::all_posets_upto(4)) {
    if (s.size() == 0) continue;
    CHECK(canonical_poset_iso(s));
  }
  for (size_t n = 0; n <= 3; ++n) CHECK(canonical_lattice_iso(free_dl(n)));
  for (const FinitePoset& s : testutil::all_posets_upto(4)) {
    if (s.size() == 0) continue;
    DistLattice l = closed_lattice(s);
    if (l.size() <= 30) CHECK(canonical_lattice_iso(l));
  }
}

TEST_CASE("lattice json round trip") {
  DistLattice l = free_dl(2);
  DistLattice back = DistLattice::from_json(l.to_json());
  CHECK(back.size() == l.size());
  for (size_t a = 0; a < l.size(); ++a)
    for (size_t b = 0; b < l.size(); ++b) {
      CHECK(back.add(a, b) == l.add(a, b));
      CHECK(back.mul(a, b) == l.mul(a, b));
    }
}
