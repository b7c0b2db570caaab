#pragma once

#include <random>

#include "rspace/affine.hpp"
#include "rspace/grassmann.hpp"
#include "rspace/projective.hpp"

namespace rspace::testutil {

/// Seed shared by all randomized tests; settable with --seed.
uint64_t global_seed();
void set_global_seed(uint64_t seed);

struct Sampler {
  std::mt19937_64 rng;
  explicit Sampler(uint64_t seed) : rng(seed) {}

  size_t pick(size_t n);             // uniform in [0, n)
  long int_in(long lo, long hi);     // inclusive
  mpq_class coeff(const Field& f);   // small field element
  mpq_class nonzero_coeff(const Field& f);

  Poly poly(const PolyRing& ring, size_t max_terms, uint32_t max_exp);
  RingElement element(const LocalizedRing& ring);
  /// c * prod denominators^{e}, e in [-2, 2].
  RingElement unit(const LocalizedRing& ring);
  /// Random up-set contained in the given open.
  OpenSet open_inside(const OpenSet& bound);

  /// Random global section (minimum stalk value, or a shared-ambient
  /// polynomial on inclusion-structured spaces).
  GlobalSection section(const RingedSpace& s);
  /// Random invertible matrix over a ring (product of elementary matrices
  /// and a unit diagonal).
  RingMatrix invertible_matrix(const LocalizedRing& ring, size_t r);

  AlgTopTuple tuple(const RingedSpace& s, size_t n, bool covering);
  AlgTopInvQuotient inv_quotient(const RingedSpace& s, size_t sections);
  AlgTopRankQuotient rank_quotient(const RingedSpace& s, size_t r, size_t n);
};

/// Small ringed spaces (at most 6 points) used as bijection test domains.
std::vector<RingedSpace> test_space_library(const Field& k);

/// All posets on up to max_elems elements whose order is compatible with the
/// natural label order; every isomorphism class occurs.
std::vector<FinitePoset> all_posets_upto(size_t max_elems);

/// Order isomorphism between SSpec(free_dl(n)) and P_n via evaluation primes.
bool sspec_of_free_matches_parts(size_t n);

}  // namespace rspace::testutil
