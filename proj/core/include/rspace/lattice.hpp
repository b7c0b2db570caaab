#pragma once

#include <string>
#include <vector>

#include "rspace/poset.hpp"

namespace rspace {

/// Finite distributive lattice given by operation tables. Both operations are
/// commutative, associative and idempotent; the product distributes over the
/// addition; 0 and 1 are the neutral elements and satisfy a*0 = 0 and
/// a+1 = 1. All axioms are checked on construction.
class DistLattice {
public:
  DistLattice(std::vector<std::string> names, std::vector<std::vector<size_t>> add,
              std::vector<std::vector<size_t>> mul, size_t zero, size_t one);

  size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  size_t add(size_t a, size_t b) const { return add_[a][b]; }
  size_t mul(size_t a, size_t b) const { return mul_[a][b]; }
  size_t zero() const { return zero_; }
  size_t one() const { return one_; }
  /// Lattice order a <= b iff a + b = b.
  bool leq(size_t a, size_t b) const { return add_[a][b] == b; }

  std::string to_json() const;
  static DistLattice from_json(const std::string& text);

private:
  std::vector<std::string> names_;
  std::vector<std::vector<size_t>> add_, mul_;
  size_t zero_, one_;
};

/// The free distributive lattice on n generators (n <= 4), realized as
/// antichains of subsets of {1..n}; sizes 2, 3, 6, 20, 168.
DistLattice free_dl(size_t n);

/// Prime spectrum: prime ideals (downward-closed, closed under +, and
/// p*q in I implies p in I or q in I), with the Zariski-compatible Alexandrov
/// order (reverse inclusion of ideals).
struct SSpecResult {
  FinitePoset poset;
  std::vector<std::vector<size_t>> primes;  // members of each prime ideal
};
SSpecResult sspec(const DistLattice& l);

/// Brute-force prime-ideal enumeration for small lattices (test oracle).
std::vector<std::vector<size_t>> prime_ideals_brute_force(const DistLattice& l);

/// The lattice A(S) of closed subsets of a finite poset, with + = intersection
/// and * = union.
DistLattice closed_lattice(const FinitePoset& s);
/// The down-set bitmasks backing closed_lattice, in element order.
std::vector<uint32_t> closed_lattice_masks(const FinitePoset& s);

/// The canonical map s |-> {closed sets containing s} into SSpec A(S);
/// true when it is an order isomorphism.
bool canonical_poset_iso(const FinitePoset& s);

/// The canonical map a |-> {primes containing a} into A(SSpec A);
/// true when it is a lattice isomorphism.
bool canonical_lattice_iso(const DistLattice& l);

}  // namespace rspace
