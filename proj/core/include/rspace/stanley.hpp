#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rspace/linalg.hpp"
#include "rspace/poset.hpp"

namespace rspace {

/// Finite abstract simplicial complex on ground set {1..n}: a nonempty
/// downward-closed set of subsets (the empty face is always carried; the
/// reduced view K* simply drops it).
class SimplicialComplex {
public:
  SimplicialComplex(size_t n, std::vector<uint32_t> faces);
  static SimplicialComplex from_facets(size_t n, const std::vector<uint32_t>& facets);
  static SimplicialComplex full_simplex(size_t n);

  size_t ground_size() const { return n_; }
  const std::vector<uint32_t>& faces() const { return faces_; }
  bool has_face(uint32_t mask) const;
  /// dim K = max |q| - 1; the complex {{}} has dimension -1.
  long dim() const;
  std::vector<uint32_t> facets() const;
  bool is_pure() const;

  std::string to_json() const;
  static SimplicialComplex from_json(const std::string& text);

  bool operator==(const SimplicialComplex& other) const {
    return n_ == other.n_ && faces_ == other.faces_;
  }

private:
  size_t n_;
  std::vector<uint32_t> faces_;  // sorted masks, downward closed, contains 0
};

/// Squarefree monomial ideal given by its minimal (antichain) generators.
struct MonomialIdeal {
  size_t n = 0;
  std::vector<uint32_t> generators;  // sorted masks
  std::string to_string() const;
};

/// Stanley-Reisner ideal: generated by the minimal non-faces of K.
MonomialIdeal sr_ideal(const SimplicialComplex& k);

/// link_K(p) = {q in K* : p and q disjoint, p union q in K}, as a complex.
SimplicialComplex link(const SimplicialComplex& k, uint32_t p);

/// Reduced Betti numbers over F, indices -1 .. dim K (betti[0] is degree -1).
std::vector<size_t> reduced_homology(const SimplicialComplex& k, const Field& f);
/// Boundary matrix from degree-d faces to degree-(d-1) faces, over Z.
std::vector<std::vector<mpz_class>> boundary_matrix(const SimplicialComplex& k, long d);

struct CMCertificate {
  bool cohen_macaulay = true;
  uint32_t witness_face = 0;   // first failing p
  long witness_degree = 0;     // failing homology degree i
  std::string note;            // "all pass" or the failure
};

/// Reisner criterion: vanishing reduced homology of every link below its
/// dimension. The reduced variant checks purity first and runs over the
/// nonempty faces only.
CMCertificate is_cohen_macaulay(const SimplicialComplex& k, const Field& f, bool reduced);

/// Complexes are exactly the nonempty closed (downward-closed) subsets of P_n.
std::vector<size_t> closed_subset_from_complex(const PartsPoset& parts,
                                               const SimplicialComplex& k);
SimplicialComplex complex_from_closed(const PartsPoset& parts, const std::vector<size_t>& closed);

/// Named fixtures.
SimplicialComplex triangle_boundary();
SimplicialComplex two_disjoint_edges();
/// The 6-vertex minimal triangulation of the real projective plane.
SimplicialComplex rp2_6();

}  // namespace rspace
