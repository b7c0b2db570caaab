#pragma once

#include "rspace/projective.hpp"

namespace rspace {

/// All r-element subsets of {1..n} as bitmasks, in lexicographic order of the
/// sorted member lists (the chart order used everywhere below).
std::vector<uint32_t> r_subsets(size_t n, size_t r);
std::string r_subset_name(uint32_t mask);

/// det_delta(phi) = det of the column submatrix indexed by delta.
RingElement det_delta(const RingMatrix& phi, const std::vector<size_t>& delta);
RingElement det_delta(const RingMatrix& phi, uint32_t delta_mask);

/// Hom_k(k^n, k^r) = (*, k[x_11..x_rn]).
RingedSpace build_hom_space(const Field& k, size_t n, size_t r);
/// GL_r = (*, k[x_ij]_det).
RingedSpace build_gl(const Field& k, size_t r);

/// Epim space of type (r, n): nonempty parts of Delta_{r,n}, with the
/// localization of k[x_ij] at the dets named by each point.
RingedSpace build_epim(const Field& k, size_t r, size_t n);

/// Grass(r, n): same poset, pivot-normalized stalks. The stalk at a point
/// with lex-least pivot pi is the polynomial ring in the r x (n-r) entries of
/// the matrix Z with Z_pi = identity, localized at the dets of the other
/// members; restrictions renormalize to the new pivot by adjugate fractions.
RingedSpace build_grass(const Field& k, size_t r, size_t n);

/// The pivot-normalized universal matrix Z over the stalk at point p.
RingMatrix grass_universal_matrix(const RingedSpace& grass, size_t p, size_t r, size_t n);

/// Algebro-topological epimorphism of type (r,n) on a space with a minimum:
/// phi over Gamma(S), one open per delta, each inside the det unit locus.
struct AlgTopEpimorphism {
  RingedSpace space;
  RingMatrix phi;               // r x n over the minimum stalk
  std::vector<OpenSet> cover;   // indexed like r_subsets(n, r)
};
AlgTopEpimorphism make_algtop_epim(RingedSpace space, RingMatrix phi, std::vector<OpenSet> cover);

/// Rank-r algebro-topological quotient of O_S^n.
struct AlgTopRankQuotient {
  FreeRankModule module;                 // E, rank r
  std::vector<FreeModuleSection> phi;    // n sections
  std::vector<OpenSet> cover;            // indexed like r_subsets(n, r)
};
AlgTopRankQuotient make_rank_quotient(FreeRankModule module, std::vector<FreeModuleSection> phi,
                                      std::vector<OpenSet> cover);

/// The matrix of phi at a point (rows = module coordinates, columns = sections).
RingMatrix quotient_matrix_at(const AlgTopRankQuotient& q, size_t p);

/// The universal quotient ([Q, Phi], U_Delta) on Grass(r, n).
AlgTopRankQuotient universal_quotient(const Field& k, size_t r, size_t n);

/// Theorem directions for Grass(r,n).
SpaceMorphism morphism_from_rank_quotient(const RingedSpace& s, const AlgTopRankQuotient& q);
AlgTopRankQuotient rank_quotient_from_morphism(const SpaceMorphism& m, size_t r, size_t n);

/// Equality of classes: same covers, connecting isomorphism solved from the
/// pivot blocks, checked on every section and transition.
bool rank_quotients_equivalent(const AlgTopRankQuotient& a, const AlgTopRankQuotient& b);

/// The Plucker morphism Grass(r,n) -> P^(C(n,r)-1), x_delta |-> det_delta(Z).
SpaceMorphism plucker(const Field& k, size_t r, size_t n);

/// Both directions of the Grass(1,n) = P^(n-1) identification.
std::pair<SpaceMorphism, SpaceMorphism> grass_projective_iso(const Field& k, size_t n);

/// det_delta(g . phi) = det(g) . det_delta(phi) for every delta (exact check).
bool gl_action_check(const RingMatrix& g, const RingMatrix& phi);
/// Action on an algebro-topological epimorphism: same identity plus the
/// unchanged unit loci of the dets.
bool gl_action_check(const RingMatrix& g, const AlgTopEpimorphism& e);

}  // namespace rspace
