#pragma once

#include "rspace/affine.hpp"

namespace rspace {

/// Algebro-topological invertible quotient of O_S^{n+1}: an invertible module
/// with n+1 algebro-topological sections whose opens cover S.
struct AlgTopInvQuotient {
  InvertibleModule module;
  std::vector<AlgTopSection> sections;
};

AlgTopInvQuotient make_inv_quotient(InvertibleModule module, std::vector<AlgTopSection> sections);

/// P^n_k: nonempty parts of {1..n+1} with the degree-zero subrings of the
/// punctured affine charts as stalks.
RingedSpace build_projective(const Field& k, size_t n);

/// O(d) on P^n_k, trivialized at delta by x_min(delta)^d.
InvertibleModule twisting_module(const Field& k, size_t n, long d);

/// The universal triple (O(1), (x_1..x_{n+1}), {U_{1}..U_{n+1}}).
AlgTopInvQuotient projective_universal_object(const Field& k, size_t n);

/// Basis of Gamma(P^n, O(d)): the degree-d monomial families for d >= 0,
/// empty for d < 0. Each returned family is a checked module section.
std::vector<ModuleSection> twisting_global_basis(const Field& k, size_t n, long d);
/// Monomial labels matching twisting_global_basis order.
std::vector<std::string> twisting_global_basis_labels(const Field& k, size_t n, long d);

/// Tries to extend a value at one minimal chart point to a full compatible
/// family of O(d); the decision is exact (denominator-support membership).
std::optional<ModuleSection> extend_twist_family(const RingedSpace& pn,
                                                 const InvertibleModule& od, long d,
                                                 size_t anchor_point, const RingElement& value);

/// Theorem direction 1: a quotient on S determines the morphism S -> P^n_k.
SpaceMorphism morphism_from_quotient(const RingedSpace& s, const AlgTopInvQuotient& q);
/// Theorem direction 2: pull the universal triple back along S -> P^n_k.
AlgTopInvQuotient quotient_from_morphism(const SpaceMorphism& m, size_t n);

/// Equality of equivalence classes: same topological parts and a connecting
/// isomorphism (a single unit per point, solved directly) matching sections.
bool inv_quotients_equivalent(const AlgTopInvQuotient& a, const AlgTopInvQuotient& b);

/// Hom-set partial order and saturation, lifted to quotients.
bool inv_quotient_leq(const AlgTopInvQuotient& a, const AlgTopInvQuotient& b);
AlgTopInvQuotient saturate_quotient(const AlgTopInvQuotient& q);

}  // namespace rspace
