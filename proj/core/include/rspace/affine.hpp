#pragma once

#include "rspace/sheaf.hpp"

namespace rspace {

/// Algebro-topological function (f, U): a global section together with an
/// open subset on which every germ of f is a unit (U inside the unit locus).
struct AlgTopFunction {
  GlobalSection function;
  OpenSet open_part;
};

AlgTopFunction make_algtop_function(GlobalSection f, OpenSet u);

using AlgTopTuple = std::vector<AlgTopFunction>;

/// G_m-action on a ringed space, recorded as its equivalent Z-graded
/// structure: one grading per stalk, with degree-preserving restrictions.
struct GmAction {
  RingedSpace space;
  std::vector<Grading> gradings;
};

GmAction make_gm_action(RingedSpace space, std::vector<Grading> gradings);
/// The homothety action: every variable of every stalk has weight 1.
GmAction homothety_action(const RingedSpace& space);

/// A^n_alg = (*, k[x_1..x_n]).
RingedSpace build_affine_alg(const Field& k, size_t n);
/// A^n_top = (P_n, k).
RingedSpace build_affine_top(const Field& k, size_t n);
/// A^n_k: P_n with stalk k[x_1..x_n] localized at the chart variables.
RingedSpace build_affine(const Field& k, size_t n);
/// A^n_k - {0}: the restriction to nonempty parts (n >= 1).
RingedSpace build_punctured(const Field& k, size_t n);
/// G_m = A^1_k - {0} = (*, k[x, x^-1]).
RingedSpace build_gm(const Field& k);
/// P_n with stalk k[x_i : i in delta] at delta, inclusions upward.
RingedSpace build_open_function_space(const Field& k, size_t n);
/// The chain 1 < ... < n with stalk k[x_1..x_i]_(x_1...x_{i-1}) at i.
RingedSpace build_flag_chain(const Field& k, size_t n);

/// The universal tuple (x_1, U_{1}), ..., (x_n, U_{n}) of A^n_k (or of
/// A^n_k - {0} when punctured).
AlgTopTuple affine_universal_object(const RingedSpace& affine_space, size_t n);

/// Representability, forward direction: an n-tuple of algebro-topological
/// functions on S determines the morphism S -> A^n_k with s |-> {i : s in U_i}
/// and x_i |-> f_i.
SpaceMorphism morphism_from_algtop(const RingedSpace& s, const AlgTopTuple& thetas);
/// Inverse direction: pull the universal tuple back along a morphism into A^n_k.
AlgTopTuple algtop_from_morphism(const SpaceMorphism& m, size_t n);

/// Punctured variants: the topological parts must cover S.
SpaceMorphism morphism_from_algtop_punctured(const RingedSpace& s, const AlgTopTuple& thetas);
AlgTopTuple algtop_from_morphism_punctured(const SpaceMorphism& m, size_t n);

/// Quotient by a G_m-action: same poset, stalks replaced by their degree-zero
/// subrings, restrictions induced; returns the equivariant projection.
std::pair<RingedSpace, SpaceMorphism> quotient_by_gm(const GmAction& action);

/// Hom-set partial order on tuples: equal algebraic parts, nested opens.
bool algtop_leq(const AlgTopFunction& a, const AlgTopFunction& b);
bool tuple_leq(const AlgTopTuple& a, const AlgTopTuple& b);
/// Saturation replaces U by the full unit locus U_f; the unique maximal
/// element dominating the input.
AlgTopFunction saturate(const AlgTopFunction& theta);
AlgTopTuple saturate_tuple(const AlgTopTuple& thetas);
/// pi_0: tuples grouped by their dominating maximal element; groups are in
/// first-occurrence order, each listing the input indices it contains.
std::vector<std::vector<size_t>> pi0_classes(const std::vector<AlgTopTuple>& tuples);

}  // namespace rspace
