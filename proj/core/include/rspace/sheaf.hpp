#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rspace/poset.hpp"
#include "rspace/ring.hpp"

namespace rspace {

struct RingedSpaceData;

/// A finite ringed space: a poset with a ring per point and a restriction
/// homomorphism per comparable pair. Construction checks that every
/// restriction is a valid hom between the declared stalks, that r_pp = id and
/// that r_qr o r_pq = r_pr for every chain (exhaustively; the posets here are
/// small).
class RingedSpace {
public:
  using RestrictionProvider = std::function<RingHom(size_t, size_t)>;

  RingedSpace(FinitePoset poset, std::vector<LocalizedRing> stalks,
              const RestrictionProvider& provider, std::string name);

  /// One-point space (*, R).
  static RingedSpace point(const LocalizedRing& stalk, const std::string& name);

  const FinitePoset& poset() const;
  const std::string& name() const;
  size_t size() const { return poset().size(); }
  const LocalizedRing& stalk(size_t p) const;
  const Field& field() const;
  /// Restriction hom for p <= q (identity when p == q).
  const RingHom& restriction(size_t p, size_t q) const;

  bool operator==(const RingedSpace& other) const;
  bool operator!=(const RingedSpace& other) const { return !(*this == other); }

  std::string to_json() const;
  static RingedSpace from_json(const std::string& text);
  std::string to_dot() const;

private:
  std::shared_ptr<const RingedSpaceData> data_;
};

/// Morphism of ringed spaces (f, f#): a continuous map plus, for each source
/// point s, a comorphism stalk_T(f(s)) -> stalk_S(s).
struct SpaceMorphism {
  RingedSpace source;
  RingedSpace target;
  MonotoneMap top;
  std::vector<RingHom> comorphisms;  // indexed by source point

  static SpaceMorphism identity(const RingedSpace& s);
  static SpaceMorphism compose(const SpaceMorphism& outer, const SpaceMorphism& inner);
  bool agrees_with(const SpaceMorphism& other) const;
  bool is_identity() const;
};

struct MorphismCheck {
  bool ok = true;
  std::string reason;
};

/// Full validity check: structural typing, monotonicity, unit witnesses, and
/// every commuting square restriction-vs-comorphism. Reports the first
/// violated constraint.
MorphismCheck check_morphism(const SpaceMorphism& m);
void require_valid(const SpaceMorphism& m);

/// A global section as a compatible family of germs, one per point.
class GlobalSection {
public:
  GlobalSection(RingedSpace space, std::vector<RingElement> germs);
  /// Constant family from the germ at the minimum (space must have one).
  static GlobalSection from_minimum(const RingedSpace& space, const RingElement& value);

  const RingedSpace& space() const { return space_; }
  const RingElement& germ(size_t p) const { return germs_.at(p); }
  const std::vector<RingElement>& germs() const { return germs_; }

  GlobalSection operator+(const GlobalSection& other) const;
  GlobalSection operator*(const GlobalSection& other) const;
  bool operator==(const GlobalSection& other) const;

  /// Pullback along a morphism into this section's space.
  GlobalSection pullback(const SpaceMorphism& m) const;

private:
  RingedSpace space_;
  std::vector<RingElement> germs_;
};

/// The open subset of points where the germ of f is a unit; always an up-set.
OpenSet unit_locus(const GlobalSection& f);

/// Limit presentation of Gamma(U, O_S): a family over the minimal points of
/// U, compatible at all common upper points. The presentation materializes to
/// a ring when U has a minimum, or when the space restricted to U is
/// "inclusion-structured" (shared ambient polynomial ring, identity
/// restrictions) and connected, in which case Gamma is the localization at
/// the denominators common to all minimal stalks.
class SectionSpace {
public:
  SectionSpace(RingedSpace space, OpenSet domain);

  const std::vector<size_t>& min_points() const { return min_points_; }
  const OpenSet& domain() const { return domain_; }
  /// family[i] is the value at min_points()[i].
  bool is_compatible(const std::vector<RingElement>& family) const;
  const std::optional<LocalizedRing>& as_ring() const { return ring_; }
  /// Gamma(U) -> stalk(p) for p in U; only when as_ring() exists.
  RingHom germ_hom(size_t p) const;

private:
  RingedSpace space_;
  OpenSet domain_;
  std::vector<size_t> min_points_;
  std::optional<LocalizedRing> ring_;
  bool inclusion_structured_ = false;
};

SectionSpace sections(const RingedSpace& space, const OpenSet& domain);

/// Finite ringed space attached to a covering: the topological quotient with
/// the pushforward sheaf, stalk at [s] = Gamma(U^s); returns the projection.
std::pair<RingedSpace, SpaceMorphism> covering_quotient(const RingedSpace& s,
                                                        const std::vector<OpenSet>& cover);

/// Fiber product of f: S -> T and g: S' -> T. Supported when either leg is an
/// identity, or every stalk of T is the constants ring (tensor over k).
struct FiberProduct {
  RingedSpace space;
  SpaceMorphism to_left;   // projection to source of f
  SpaceMorphism to_right;  // projection to source of g
};
FiberProduct fiber_product(const SpaceMorphism& f, const SpaceMorphism& g);

/// The pairing Z -> S x_T S' induced by h1: Z -> S, h2: Z -> S' with
/// f o h1 = g o h2 (checked); used to exercise the universal property.
SpaceMorphism fiber_pairing(const FiberProduct& fp, const SpaceMorphism& h1,
                            const SpaceMorphism& h2);

/// Invertible module in cocycle form: a free rank-1 stalk per point and a
/// unit transition per comparable pair, with coefficient transport
/// v_q = u_pq * restr(v_p).
class InvertibleModule {
public:
  InvertibleModule(RingedSpace base, std::vector<std::string> basis_labels,
                   std::map<std::pair<size_t, size_t>, RingElement> transitions);

  static InvertibleModule trivial(const RingedSpace& base);

  const RingedSpace& base() const { return base_; }
  const std::string& basis_label(size_t p) const { return basis_labels_.at(p); }
  const RingElement& transition(size_t p, size_t q) const;

  /// O(d) (x) O(d') style tensor: transitions multiply.
  InvertibleModule tensor(const InvertibleModule& other) const;
  bool operator==(const InvertibleModule& other) const;

private:
  RingedSpace base_;
  std::vector<std::string> basis_labels_;
  std::map<std::pair<size_t, size_t>, RingElement> transitions_;
};

/// Global section of an invertible module: coefficient per point against the
/// local basis, compatible under the transitions.
class ModuleSection {
public:
  ModuleSection(const InvertibleModule& module, std::vector<RingElement> coefficients);

  const RingElement& coefficient(size_t p) const { return coeffs_.at(p); }
  const std::vector<RingElement>& coefficients() const { return coeffs_; }
  /// Points where the coefficient is a unit (the section trivializes); an up-set.
  OpenSet unit_locus(const InvertibleModule& module) const;
  bool operator==(const ModuleSection& other) const { return coeffs_ == other.coeffs_; }

private:
  std::vector<RingElement> coeffs_;
};

/// (e, U): a section plus an open on which it is declared (and checked)
/// invertible.
struct AlgTopSection {
  ModuleSection section;
  OpenSet open_part;
};

InvertibleModule pullback_invertible(const SpaceMorphism& m, const InvertibleModule& l);
ModuleSection pullback_section(const SpaceMorphism& m, const InvertibleModule& l,
                               const ModuleSection& s, const InvertibleModule& pulled);
AlgTopSection pullback_algtop_section(const SpaceMorphism& m, const InvertibleModule& l,
                                      const AlgTopSection& s, const InvertibleModule& pulled);

/// Rank-r locally free module in cocycle form: transition matrices with unit
/// determinant, transport v_q = T_pq * restr(v_p).
class FreeRankModule {
public:
  FreeRankModule(RingedSpace base, size_t rank,
                 std::map<std::pair<size_t, size_t>, RingMatrix> transitions);

  static FreeRankModule trivial(const RingedSpace& base, size_t rank);

  const RingedSpace& base() const { return base_; }
  size_t rank() const { return rank_; }
  const RingMatrix& transition(size_t p, size_t q) const;

private:
  RingedSpace base_;
  size_t rank_;
  std::map<std::pair<size_t, size_t>, RingMatrix> transitions_;
};

/// Global section of a rank-r module: coefficient column per point.
class FreeModuleSection {
public:
  FreeModuleSection(const FreeRankModule& module, std::vector<std::vector<RingElement>> coeffs);
  const std::vector<RingElement>& coefficients(size_t p) const { return coeffs_.at(p); }
  bool operator==(const FreeModuleSection& other) const { return coeffs_ == other.coeffs_; }

private:
  std::vector<std::vector<RingElement>> coeffs_;
};

FreeRankModule pullback_free(const SpaceMorphism& m, const FreeRankModule& e);
FreeModuleSection pullback_free_section(const SpaceMorphism& m, const FreeRankModule& e,
                                        const FreeModuleSection& s, const FreeRankModule& pulled);

/// Strict structural equality: same poset (labels and order), equal stalks,
/// agreeing restrictions. This is the label-preserving notion used for
/// "stalk-by-stalk" comparisons.
bool spaces_match(const RingedSpace& a, const RingedSpace& b);

/// f and g are mutually inverse isomorphisms (both composites agree with the
/// identity morphism).
bool mutually_inverse(const SpaceMorphism& f, const SpaceMorphism& g);

}  // namespace rspace
