#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rspace/poly.hpp"

namespace rspace {

class RingElement;

/// Integer weights, one per ambient ring variable.
struct Grading {
  std::vector<long> weights;
  bool operator==(const Grading& other) const { return weights == other.weights; }
};

/// A named generator of the multiplicative set of a localization.
struct Denominator {
  std::string name;
  Poly poly;
};

/// Which localization class a ring belongs to. Unit decision relies on the
/// generators being pairwise non-associate irreducibles: variables in the
/// monomial class, generic minors in the determinant class (irreducibility of
/// generic minors is classical; non-associateness is checked on construction).
enum class LocalizationClass { monomial, determinant };

struct LocalizedRingData;

/// A polynomial ring over Q or F_p, localized at declared generators, and
/// optionally restricted to the degree-zero subring of a grading (the marked
/// form used for projective-space stalks, whose elements are the ambient
/// fractions of weighted degree zero).
class LocalizedRing {
public:
  LocalizedRing(PolyRing poly_ring, std::vector<Denominator> denominators,
                std::optional<Grading> degree0_part = std::nullopt);

  /// The base field as a localized ring (no variables, no denominators).
  static LocalizedRing constants(const Field& field);
  /// k[vars], no denominators.
  static LocalizedRing polynomial(const Field& field, std::vector<std::string> vars);
  /// k[vars] with the named variables inverted (monomial class).
  static LocalizedRing monomial_localization(const Field& field, std::vector<std::string> vars,
                                             const std::vector<std::string>& inverted);

  const PolyRing& poly_ring() const;
  const Field& field() const { return poly_ring().field(); }
  const std::vector<Denominator>& denominators() const;
  const std::optional<Grading>& degree0_part() const;
  bool is_degree0_marked() const { return degree0_part().has_value(); }
  LocalizationClass localization_class() const;
  /// Same ambient ring without the degree-zero restriction.
  LocalizedRing ambient() const;

  bool operator==(const LocalizedRing& other) const;
  bool operator!=(const LocalizedRing& other) const { return !(*this == other); }

  RingElement zero() const;
  RingElement one() const;
  RingElement constant_element(const mpq_class& c) const;
  RingElement var_element(size_t index) const;
  RingElement from_poly(const Poly& p) const;
  /// 1 / denominator(i).
  RingElement denominator_inverse(size_t index) const;

  /// The elements a ring hom out of this ring is determined by: the ambient
  /// variables for plain rings, the fractions x_i/x_j (j inverted) for
  /// degree-zero marked monomial rings.
  std::vector<RingElement> hom_generators() const;

  std::string to_string() const;

private:
  std::shared_ptr<const LocalizedRingData> data_;
};

/// A normalized fraction num / prod denom_i^exp_i. Normal form: whenever
/// exp_i > 0 the generator denom_i does not divide the numerator; zero is
/// stored with all exponents zero. Normal forms are canonical because the
/// ambient polynomial ring is a UFD and the generators are pairwise
/// non-associate irreducibles.
class RingElement {
public:
  RingElement(LocalizedRing owner, Poly numerator, std::vector<unsigned> denom_exponents);

  const LocalizedRing& owner() const { return owner_; }
  const Poly& numerator() const { return num_; }
  const std::vector<unsigned>& denom_exponents() const { return dexp_; }
  bool is_zero() const { return num_.is_zero(); }

  RingElement operator+(const RingElement& other) const;
  RingElement operator-(const RingElement& other) const;
  RingElement operator-() const;
  RingElement operator*(const RingElement& other) const;
  RingElement scaled(const mpq_class& c) const;
  RingElement pow(unsigned e) const;

  bool operator==(const RingElement& other) const;
  bool operator!=(const RingElement& other) const { return !(*this == other); }

  /// Unit test by repeated exact division: e is a unit iff it equals
  /// c * prod denom_i^{a_i} with c a nonzero constant, a_i in Z.
  /// Returns the inverse when true.
  std::optional<RingElement> unit_inverse() const;
  bool is_unit() const { return unit_inverse().has_value(); }

  /// Weighted degree bookkeeping for fractions: degree of a term of the
  /// numerator minus the degrees of the denominators.
  bool is_homogeneous(const Grading& g, long* degree_out = nullptr) const;
  RingElement graded_component(const Grading& g, long degree) const;
  /// All weighted degrees with a nonzero component, ascending.
  std::vector<long> support_degrees(const Grading& g) const;
  /// For degree-zero marked owners: does the element lie in the subring?
  bool in_degree0() const;

  std::string to_string() const;

private:
  void normalize();

  LocalizedRing owner_;
  Poly num_;
  std::vector<unsigned> dexp_;
};

/// Ring homomorphism determined by images of the ambient source variables.
/// Every source denominator must map to a unit of the target; the inverse
/// witnesses are computed at construction and reused when applying the hom to
/// fractions.
class RingHom {
public:
  RingHom(LocalizedRing source, LocalizedRing target, std::vector<RingElement> var_images);

  static RingHom identity(const LocalizedRing& ring);

  const LocalizedRing& source() const { return source_; }
  const LocalizedRing& target() const { return target_; }
  const std::vector<RingElement>& var_images() const { return var_images_; }

  RingElement apply(const RingElement& element) const;
  RingElement apply_poly(const Poly& p) const;

  /// g.compose(f) = g after f  (source of g must equal target of f).
  static RingHom compose(const RingHom& outer, const RingHom& inner);

  /// Agreement on hom_generators of the common source.
  bool agrees_with(const RingHom& other) const;

private:
  LocalizedRing source_;
  LocalizedRing target_;
  std::vector<RingElement> var_images_;
  std::vector<RingElement> denom_inverses_;
};

/// Rectangular matrix of ring elements sharing one owner ring.
class RingMatrix {
public:
  RingMatrix(LocalizedRing ring, size_t rows, size_t cols);

  static RingMatrix identity(const LocalizedRing& ring, size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const LocalizedRing& ring() const { return ring_; }
  RingElement& at(size_t r, size_t c) { return entries_[r * cols_ + c]; }
  const RingElement& at(size_t r, size_t c) const { return entries_[r * cols_ + c]; }

  RingMatrix operator*(const RingMatrix& other) const;
  /// Column submatrix, in the given column order.
  RingMatrix columns(const std::vector<size_t>& idx) const;
  bool operator==(const RingMatrix& other) const;

  /// Exact determinant by cofactor expansion (guarded small sizes).
  RingElement det() const;
  /// Adjugate matrix, so that adjugate() * M = det * I.
  RingMatrix adjugate() const;
  /// inverse(M) * N given 1/det(M); requires det(M) to be a unit.
  static RingMatrix invert_times(const RingMatrix& m, const RingMatrix& n,
                                 const RingElement& det_inverse);

  RingMatrix map(const RingHom& hom) const;

private:
  LocalizedRing ring_;
  size_t rows_, cols_;
  std::vector<RingElement> entries_;
};

/// Tensor product over k of two localizations: polynomial ring on the
/// disjoint union of the variables, denominators concatenated. Clashing
/// variable names must be renamed via the suffix arguments.
LocalizedRing tensor_rings(const LocalizedRing& a, const LocalizedRing& b,
                           const std::string& suffix_a = "", const std::string& suffix_b = "");

/// Finite generating set of the degree-zero subring of a weights-one monomial
/// localization: the fractions x_i/x_j for j inverted (x_j/x_j dropped).
std::vector<RingElement> degree_zero_subring_generators(const LocalizedRing& ring, const Grading& g);

/// A degree-zero marked ring with no generators is just the constants; this
/// normalizes such rings to the bare field so stalk comparisons are exact.
LocalizedRing collapse_trivial_degree0(const LocalizedRing& ring);

}  // namespace rspace
