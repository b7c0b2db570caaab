#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rspace/field.hpp"

namespace rspace {

/// Exponent vector, one entry per ring variable.
using ExpVec = std::vector<uint32_t>;

/// Graded lexicographic order: total degree first, then lex on exponents.
struct GrlexLess {
  bool operator()(const ExpVec& a, const ExpVec& b) const;
};

struct PolyRingData {
  Field field;
  std::vector<std::string> vars;
};

/// Descriptor of a polynomial ring k[x_1,...,x_n]; cheap to copy and compare.
class PolyRing {
public:
  PolyRing(Field field, std::vector<std::string> vars);

  const Field& field() const { return data_->field; }
  const std::vector<std::string>& vars() const { return data_->vars; }
  size_t arity() const { return data_->vars.size(); }
  std::optional<size_t> var_index(const std::string& name) const;

  bool operator==(const PolyRing& other) const;
  bool operator!=(const PolyRing& other) const { return !(*this == other); }

private:
  std::shared_ptr<const PolyRingData> data_;
};

/// Multivariate polynomial with exact coefficients and a canonical term map.
/// No zero coefficients are ever stored.
class Poly {
public:
  explicit Poly(PolyRing ring) : ring_(std::move(ring)) {}

  static Poly zero(const PolyRing& ring) { return Poly(ring); }
  static Poly constant(const PolyRing& ring, const mpq_class& c);
  static Poly variable(const PolyRing& ring, size_t index);
  static Poly monomial(const PolyRing& ring, const ExpVec& exps, const mpq_class& c);

  const PolyRing& ring() const { return ring_; }
  const std::map<ExpVec, mpq_class, GrlexLess>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// The coefficient of the constant term (0 if absent); only meaningful with is_constant().
  mpq_class constant_value() const;
  size_t total_degree() const;

  void add_term(const ExpVec& exps, const mpq_class& c);

  Poly operator+(const Poly& other) const;
  Poly operator-(const Poly& other) const;
  Poly operator-() const;
  Poly operator*(const Poly& other) const;
  Poly scaled(const mpq_class& c) const;
  Poly pow(unsigned e) const;

  bool operator==(const Poly& other) const;
  bool operator!=(const Poly& other) const { return !(*this == other); }

  /// Exact division: returns q with *this == q * divisor, or nullopt.
  std::optional<Poly> exact_div(const Poly& divisor) const;

  /// True when every term has the same weighted degree; reports it.
  bool is_homogeneous(const std::vector<long>& weights, long* degree_out = nullptr) const;
  long weighted_degree_of(const ExpVec& exps, const std::vector<long>& weights) const;
  /// Sum of the terms of the given weighted degree.
  Poly weighted_component(const std::vector<long>& weights, long degree) const;

  /// Deterministic text form, e.g. "3*x1^2*x2 - 1/2*x3"; terms in descending
  /// graded lex order.
  std::string to_string() const;
  /// Parses the exact grammar produced by to_string (no parentheses).
  static Poly parse(const PolyRing& ring, const std::string& text);

private:
  PolyRing ring_;
  std::map<ExpVec, mpq_class, GrlexLess> terms_;
};

}  // namespace rspace
