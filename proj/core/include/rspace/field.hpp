#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace rspace {

/// Raised on invalid domain input (bad arguments, size guards, broken invariants
/// of user-supplied data). CLI maps it to exit code 1.
class domain_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Coefficient field: the rationals or a prime field F_p.
///
/// Values are carried as mpq_class everywhere; for F_p the canonical
/// representative is the integer in [0, p) with denominator 1.
class Field {
public:
  enum class Kind { rationals, prime };

  static Field rationals() { return Field(Kind::rationals, 0); }
  static Field prime(unsigned long p);

  /// Accepts "Q", "Fp:<p>" and the short form "F<p>".
  static Field parse(const std::string& text);

  Kind kind() const { return kind_; }
  unsigned long characteristic() const { return p_; }
  bool is_rationals() const { return kind_ == Kind::rationals; }

  mpq_class reduce(const mpq_class& value) const;
  mpq_class add(const mpq_class& a, const mpq_class& b) const { return reduce(a + b); }
  mpq_class sub(const mpq_class& a, const mpq_class& b) const { return reduce(a - b); }
  mpq_class mul(const mpq_class& a, const mpq_class& b) const { return reduce(a * b); }
  mpq_class neg(const mpq_class& a) const { return reduce(-a); }
  mpq_class inv(const mpq_class& a) const;
  mpq_class from_long(long v) const { return reduce(mpq_class(v)); }

  std::string to_string() const;
  std::string coeff_to_string(const mpq_class& value) const;

  bool operator==(const Field& other) const {
    return kind_ == other.kind_ && p_ == other.p_;
  }
  bool operator!=(const Field& other) const { return !(*this == other); }

private:
  Field(Kind kind, unsigned long p) : kind_(kind), p_(p) {}

  Kind kind_;
  unsigned long p_;
};

}  // namespace rspace
