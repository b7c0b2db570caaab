#include "rspace/field.hpp"

namespace rspace {

namespace {

bool is_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

Field Field::prime(unsigned long p) {
  if (!is_prime(p)) throw domain_error("field characteristic must be prime: " + std::to_string(p));
  return Field(Kind::prime, p);
}

Field Field::parse(const std::string& text) {
  if (text == "Q") return rationals();
  std::string body;
  if (text.rfind("Fp:", 0) == 0)
    body = text.substr(3);
  else if (text.size() > 1 && text[0] == 'F')
    body = text.substr(1);
  else
    throw domain_error("unrecognized field descriptor: " + text);
  try {
    return prime(std::stoul(body));
  } catch (const std::logic_error&) {
    throw domain_error("unrecognized field descriptor: " + text);
  }
}

mpq_class Field::reduce(const mpq_class& value) const {
  mpq_class v = value;
  v.canonicalize();
  if (kind_ == Kind::rationals) return v;
  mpz_class p(static_cast<unsigned long>(p_));
  mpz_class den = v.get_den();
  mpz_class num = v.get_num() % p;
  if (num < 0) num += p;
  if (den != 1) {
    mpz_class dinv;
    mpz_class dmod = den % p;
    if (dmod < 0) dmod += p;
    if (mpz_invert(dinv.get_mpz_t(), dmod.get_mpz_t(), p.get_mpz_t()) == 0)
      throw domain_error("denominator not invertible mod p");
    num = (num * dinv) % p;
  }
  return mpq_class(num);
}

mpq_class Field::inv(const mpq_class& a) const {
  mpq_class v = reduce(a);
  if (v == 0) throw domain_error("division by zero in field");
  if (kind_ == Kind::rationals) return 1 / v;
  mpz_class p(static_cast<unsigned long>(p_));
  mpz_class r;
  mpz_class num = v.get_num();
  mpz_invert(r.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
  return mpq_class(r);
}

std::string Field::to_string() const {
  if (kind_ == Kind::rationals) return "Q";
  return "Fp:" + std::to_string(p_);
}

std::string Field::coeff_to_string(const mpq_class& value) const {
  return value.get_str();
}

}  // namespace rspace
