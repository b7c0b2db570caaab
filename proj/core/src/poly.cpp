#include "rspace/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace rspace {

bool GrlexLess::operator()(const ExpVec& a, const ExpVec& b) const {
  uint64_t da = std::accumulate(a.begin(), a.end(), uint64_t{0});
  uint64_t db = std::accumulate(b.begin(), b.end(), uint64_t{0});
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

PolyRing::PolyRing(Field field, std::vector<std::string> vars) {
  for (size_t i = 0; i < vars.size(); ++i)
    for (size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j]) throw domain_error("duplicate variable name: " + vars[i]);
  data_ = std::make_shared<const PolyRingData>(PolyRingData{field, std::move(vars)});
}

std::optional<size_t> PolyRing::var_index(const std::string& name) const {
  for (size_t i = 0; i < data_->vars.size(); ++i)
    if (data_->vars[i] == name) return i;
  return std::nullopt;
}

bool PolyRing::operator==(const PolyRing& other) const {
  if (data_ == other.data_) return true;
  return data_->field == other.data_->field && data_->vars == other.data_->vars;
}

Poly Poly::constant(const PolyRing& ring, const mpq_class& c) {
  Poly p(ring);
  p.add_term(ExpVec(ring.arity(), 0), c);
  return p;
}

Poly Poly::variable(const PolyRing& ring, size_t index) {
  if (index >= ring.arity()) throw domain_error("variable index out of range");
  ExpVec e(ring.arity(), 0);
  e[index] = 1;
  return monomial(ring, e, 1);
}

Poly Poly::monomial(const PolyRing& ring, const ExpVec& exps, const mpq_class& c) {
  Poly p(ring);
  p.add_term(exps, c);
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](uint32_t v) { return v == 0; });
}

mpq_class Poly::constant_value() const {
  if (terms_.empty()) return 0;
  return terms_.begin()->second;
}

size_t Poly::total_degree() const {
  size_t d = 0;
  for (const auto& [e, c] : terms_)
    d = std::max<size_t>(d, std::accumulate(e.begin(), e.end(), size_t{0}));
  return d;
}

void Poly::add_term(const ExpVec& exps, const mpq_class& c) {
  if (exps.size() != ring_.arity()) throw domain_error("exponent arity mismatch");
  mpq_class v = ring_.field().reduce(c);
  if (v == 0) return;
  auto it = terms_.find(exps);
  if (it == terms_.end()) {
    terms_.emplace(exps, v);
  } else {
    it->second = ring_.field().add(it->second, v);
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator+(const Poly& other) const {
  if (ring_ != other.ring_) throw domain_error("polynomial ring mismatch");
  Poly r = *this;
  for (const auto& [e, c] : other.terms_) r.add_term(e, c);
  return r;
}

Poly Poly::operator-(const Poly& other) const { return *this + (-other); }

Poly Poly::operator-() const {
  Poly r(ring_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, ring_.field().neg(c));
  return r;
}

Poly Poly::operator*(const Poly& other) const {
  if (ring_ != other.ring_) throw domain_error("polynomial ring mismatch");
  Poly r(ring_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : other.terms_) {
      ExpVec e(ea.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ring_.field().mul(ca, cb));
    }
  }
  return r;
}

Poly Poly::scaled(const mpq_class& c) const {
  Poly r(ring_);
  mpq_class v = ring_.field().reduce(c);
  if (v == 0) return r;
  for (const auto& [e, coeff] : terms_) {
    mpq_class prod = ring_.field().mul(coeff, v);
    if (prod != 0) r.terms_.emplace(e, prod);
  }
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly acc = Poly::constant(ring_, 1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1u) acc = acc * base;
    base = base * base;
    e >>= 1u;
  }
  return acc;
}

bool Poly::operator==(const Poly& other) const {
  return ring_ == other.ring_ && terms_ == other.terms_;
}

std::optional<Poly> Poly::exact_div(const Poly& divisor) const {
  if (ring_ != divisor.ring_) throw domain_error("polynomial ring mismatch");
  if (divisor.is_zero()) throw domain_error("division by zero polynomial");
  Poly rem = *this;
  Poly quot(ring_);
  const auto& dlead = *divisor.terms_.rbegin();
  while (!rem.is_zero()) {
    const auto& rlead = *rem.terms_.rbegin();
    ExpVec qe(rlead.first.size());
    for (size_t i = 0; i < qe.size(); ++i) {
      if (rlead.first[i] < dlead.first[i]) return std::nullopt;
      qe[i] = rlead.first[i] - dlead.first[i];
    }
    mpq_class qc = ring_.field().mul(rlead.second, ring_.field().inv(dlead.second));
    Poly qterm = Poly::monomial(ring_, qe, qc);
    quot = quot + qterm;
    rem = rem - qterm * divisor;
  }
  return quot;
}

long Poly::weighted_degree_of(const ExpVec& exps, const std::vector<long>& weights) const {
  long d = 0;
  for (size_t i = 0; i < exps.size(); ++i) d += static_cast<long>(exps[i]) * weights[i];
  return d;
}

bool Poly::is_homogeneous(const std::vector<long>& weights, long* degree_out) const {
  if (terms_.empty()) {
    if (degree_out) *degree_out = 0;
    return true;
  }
  long d = weighted_degree_of(terms_.begin()->first, weights);
  for (const auto& [e, c] : terms_)
    if (weighted_degree_of(e, weights) != d) return false;
  if (degree_out) *degree_out = d;
  return true;
}

Poly Poly::weighted_component(const std::vector<long>& weights, long degree) const {
  Poly r(ring_);
  for (const auto& [e, c] : terms_)
    if (weighted_degree_of(e, weights) == degree) r.terms_.emplace(e, c);
  return r;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    mpq_class c = it->second;
    bool negative = c < 0;
    if (first) {
      if (negative) out << "-";
      first = false;
    } else {
      out << (negative ? " - " : " + ");
    }
    mpq_class magnitude = negative ? mpq_class(-c) : c;
    bool any_var = false;
    std::ostringstream vars;
    for (size_t i = 0; i < it->first.size(); ++i) {
      if (it->first[i] == 0) continue;
      if (any_var) vars << "*";
      vars << ring_.vars()[i];
      if (it->first[i] > 1) vars << "^" << it->first[i];
      any_var = true;
    }
    if (!any_var) {
      out << magnitude.get_str();
    } else if (magnitude == 1) {
      out << vars.str();
    } else {
      out << magnitude.get_str() << "*" << vars.str();
    }
  }
  return out.str();
}

namespace {

// Parses one factor: a rational literal or var[^exp].
void parse_factor(const PolyRing& ring, const std::string& tok, mpq_class& coeff, ExpVec& exps) {
  if (tok.empty()) throw domain_error("empty factor in polynomial text");
  if (std::isdigit(static_cast<unsigned char>(tok[0]))) {
    coeff *= mpq_class(tok);
    return;
  }
  std::string name = tok;
  uint32_t e = 1;
  if (auto caret = tok.find('^'); caret != std::string::npos) {
    name = tok.substr(0, caret);
    e = static_cast<uint32_t>(std::stoul(tok.substr(caret + 1)));
  }
  auto idx = ring.var_index(name);
  if (!idx) throw domain_error("unknown variable in polynomial text: " + name);
  exps[*idx] += e;
}

}  // namespace

Poly Poly::parse(const PolyRing& ring, const std::string& text) {
  Poly result(ring);
  size_t pos = 0;
  int sign = 1;
  auto skip_ws = [&] { while (pos < text.size() && text[pos] == ' ') ++pos; };
  skip_ws();
  if (pos < text.size() && text[pos] == '-') {
    sign = -1;
    ++pos;
  }
  while (pos < text.size()) {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && text[pos] != ' ') ++pos;
    std::string term = text.substr(start, pos - start);
    mpq_class coeff = sign;
    ExpVec exps(ring.arity(), 0);
    size_t tpos = 0;
    while (tpos < term.size()) {
      size_t next = term.find('*', tpos);
      std::string tok = term.substr(tpos, next == std::string::npos ? std::string::npos : next - tpos);
      parse_factor(ring, tok, coeff, exps);
      if (next == std::string::npos) break;
      tpos = next + 1;
    }
    result.add_term(exps, coeff);
    skip_ws();
    if (pos >= text.size()) break;
    if (text[pos] == '+') sign = 1;
    else if (text[pos] == '-') sign = -1;
    else throw domain_error("malformed polynomial text near: " + text.substr(pos));
    ++pos;
    skip_ws();
  }
  return result;
}

}  // namespace rspace
