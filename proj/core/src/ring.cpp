#include "rspace/ring.hpp"

#include <algorithm>
#include <sstream>

namespace rspace {

struct LocalizedRingData {
  PolyRing poly_ring;
  std::vector<Denominator> denominators;
  std::optional<Grading> degree0;
  LocalizationClass cls;
};

namespace {

bool is_plain_variable(const Poly& p) {
  if (p.terms().size() != 1) return false;
  const auto& [e, c] = *p.terms().begin();
  if (c != 1) return false;
  unsigned total = 0, ones = 0;
  for (uint32_t v : e) {
    total += v;
    if (v == 1) ++ones;
  }
  return total == 1 && ones == 1;
}

}  // namespace

LocalizedRing::LocalizedRing(PolyRing poly_ring, std::vector<Denominator> denominators,
                             std::optional<Grading> degree0_part) {
  for (const auto& d : denominators) {
    if (d.poly.ring() != poly_ring) throw domain_error("denominator in wrong polynomial ring");
    if (d.poly.is_zero()) throw domain_error("zero denominator: " + d.name);
    if (d.poly.is_constant()) throw domain_error("constant denominator: " + d.name);
  }
  for (size_t i = 0; i < denominators.size(); ++i) {
    for (size_t j = 0; j < denominators.size(); ++j) {
      if (i == j) continue;
      if (denominators[i].name == denominators[j].name)
        throw domain_error("duplicate denominator name: " + denominators[i].name);
      if (auto q = denominators[i].poly.exact_div(denominators[j].poly); q && q->is_constant())
        throw domain_error("associate denominators: " + denominators[i].name + ", " +
                           denominators[j].name);
    }
  }
  LocalizationClass cls = LocalizationClass::monomial;
  for (const auto& d : denominators)
    if (!is_plain_variable(d.poly)) cls = LocalizationClass::determinant;
  if (degree0_part) {
    if (degree0_part->weights.size() != poly_ring.arity())
      throw domain_error("grading arity mismatch");
    // degree-zero subrings are only formed for the homothety gradings the
    // quotient constructions use; other weights have no generator calculus here
    if (cls != LocalizationClass::monomial)
      throw domain_error("degree-zero subrings need a monomial localization");
    for (long w : degree0_part->weights)
      if (w != 1) throw domain_error("degree-zero subrings need all weights 1");
    for (const auto& d : denominators)
      if (!d.poly.is_homogeneous(degree0_part->weights))
        throw domain_error("non-homogeneous denominator under grading: " + d.name);
  }
  data_ = std::make_shared<const LocalizedRingData>(LocalizedRingData{
      std::move(poly_ring), std::move(denominators), std::move(degree0_part), cls});
}

LocalizedRing LocalizedRing::constants(const Field& field) {
  return LocalizedRing(PolyRing(field, {}), {});
}

LocalizedRing LocalizedRing::polynomial(const Field& field, std::vector<std::string> vars) {
  return LocalizedRing(PolyRing(field, std::move(vars)), {});
}

LocalizedRing LocalizedRing::monomial_localization(const Field& field,
                                                   std::vector<std::string> vars,
                                                   const std::vector<std::string>& inverted) {
  PolyRing pr(field, std::move(vars));
  std::vector<Denominator> dens;
  for (const auto& name : inverted) {
    auto idx = pr.var_index(name);
    if (!idx) throw domain_error("inverted variable not in ring: " + name);
    dens.push_back({name, Poly::variable(pr, *idx)});
  }
  return LocalizedRing(pr, std::move(dens));
}

const PolyRing& LocalizedRing::poly_ring() const { return data_->poly_ring; }
const std::vector<Denominator>& LocalizedRing::denominators() const { return data_->denominators; }
const std::optional<Grading>& LocalizedRing::degree0_part() const { return data_->degree0; }
LocalizationClass LocalizedRing::localization_class() const { return data_->cls; }

LocalizedRing LocalizedRing::ambient() const {
  if (!is_degree0_marked()) return *this;
  return LocalizedRing(data_->poly_ring, data_->denominators);
}

bool LocalizedRing::operator==(const LocalizedRing& other) const {
  if (data_ == other.data_) return true;
  if (data_->poly_ring != other.data_->poly_ring) return false;
  if (data_->degree0 != other.data_->degree0) return false;
  if (data_->denominators.size() != other.data_->denominators.size()) return false;
  for (size_t i = 0; i < data_->denominators.size(); ++i) {
    if (data_->denominators[i].name != other.data_->denominators[i].name) return false;
    if (data_->denominators[i].poly != other.data_->denominators[i].poly) return false;
  }
  return true;
}

RingElement LocalizedRing::zero() const {
  return RingElement(*this, Poly::zero(poly_ring()), std::vector<unsigned>(denominators().size(), 0));
}

RingElement LocalizedRing::one() const { return constant_element(1); }

RingElement LocalizedRing::constant_element(const mpq_class& c) const {
  return RingElement(*this, Poly::constant(poly_ring(), c),
                     std::vector<unsigned>(denominators().size(), 0));
}

RingElement LocalizedRing::var_element(size_t index) const {
  return from_poly(Poly::variable(poly_ring(), index));
}

RingElement LocalizedRing::from_poly(const Poly& p) const {
  if (p.ring() != poly_ring()) throw domain_error("polynomial from wrong ring");
  return RingElement(*this, p, std::vector<unsigned>(denominators().size(), 0));
}

RingElement LocalizedRing::denominator_inverse(size_t index) const {
  if (index >= denominators().size()) throw domain_error("denominator index out of range");
  std::vector<unsigned> dexp(denominators().size(), 0);
  dexp[index] = 1;
  return RingElement(*this, Poly::constant(poly_ring(), 1), dexp);
}

std::vector<RingElement> LocalizedRing::hom_generators() const {
  std::vector<RingElement> gens;
  if (!is_degree0_marked()) {
    for (size_t i = 0; i < poly_ring().arity(); ++i) gens.push_back(var_element(i));
    return gens;
  }
  if (localization_class() != LocalizationClass::monomial)
    throw domain_error("degree-zero subrings are only supported for monomial localizations");
  for (size_t j = 0; j < denominators().size(); ++j) {
    size_t jvar = *poly_ring().var_index(denominators()[j].name);
    for (size_t i = 0; i < poly_ring().arity(); ++i) {
      if (i == jvar) continue;
      gens.push_back(var_element(i) * denominator_inverse(j));
    }
  }
  return gens;
}

std::string LocalizedRing::to_string() const {
  std::ostringstream out;
  out << field().to_string() << "[";
  for (size_t i = 0; i < poly_ring().arity(); ++i) {
    if (i) out << ",";
    out << poly_ring().vars()[i];
  }
  out << "]";
  if (!denominators().empty()) {
    out << "_(";
    for (size_t i = 0; i < denominators().size(); ++i) {
      if (i) out << ",";
      out << denominators()[i].name;
    }
    out << ")";
  }
  if (is_degree0_marked()) out << "_0";
  return out.str();
}

RingElement::RingElement(LocalizedRing owner, Poly numerator, std::vector<unsigned> denom_exponents)
    : owner_(std::move(owner)), num_(std::move(numerator)), dexp_(std::move(denom_exponents)) {
  if (num_.ring() != owner_.poly_ring()) throw domain_error("numerator from wrong ring");
  if (dexp_.size() != owner_.denominators().size())
    throw domain_error("denominator exponent arity mismatch");
  normalize();
}

void RingElement::normalize() {
  if (num_.is_zero()) {
    std::fill(dexp_.begin(), dexp_.end(), 0);
    return;
  }
  for (size_t i = 0; i < dexp_.size(); ++i) {
    while (dexp_[i] > 0) {
      auto q = num_.exact_div(owner_.denominators()[i].poly);
      if (!q) break;
      num_ = std::move(*q);
      --dexp_[i];
      if (num_.is_zero()) {
        std::fill(dexp_.begin(), dexp_.end(), 0);
        return;
      }
    }
  }
}

RingElement RingElement::operator+(const RingElement& other) const {
  if (owner_ != other.owner_) throw domain_error("ring element owner mismatch");
  std::vector<unsigned> common(dexp_.size());
  Poly a = num_, b = other.num_;
  for (size_t i = 0; i < common.size(); ++i) {
    common[i] = std::max(dexp_[i], other.dexp_[i]);
    if (common[i] > dexp_[i]) a = a * owner_.denominators()[i].poly.pow(common[i] - dexp_[i]);
    if (common[i] > other.dexp_[i])
      b = b * owner_.denominators()[i].poly.pow(common[i] - other.dexp_[i]);
  }
  return RingElement(owner_, a + b, common);
}

RingElement RingElement::operator-(const RingElement& other) const { return *this + (-other); }

RingElement RingElement::operator-() const { return RingElement(owner_, -num_, dexp_); }

RingElement RingElement::operator*(const RingElement& other) const {
  if (owner_ != other.owner_) throw domain_error("ring element owner mismatch");
  std::vector<unsigned> sum(dexp_.size());
  for (size_t i = 0; i < sum.size(); ++i) sum[i] = dexp_[i] + other.dexp_[i];
  return RingElement(owner_, num_ * other.num_, sum);
}

RingElement RingElement::scaled(const mpq_class& c) const {
  return RingElement(owner_, num_.scaled(c), dexp_);
}

RingElement RingElement::pow(unsigned e) const {
  RingElement acc = owner_.one();
  RingElement base = *this;
  while (e > 0) {
    if (e & 1u) acc = acc * base;
    base = base * base;
    e >>= 1u;
  }
  return acc;
}

bool RingElement::operator==(const RingElement& other) const {
  return owner_ == other.owner_ && num_ == other.num_ && dexp_ == other.dexp_;
}

std::optional<RingElement> RingElement::unit_inverse() const {
  if (num_.is_zero()) return std::nullopt;
  Poly core = num_;
  std::vector<unsigned> stripped(dexp_.size(), 0);
  for (size_t i = 0; i < dexp_.size(); ++i) {
    while (true) {
      auto q = core.exact_div(owner_.denominators()[i].poly);
      if (!q) break;
      core = std::move(*q);
      ++stripped[i];
    }
  }
  if (!core.is_constant()) return std::nullopt;
  mpq_class c = core.constant_value();
  Poly inv_num = Poly::constant(owner_.poly_ring(), owner_.field().inv(c));
  std::vector<unsigned> inv_dexp(dexp_.size(), 0);
  for (size_t i = 0; i < dexp_.size(); ++i) {
    if (dexp_[i] > stripped[i])
      inv_num = inv_num * owner_.denominators()[i].poly.pow(dexp_[i] - stripped[i]);
    else if (stripped[i] > dexp_[i])
      inv_dexp[i] = stripped[i] - dexp_[i];
  }
  return RingElement(owner_, inv_num, inv_dexp);
}

namespace {

// weighted degree of each denominator; requires homogeneity
std::vector<long> denominator_degrees(const LocalizedRing& ring, const Grading& g) {
  if (g.weights.size() != ring.poly_ring().arity()) throw domain_error("grading arity mismatch");
  std::vector<long> degs;
  for (const auto& d : ring.denominators()) {
    long deg = 0;
    if (!d.poly.is_homogeneous(g.weights, &deg))
      throw domain_error("non-homogeneous denominator under grading: " + d.name);
    degs.push_back(deg);
  }
  return degs;
}

}  // namespace

bool RingElement::is_homogeneous(const Grading& g, long* degree_out) const {
  auto ddegs = denominator_degrees(owner_, g);
  long shift = 0;
  for (size_t i = 0; i < dexp_.size(); ++i) shift += static_cast<long>(dexp_[i]) * ddegs[i];
  long ndeg = 0;
  if (!num_.is_homogeneous(g.weights, &ndeg)) return false;
  if (degree_out) *degree_out = num_.is_zero() ? 0 : ndeg - shift;
  return true;
}

RingElement RingElement::graded_component(const Grading& g, long degree) const {
  auto ddegs = denominator_degrees(owner_, g);
  long shift = 0;
  for (size_t i = 0; i < dexp_.size(); ++i) shift += static_cast<long>(dexp_[i]) * ddegs[i];
  return RingElement(owner_, num_.weighted_component(g.weights, degree + shift), dexp_);
}

std::vector<long> RingElement::support_degrees(const Grading& g) const {
  auto ddegs = denominator_degrees(owner_, g);
  long shift = 0;
  for (size_t i = 0; i < dexp_.size(); ++i) shift += static_cast<long>(dexp_[i]) * ddegs[i];
  std::vector<long> degs;
  for (const auto& [e, c] : num_.terms()) {
    long d = num_.weighted_degree_of(e, g.weights) - shift;
    if (std::find(degs.begin(), degs.end(), d) == degs.end()) degs.push_back(d);
  }
  std::sort(degs.begin(), degs.end());
  return degs;
}

bool RingElement::in_degree0() const {
  if (!owner_.is_degree0_marked()) return true;
  if (is_zero()) return true;
  long d = 0;
  return is_homogeneous(*owner_.degree0_part(), &d) && d == 0;
}

std::string RingElement::to_string() const {
  bool trivial = std::all_of(dexp_.begin(), dexp_.end(), [](unsigned e) { return e == 0; });
  if (trivial) return num_.to_string();
  std::ostringstream out;
  out << "(" << num_.to_string() << ")/(";
  bool first = true;
  for (size_t i = 0; i < dexp_.size(); ++i) {
    if (dexp_[i] == 0) continue;
    if (!first) out << "*";
    out << owner_.denominators()[i].name;
    if (dexp_[i] > 1) out << "^" << dexp_[i];
    first = false;
  }
  out << ")";
  return out.str();
}

RingHom::RingHom(LocalizedRing source, LocalizedRing target, std::vector<RingElement> var_images)
    : source_(std::move(source)), target_(std::move(target)), var_images_(std::move(var_images)) {
  if (var_images_.size() != source_.poly_ring().arity())
    throw domain_error("hom image count does not match source arity");
  for (const auto& image : var_images_)
    if (image.owner() != target_) throw domain_error("hom image in wrong target ring");
  for (const auto& d : source_.denominators()) {
    RingElement image = apply_poly(d.poly);
    auto inv = image.unit_inverse();
    if (!inv)
      throw domain_error("denominator " + d.name + " does not map to a unit of " +
                         target_.to_string());
    denom_inverses_.push_back(std::move(*inv));
  }
}

RingHom RingHom::identity(const LocalizedRing& ring) {
  std::vector<RingElement> images;
  for (size_t i = 0; i < ring.poly_ring().arity(); ++i) images.push_back(ring.var_element(i));
  return RingHom(ring, ring, std::move(images));
}

RingElement RingHom::apply_poly(const Poly& p) const {
  if (p.ring() != source_.poly_ring()) throw domain_error("polynomial from wrong source ring");
  // power cache per variable
  std::vector<std::vector<RingElement>> powers(var_images_.size());
  auto power = [&](size_t var, uint32_t e) -> const RingElement& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(target_.one());
    while (cache.size() <= e) cache.push_back(cache.back() * var_images_[var]);
    return cache[e];
  };
  RingElement acc = target_.zero();
  for (const auto& [exps, coeff] : p.terms()) {
    RingElement term = target_.constant_element(coeff);
    for (size_t i = 0; i < exps.size(); ++i)
      if (exps[i] > 0) term = term * power(i, exps[i]);
    acc = acc + term;
  }
  return acc;
}

RingElement RingHom::apply(const RingElement& element) const {
  if (element.owner() != source_) throw domain_error("element from wrong source ring");
  RingElement result = apply_poly(element.numerator());
  for (size_t i = 0; i < element.denom_exponents().size(); ++i)
    if (element.denom_exponents()[i] > 0)
      result = result * denom_inverses_[i].pow(element.denom_exponents()[i]);
  return result;
}

RingHom RingHom::compose(const RingHom& outer, const RingHom& inner) {
  if (inner.target_ != outer.source_) throw domain_error("hom composition type mismatch");
  std::vector<RingElement> images;
  for (const auto& image : inner.var_images_) images.push_back(outer.apply(image));
  return RingHom(inner.source_, outer.target_, std::move(images));
}

bool RingHom::agrees_with(const RingHom& other) const {
  if (source_ != other.source_ || target_ != other.target_) return false;
  for (const auto& g : source_.hom_generators())
    if (apply(g) != other.apply(g)) return false;
  return true;
}

RingMatrix::RingMatrix(LocalizedRing ring, size_t rows, size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols) {
  entries_.assign(rows * cols, ring_.zero());
}

RingMatrix RingMatrix::identity(const LocalizedRing& ring, size_t n) {
  RingMatrix m(ring, n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = ring.one();
  return m;
}

RingMatrix RingMatrix::operator*(const RingMatrix& other) const {
  if (cols_ != other.rows_) throw domain_error("matrix shape mismatch");
  RingMatrix r(ring_, rows_, other.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < other.cols_; ++j) {
      RingElement acc = ring_.zero();
      for (size_t k = 0; k < cols_; ++k) acc = acc + at(i, k) * other.at(k, j);
      r.at(i, j) = acc;
    }
  return r;
}

RingMatrix RingMatrix::columns(const std::vector<size_t>& idx) const {
  RingMatrix r(ring_, rows_, idx.size());
  for (size_t j = 0; j < idx.size(); ++j) {
    if (idx[j] >= cols_) throw domain_error("column index out of range");
    for (size_t i = 0; i < rows_; ++i) r.at(i, j) = at(i, idx[j]);
  }
  return r;
}

bool RingMatrix::operator==(const RingMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && entries_ == other.entries_;
}

namespace {

RingElement det_rec(const RingMatrix& m, size_t row, std::vector<size_t>& cols) {
  if (cols.empty()) return m.ring().one();
  RingElement acc = m.ring().zero();
  for (size_t j = 0; j < cols.size(); ++j) {
    size_t col = cols[j];
    if (m.at(row, col).is_zero()) continue;
    std::vector<size_t> rest;
    rest.reserve(cols.size() - 1);
    for (size_t t = 0; t < cols.size(); ++t)
      if (t != j) rest.push_back(cols[t]);
    RingElement sub = det_rec(m, row + 1, rest);
    RingElement term = m.at(row, col) * sub;
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

}  // namespace

RingElement RingMatrix::det() const {
  if (rows_ != cols_) throw domain_error("determinant of non-square matrix");
  if (rows_ > 8) throw domain_error("determinant size guard exceeded");
  std::vector<size_t> cols(cols_);
  for (size_t i = 0; i < cols_; ++i) cols[i] = i;
  return det_rec(*this, 0, cols);
}

RingMatrix RingMatrix::adjugate() const {
  if (rows_ != cols_) throw domain_error("adjugate of non-square matrix");
  size_t n = rows_;
  RingMatrix adj(ring_, n, n);
  if (n == 0) return adj;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      RingMatrix minor(ring_, n - 1, n - 1);
      size_t mr = 0;
      for (size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        size_t mc = 0;
        for (size_t c = 0; c < n; ++c) {
          if (c == i) continue;
          minor.at(mr, mc) = at(r, c);
          ++mc;
        }
        ++mr;
      }
      RingElement d = minor.det();
      adj.at(i, j) = ((i + j) % 2 == 0) ? d : -d;
    }
  }
  return adj;
}

RingMatrix RingMatrix::invert_times(const RingMatrix& m, const RingMatrix& n,
                                    const RingElement& det_inverse) {
  RingMatrix prod = m.adjugate() * n;
  for (size_t i = 0; i < prod.rows(); ++i)
    for (size_t j = 0; j < prod.cols(); ++j) prod.at(i, j) = prod.at(i, j) * det_inverse;
  return prod;
}

RingMatrix RingMatrix::map(const RingHom& hom) const {
  RingMatrix r(hom.target(), rows_, cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) r.at(i, j) = hom.apply(at(i, j));
  return r;
}

LocalizedRing tensor_rings(const LocalizedRing& a, const LocalizedRing& b,
                           const std::string& suffix_a, const std::string& suffix_b) {
  if (a.field() != b.field()) throw domain_error("tensor over different fields");
  if (a.is_degree0_marked() || b.is_degree0_marked())
    throw domain_error("tensor of degree-zero subrings not supported");
  std::vector<std::string> vars;
  for (const auto& v : a.poly_ring().vars()) vars.push_back(v + suffix_a);
  for (const auto& v : b.poly_ring().vars()) vars.push_back(v + suffix_b);
  for (size_t i = 0; i < vars.size(); ++i)
    for (size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j])
        throw domain_error("variable clash in tensor product; rename required: " + vars[i]);
  PolyRing big(a.field(), vars);
  size_t offset = a.poly_ring().arity();
  auto transplant = [&](const Poly& p, size_t shift) {
    Poly r(big);
    for (const auto& [e, c] : p.terms()) {
      ExpVec big_e(big.arity(), 0);
      for (size_t i = 0; i < e.size(); ++i) big_e[i + shift] = e[i];
      r.add_term(big_e, c);
    }
    return r;
  };
  std::vector<Denominator> dens;
  for (const auto& d : a.denominators()) dens.push_back({d.name + suffix_a, transplant(d.poly, 0)});
  for (const auto& d : b.denominators())
    dens.push_back({d.name + suffix_b, transplant(d.poly, offset)});
  return LocalizedRing(big, std::move(dens));
}

LocalizedRing collapse_trivial_degree0(const LocalizedRing& ring) {
  if (!ring.is_degree0_marked()) return ring;
  size_t generators = 0;
  for (size_t j = 0; j < ring.denominators().size(); ++j)
    generators += ring.poly_ring().arity() - 1;
  if (generators == 0) return LocalizedRing::constants(ring.field());
  return ring;
}

std::vector<RingElement> degree_zero_subring_generators(const LocalizedRing& ring,
                                                        const Grading& g) {
  if (ring.localization_class() != LocalizationClass::monomial)
    throw domain_error("degree-zero generators require a monomial localization");
  for (long w : g.weights)
    if (w != 1) throw domain_error("degree-zero generators require all weights 1");
  std::vector<RingElement> gens;
  for (size_t j = 0; j < ring.denominators().size(); ++j) {
    size_t jvar = *ring.poly_ring().var_index(ring.denominators()[j].name);
    for (size_t i = 0; i < ring.poly_ring().arity(); ++i) {
      if (i == jvar) continue;
      gens.push_back(ring.var_element(i) * ring.denominator_inverse(j));
    }
  }
  return gens;
}

}  // namespace rspace
