#include "rspace/projective.hpp"

#include <algorithm>

#include <map>
#include <mutex>

#include "builder_cache.hpp"

namespace rspace {

namespace {

std::vector<std::string> proj_vars(size_t n) {
  if (n + 1 == 1) return {"x"};
  std::vector<std::string> vars;
  for (size_t i = 1; i <= n + 1; ++i) vars.push_back("x" + std::to_string(i));
  return vars;
}

size_t min_member(uint32_t mask) {
  size_t i = 0;
  while (!(mask & (1u << i))) ++i;
  return i;
}

}  // namespace

AlgTopInvQuotient make_inv_quotient(InvertibleModule module,
                                    std::vector<AlgTopSection> sections) {
  const RingedSpace& base = module.base();
  std::vector<OpenSet> opens;
  for (const auto& s : sections) {
    if (s.open_part.poset() != base.poset())
      throw domain_error("section open from another space");
    for (size_t p : s.open_part.carrier())
      if (!s.section.coefficient(p).is_unit())
        throw domain_error("section not invertible on its declared open");
    opens.push_back(s.open_part);
  }
  if (!is_covering(base.poset(), opens))
    throw domain_error("section opens do not cover the space");
  return AlgTopInvQuotient{std::move(module), std::move(sections)};
}

namespace {
RingedSpace build_projective_uncached(const Field& k, size_t n);
}

RingedSpace build_projective(const Field& k, size_t n) {
  return detail::cached_space("projective:" + k.to_string() + ":" + std::to_string(n), [&] {
    return build_projective_uncached(k, n);
  });
}

namespace {

RingedSpace build_projective_uncached(const Field& k, size_t n) {
  PartsPoset parts = nonempty_parts_poset(n + 1);
  std::vector<std::string> vars = proj_vars(n);
  Grading weights{std::vector<long>(n + 1, 1)};
  std::vector<LocalizedRing> stalks;
  for (uint32_t mask : parts.masks) {
    std::vector<std::string> inverted;
    for (size_t i = 0; i < vars.size(); ++i)
      if (mask & (1u << i)) inverted.push_back(vars[i]);
    LocalizedRing chart = LocalizedRing::monomial_localization(k, vars, inverted);
    stalks.push_back(collapse_trivial_degree0(
        LocalizedRing(chart.poly_ring(), chart.denominators(), weights)));
  }
  auto provider = [&](size_t p, size_t q) -> RingHom {
    if (stalks[p].poly_ring().arity() == 0) return RingHom(stalks[p], stalks[q], {});
    std::vector<RingElement> images;
    for (size_t i = 0; i < stalks[q].poly_ring().arity(); ++i)
      images.push_back(stalks[q].var_element(i));
    return RingHom(stalks[p], stalks[q], std::move(images));
  };
  return RingedSpace(parts.poset, stalks, provider, "P^" + std::to_string(n));
}

}  // namespace

InvertibleModule twisting_module(const Field& k, size_t n, long d) {
  RingedSpace pn = build_projective(k, n);
  PartsPoset parts = nonempty_parts_poset(n + 1);
  std::map<std::pair<size_t, size_t>, RingElement> transitions;
  for (const auto& [p, q] : pn.poset().comparable_pairs()) {
    size_t mp = min_member(parts.masks[p]);
    size_t mq = min_member(parts.masks[q]);
    const LocalizedRing& stalk = pn.stalk(q);
    RingElement u = stalk.one();
    if (mp != mq && d != 0) {
      // coefficient transport for basis x_mp^d -> x_mq^d is (x_mp / x_mq)^d
      size_t den_index = 0;
      for (size_t i = 0; i < stalk.denominators().size(); ++i)
        if (stalk.denominators()[i].name == stalk.poly_ring().vars()[mq]) den_index = i;
      RingElement ratio = stalk.var_element(mp) * stalk.denominator_inverse(den_index);
      if (d >= 0) {
        u = ratio.pow(static_cast<unsigned>(d));
      } else {
        u = ratio.unit_inverse()->pow(static_cast<unsigned>(-d));
      }
    }
    transitions.emplace(std::make_pair(p, q), std::move(u));
  }
  std::vector<std::string> labels;
  for (uint32_t mask : parts.masks)
    labels.push_back(proj_vars(n)[min_member(mask)] + "^" + std::to_string(d));
  return InvertibleModule(pn, std::move(labels), std::move(transitions));
}

AlgTopInvQuotient projective_universal_object(const Field& k, size_t n) {
  static std::mutex mutex;
  static std::map<std::string, AlgTopInvQuotient> cache;
  std::string key = k.to_string() + ":" + std::to_string(n);
  {
    std::scoped_lock lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  InvertibleModule od = twisting_module(k, n, 1);
  const RingedSpace& pn = od.base();
  PartsPoset parts = nonempty_parts_poset(n + 1);
  std::vector<AlgTopSection> sections;
  for (size_t i = 0; i <= n; ++i) {
    std::vector<RingElement> coeffs;
    for (size_t p = 0; p < pn.size(); ++p) {
      const LocalizedRing& stalk = pn.stalk(p);
      if (stalk.poly_ring().arity() == 0) {
        coeffs.push_back(stalk.one());
        continue;
      }
      size_t m = min_member(parts.masks[p]);
      size_t den_index = 0;
      for (size_t t = 0; t < stalk.denominators().size(); ++t)
        if (stalk.denominators()[t].name == stalk.poly_ring().vars()[m]) den_index = t;
      coeffs.push_back(stalk.var_element(i) * stalk.denominator_inverse(den_index));
    }
    ModuleSection section(od, std::move(coeffs));
    std::vector<size_t> open_carrier;
    for (size_t p = 0; p < pn.size(); ++p)
      if (parts.masks[p] & (1u << i)) open_carrier.push_back(p);
    sections.push_back(
        AlgTopSection{std::move(section), OpenSet(pn.poset(), std::move(open_carrier))});
  }
  AlgTopInvQuotient result = make_inv_quotient(std::move(od), std::move(sections));
  std::scoped_lock lock(mutex);
  return cache.emplace(key, std::move(result)).first->second;
}

namespace {

void monomials_of_degree(size_t vars, long degree, ExpVec& current, size_t index,
                         std::vector<ExpVec>& out) {
  if (index + 1 == vars) {
    current[index] = static_cast<uint32_t>(degree);
    out.push_back(current);
    return;
  }
  for (long e = degree; e >= 0; --e) {
    current[index] = static_cast<uint32_t>(e);
    monomials_of_degree(vars, degree - e, current, index + 1, out);
  }
}

}  // namespace

std::vector<ModuleSection> twisting_global_basis(const Field& k, size_t n, long d) {
  if (d < 0) return {};
  InvertibleModule od = twisting_module(k, n, d);
  const RingedSpace& pn = od.base();
  PartsPoset parts = nonempty_parts_poset(n + 1);
  std::vector<ExpVec> monomials;
  ExpVec scratch(n + 1, 0);
  monomials_of_degree(n + 1, d, scratch, 0, monomials);
  std::vector<ModuleSection> basis;
  for (const auto& mono : monomials) {
    std::vector<RingElement> coeffs;
    for (size_t p = 0; p < pn.size(); ++p) {
      const LocalizedRing& stalk = pn.stalk(p);
      if (stalk.poly_ring().arity() == 0) {
        coeffs.push_back(stalk.constant_element(1));
        continue;
      }
      size_t m = min_member(parts.masks[p]);
      size_t den_index = 0;
      for (size_t t = 0; t < stalk.denominators().size(); ++t)
        if (stalk.denominators()[t].name == stalk.poly_ring().vars()[m]) den_index = t;
      RingElement numring = stalk.from_poly(Poly::monomial(stalk.poly_ring(), mono, 1));
      coeffs.push_back(numring * stalk.denominator_inverse(den_index).pow(
                                     static_cast<unsigned>(d)));
    }
    basis.emplace_back(od, std::move(coeffs));
  }
  return basis;
}

std::vector<std::string> twisting_global_basis_labels(const Field& k, size_t n, long d) {
  if (d < 0) return {};
  PolyRing pr(k, proj_vars(n));
  std::vector<ExpVec> monomials;
  ExpVec scratch(n + 1, 0);
  monomials_of_degree(n + 1, d, scratch, 0, monomials);
  std::vector<std::string> labels;
  for (const auto& mono : monomials) labels.push_back(Poly::monomial(pr, mono, 1).to_string());
  return labels;
}

std::optional<ModuleSection> extend_twist_family(const RingedSpace& pn,
                                                 const InvertibleModule& od, long d,
                                                 size_t anchor_point, const RingElement& value) {
  PartsPoset parts = nonempty_parts_poset(pn.stalk(0).poly_ring().arity());
  size_t top = pn.size() - 1;  // the full subset is last in the size-then-mask order
  // move the anchored ambient object x_anchor^d * value to the top stalk and
  // re-divide by each chart's basis
  RingHom to_top = pn.restriction(anchor_point, top);
  size_t anchor_var = min_member(parts.masks[anchor_point]);
  const LocalizedRing& top_stalk = pn.stalk(top);
  RingElement at_top = to_top.apply(value);
  std::vector<RingElement> coeffs;
  for (size_t p = 0; p < pn.size(); ++p) {
    size_t m = min_member(parts.masks[p]);
    // candidate = value * (x_anchor / x_m)^d, computed in the top stalk
    RingElement ratio = top_stalk.var_element(anchor_var) *
                        top_stalk.denominator_inverse(m);
    RingElement candidate =
        d >= 0 ? at_top * ratio.pow(static_cast<unsigned>(d))
               : at_top * ratio.unit_inverse()->pow(static_cast<unsigned>(-d));
    // membership in stalk(p): denominator support inside the chart
    const LocalizedRing& stalk = pn.stalk(p);
    std::vector<unsigned> dexp(stalk.denominators().size(), 0);
    bool member = true;
    for (size_t i = 0; i < candidate.denom_exponents().size(); ++i) {
      if (candidate.denom_exponents()[i] == 0) continue;
      const std::string& name = top_stalk.denominators()[i].name;
      bool found = false;
      for (size_t t = 0; t < stalk.denominators().size(); ++t)
        if (stalk.denominators()[t].name == name) {
          dexp[t] = candidate.denom_exponents()[i];
          found = true;
        }
      if (!found) {
        member = false;
        break;
      }
    }
    if (!member) return std::nullopt;
    Poly num(stalk.poly_ring());
    for (const auto& [e, c] : candidate.numerator().terms()) num.add_term(e, c);
    coeffs.emplace_back(stalk, std::move(num), std::move(dexp));
  }
  try {
    return ModuleSection(od, std::move(coeffs));
  } catch (const domain_error&) {
    return std::nullopt;
  }
}

SpaceMorphism morphism_from_quotient(const RingedSpace& s, const AlgTopInvQuotient& q) {
  size_t n1 = q.sections.size();  // n + 1
  if (n1 == 0) throw domain_error("quotient needs at least one section");
  const Field& k = s.field();
  RingedSpace target = build_projective(k, n1 - 1);
  PartsPoset parts = nonempty_parts_poset(n1);
  std::vector<size_t> top_images;
  for (size_t p = 0; p < s.size(); ++p) {
    uint32_t mask = 0;
    for (size_t i = 0; i < n1; ++i)
      if (q.sections[i].open_part.contains(p)) mask |= (1u << i);
    if (mask == 0) throw domain_error("covering violated at " + s.poset().label(p));
    top_images.push_back(parts.index_of_mask(mask));
  }
  MonotoneMap top(s.poset(), target.poset(), top_images);
  std::vector<RingHom> comorphisms;
  for (size_t p = 0; p < s.size(); ++p) {
    const LocalizedRing& src = target.stalk(top.apply(p));
    if (src.poly_ring().arity() == 0) {
      comorphisms.emplace_back(src, s.stalk(p), std::vector<RingElement>{});
      continue;
    }
    std::vector<RingElement> images;
    for (size_t i = 0; i < n1; ++i) images.push_back(q.sections[i].section.coefficient(p));
    comorphisms.emplace_back(src, s.stalk(p), std::move(images));
  }
  SpaceMorphism m{s, target, std::move(top), std::move(comorphisms)};
  // chart overlap agreement: on each point, any two trivializing indices give
  // the same degree-zero action
  for (size_t p = 0; p < s.size(); ++p) {
    uint32_t mask = parts.masks[m.top.apply(p)];
    for (size_t i = 0; i < n1; ++i) {
      if (!(mask & (1u << i))) continue;
      RingElement vi = q.sections[i].section.coefficient(p);
      RingElement vi_inv = *vi.unit_inverse();
      for (size_t j = 0; j < n1; ++j) {
        RingElement vj = q.sections[j].section.coefficient(p);
        const LocalizedRing& src = target.stalk(m.top.apply(p));
        if (src.poly_ring().arity() == 0) continue;
        size_t den_index = 0;
        for (size_t t = 0; t < src.denominators().size(); ++t)
          if (src.denominators()[t].name == src.poly_ring().vars()[i]) den_index = t;
        RingElement generator = src.var_element(j) * src.denominator_inverse(den_index);
        if (m.comorphisms[p].apply(generator) != vj * vi_inv)
          throw domain_error("charts disagree on an overlap");
      }
    }
  }
  require_valid(m);
  return m;
}

AlgTopInvQuotient quotient_from_morphism(const SpaceMorphism& m, size_t n) {
  const Field& k = m.target.field();
  RingedSpace expected = build_projective(k, n);
  if (!spaces_match(m.target, expected))
    throw domain_error("morphism does not land in the expected projective space");
  require_valid(m);
  AlgTopInvQuotient universal = projective_universal_object(k, n);
  InvertibleModule pulled = pullback_invertible(m, universal.module);
  std::vector<AlgTopSection> sections;
  for (const auto& s : universal.sections)
    sections.push_back(pullback_algtop_section(m, universal.module, s, pulled));
  return make_inv_quotient(std::move(pulled), std::move(sections));
}

bool inv_quotients_equivalent(const AlgTopInvQuotient& a, const AlgTopInvQuotient& b) {
  if (!(a.module.base() == b.module.base())) return false;
  if (a.sections.size() != b.sections.size()) return false;
  const RingedSpace& base = a.module.base();
  size_t n1 = a.sections.size();
  for (size_t i = 0; i < n1; ++i)
    if (a.sections[i].open_part != b.sections[i].open_part) return false;
  // solve the connecting unit pointwise
  std::vector<RingElement> lambda;
  for (size_t p = 0; p < base.size(); ++p) {
    std::optional<RingElement> l;
    for (size_t i = 0; i < n1 && !l; ++i) {
      if (!a.sections[i].open_part.contains(p)) continue;
      RingElement va = a.sections[i].section.coefficient(p);
      RingElement vb = b.sections[i].section.coefficient(p);
      auto inv = va.unit_inverse();
      if (!inv) return false;
      l = vb * *inv;
    }
    if (!l || !l->is_unit()) return false;
    lambda.push_back(std::move(*l));
  }
  for (size_t i = 0; i < n1; ++i)
    for (size_t p = 0; p < base.size(); ++p)
      if (b.sections[i].section.coefficient(p) !=
          lambda[p] * a.sections[i].section.coefficient(p))
        return false;
  for (const auto& [p, q] : base.poset().comparable_pairs()) {
    if (b.module.transition(p, q) * base.restriction(p, q).apply(lambda[p]) !=
        lambda[q] * a.module.transition(p, q))
      return false;
  }
  return true;
}

bool inv_quotient_leq(const AlgTopInvQuotient& a, const AlgTopInvQuotient& b) {
  if (a.sections.size() != b.sections.size()) return false;
  for (size_t i = 0; i < a.sections.size(); ++i)
    if (!a.sections[i].open_part.subset_of(b.sections[i].open_part)) return false;
  // equal algebraic parts: compare after aligning opens
  AlgTopInvQuotient a_widened = a;
  for (size_t i = 0; i < a.sections.size(); ++i)
    a_widened.sections[i].open_part = b.sections[i].open_part;
  // widening keeps validity only if the sections are units there; verify
  for (size_t i = 0; i < a.sections.size(); ++i)
    for (size_t p : b.sections[i].open_part.carrier())
      if (!a.sections[i].section.coefficient(p).is_unit()) return false;
  return inv_quotients_equivalent(a_widened, b);
}

AlgTopInvQuotient saturate_quotient(const AlgTopInvQuotient& q) {
  AlgTopInvQuotient out = q;
  for (auto& s : out.sections) s.open_part = s.section.unit_locus(out.module);
  return out;
}

}  // namespace rspace
