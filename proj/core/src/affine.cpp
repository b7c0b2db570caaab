#include "rspace/affine.hpp"

#include <algorithm>

#include "builder_cache.hpp"

namespace rspace {

namespace {

std::vector<std::string> affine_vars(size_t n) {
  if (n == 1) return {"x"};
  std::vector<std::string> vars;
  for (size_t i = 1; i <= n; ++i) vars.push_back("x" + std::to_string(i));
  return vars;
}

// identity-on-variables hom between two localizations of one polynomial ring
RingHom inclusion_hom(const LocalizedRing& src, const LocalizedRing& dst) {
  std::vector<RingElement> images;
  for (size_t i = 0; i < dst.poly_ring().arity(); ++i) images.push_back(dst.var_element(i));
  return RingHom(src, dst, std::move(images));
}

// rebuild an element in a ring with identical ambient data (marking change)
RingElement reown(const RingElement& e, const LocalizedRing& ring) {
  return RingElement(ring, e.numerator(), e.denom_exponents());
}

}  // namespace

AlgTopFunction make_algtop_function(GlobalSection f, OpenSet u) {
  if (u.poset() != f.space().poset()) throw domain_error("open set from another space");
  for (size_t p : u.carrier())
    if (!f.germ(p).is_unit())
      throw domain_error("germ not a unit on the declared open at " + f.space().poset().label(p));
  return AlgTopFunction{std::move(f), std::move(u)};
}

GmAction make_gm_action(RingedSpace space, std::vector<Grading> gradings) {
  if (gradings.size() != space.size()) throw domain_error("one grading per point required");
  for (size_t p = 0; p < space.size(); ++p)
    if (gradings[p].weights.size() != space.stalk(p).poly_ring().arity())
      throw domain_error("grading arity mismatch at " + space.poset().label(p));
  for (const auto& [p, q] : space.poset().comparable_pairs()) {
    const auto& images = space.restriction(p, q).var_images();
    for (size_t i = 0; i < images.size(); ++i) {
      long deg = 0;
      if (!images[i].is_homogeneous(gradings[q], &deg) ||
          (!images[i].is_zero() && deg != gradings[p].weights[i]))
        throw domain_error("restriction is not degree-preserving at " + space.poset().label(p) +
                           " <= " + space.poset().label(q));
    }
  }
  return GmAction{std::move(space), std::move(gradings)};
}

GmAction homothety_action(const RingedSpace& space) {
  std::vector<Grading> gradings;
  for (size_t p = 0; p < space.size(); ++p)
    gradings.push_back(Grading{std::vector<long>(space.stalk(p).poly_ring().arity(), 1)});
  return make_gm_action(space, std::move(gradings));
}

RingedSpace build_affine_alg(const Field& k, size_t n) {
  return RingedSpace::point(LocalizedRing::polynomial(k, affine_vars(n)),
                            "A^" + std::to_string(n) + "_alg");
}

RingedSpace build_affine_top(const Field& k, size_t n) {
  PartsPoset parts = parts_poset(n);
  LocalizedRing constants = LocalizedRing::constants(k);
  std::vector<LocalizedRing> stalks(parts.poset.size(), constants);
  auto provider = [&](size_t, size_t) { return RingHom(constants, constants, {}); };
  return RingedSpace(parts.poset, std::move(stalks), provider, "A^" + std::to_string(n) + "_top");
}

namespace {

RingedSpace build_affine_charts(const Field& k, const PartsPoset& parts, const std::string& name) {
  std::vector<std::string> vars = affine_vars(parts.ground.size());
  std::vector<LocalizedRing> stalks;
  for (uint32_t mask : parts.masks) {
    std::vector<std::string> inverted;
    for (size_t i = 0; i < vars.size(); ++i)
      if (mask & (1u << i)) inverted.push_back(vars[i]);
    stalks.push_back(LocalizedRing::monomial_localization(k, vars, inverted));
  }
  auto provider = [&](size_t p, size_t q) { return inclusion_hom(stalks[p], stalks[q]); };
  return RingedSpace(parts.poset, stalks, provider, name);
}

}  // namespace

RingedSpace build_affine(const Field& k, size_t n) {
  return detail::cached_space("affine:" + k.to_string() + ":" + std::to_string(n), [&] {
    return build_affine_charts(k, parts_poset(n), "A^" + std::to_string(n));
  });
}

RingedSpace build_punctured(const Field& k, size_t n) {
  if (n == 0) throw domain_error("A^0 - {0} is empty");
  return detail::cached_space("punctured:" + k.to_string() + ":" + std::to_string(n), [&] {
    return build_affine_charts(k, nonempty_parts_poset(n), "A^" + std::to_string(n) + "-0");
  });
}

RingedSpace build_gm(const Field& k) {
  PartsPoset parts = nonempty_parts_poset(1);
  return build_affine_charts(k, parts, "Gm");
}

RingedSpace build_open_function_space(const Field& k, size_t n) {
  PartsPoset parts = parts_poset(n);
  std::vector<std::string> vars = affine_vars(n);
  std::vector<LocalizedRing> stalks;
  for (uint32_t mask : parts.masks) {
    std::vector<std::string> chart_vars;
    for (size_t i = 0; i < vars.size(); ++i)
      if (mask & (1u << i)) chart_vars.push_back(vars[i]);
    stalks.push_back(LocalizedRing::polynomial(k, chart_vars));
  }
  auto provider = [&](size_t p, size_t q) {
    std::vector<RingElement> images;
    for (const auto& v : stalks[p].poly_ring().vars())
      images.push_back(stalks[q].var_element(*stalks[q].poly_ring().var_index(v)));
    return RingHom(stalks[p], stalks[q], std::move(images));
  };
  return RingedSpace(parts.poset, stalks, provider, "OpenFn^" + std::to_string(n));
}

RingedSpace build_flag_chain(const Field& k, size_t n) {
  if (n == 0) throw domain_error("flag chain requires n >= 1");
  FinitePoset chain = FinitePoset::chain(n);
  std::vector<LocalizedRing> stalks;
  for (size_t i = 1; i <= n; ++i) {
    std::vector<std::string> vars, inverted;
    for (size_t j = 1; j <= i; ++j) vars.push_back("x" + std::to_string(j));
    for (size_t j = 1; j + 1 <= i; ++j) inverted.push_back("x" + std::to_string(j));
    stalks.push_back(LocalizedRing::monomial_localization(k, vars, inverted));
  }
  auto provider = [&](size_t p, size_t q) {
    std::vector<RingElement> images;
    for (const auto& v : stalks[p].poly_ring().vars())
      images.push_back(stalks[q].var_element(*stalks[q].poly_ring().var_index(v)));
    return RingHom(stalks[p], stalks[q], std::move(images));
  };
  return RingedSpace(chain, stalks, provider, "FlagChain^" + std::to_string(n));
}

AlgTopTuple affine_universal_object(const RingedSpace& affine_space, size_t n) {
  AlgTopTuple thetas;
  size_t arity = affine_space.stalk(0).poly_ring().arity();
  if (arity != n) throw domain_error("space does not carry n variables");
  for (size_t i = 0; i < n; ++i) {
    std::vector<RingElement> germs;
    std::vector<size_t> open_carrier;
    for (size_t p = 0; p < affine_space.size(); ++p) {
      RingElement germ = affine_space.stalk(p).var_element(i);
      if (germ.is_unit()) open_carrier.push_back(p);
      germs.push_back(std::move(germ));
    }
    GlobalSection section(affine_space, std::move(germs));
    thetas.push_back(make_algtop_function(std::move(section),
                                          OpenSet(affine_space.poset(), std::move(open_carrier))));
  }
  return thetas;
}

namespace {

SpaceMorphism morphism_from_algtop_impl(const RingedSpace& s, const AlgTopTuple& thetas,
                                        bool punctured) {
  size_t n = thetas.size();
  for (const auto& theta : thetas) {
    if (!(theta.function.space() == s)) throw domain_error("tuple entry on another space");
    for (size_t p : theta.open_part.carrier())
      if (!theta.function.germ(p).is_unit())
        throw domain_error("tuple entry violates the unit invariant");
  }
  std::vector<OpenSet> opens;
  for (const auto& theta : thetas) opens.push_back(theta.open_part);
  if (punctured && !is_covering(s.poset(), opens))
    throw domain_error("topological parts do not cover the space");
  const Field& k = s.field();
  RingedSpace target = punctured ? build_punctured(k, n) : build_affine(k, n);
  PartsPoset parts = punctured ? nonempty_parts_poset(n) : parts_poset(n);

  std::vector<size_t> top_images;
  for (size_t p = 0; p < s.size(); ++p) {
    uint32_t mask = 0;
    for (size_t i = 0; i < n; ++i)
      if (thetas[i].open_part.contains(p)) mask |= (1u << i);
    top_images.push_back(parts.index_of_mask(mask));
  }
  MonotoneMap top(s.poset(), target.poset(), top_images);
  std::vector<RingHom> comorphisms;
  for (size_t p = 0; p < s.size(); ++p) {
    std::vector<RingElement> images;
    for (size_t i = 0; i < n; ++i) images.push_back(thetas[i].function.germ(p));
    comorphisms.emplace_back(target.stalk(top.apply(p)), s.stalk(p), std::move(images));
  }
  SpaceMorphism m{s, target, std::move(top), std::move(comorphisms)};
  require_valid(m);
  return m;
}

AlgTopTuple algtop_from_morphism_impl(const SpaceMorphism& m, size_t n, bool punctured) {
  const Field& k = m.target.field();
  RingedSpace expected = punctured ? build_punctured(k, n) : build_affine(k, n);
  if (!spaces_match(m.target, expected))
    throw domain_error("morphism does not land in the expected affine space");
  require_valid(m);
  AlgTopTuple universal = affine_universal_object(m.target, n);
  AlgTopTuple thetas;
  for (const auto& theta : universal) {
    GlobalSection pulled = theta.function.pullback(m);
    OpenSet open = m.top.preimage(theta.open_part);
    thetas.push_back(make_algtop_function(std::move(pulled), std::move(open)));
  }
  return thetas;
}

}  // namespace

SpaceMorphism morphism_from_algtop(const RingedSpace& s, const AlgTopTuple& thetas) {
  return morphism_from_algtop_impl(s, thetas, false);
}

AlgTopTuple algtop_from_morphism(const SpaceMorphism& m, size_t n) {
  return algtop_from_morphism_impl(m, n, false);
}

SpaceMorphism morphism_from_algtop_punctured(const RingedSpace& s, const AlgTopTuple& thetas) {
  return morphism_from_algtop_impl(s, thetas, true);
}

AlgTopTuple algtop_from_morphism_punctured(const SpaceMorphism& m, size_t n) {
  return algtop_from_morphism_impl(m, n, true);
}

std::pair<RingedSpace, SpaceMorphism> quotient_by_gm(const GmAction& action) {
  const RingedSpace& s = action.space;
  bool trivial = true;
  for (const auto& g : action.gradings)
    for (long w : g.weights)
      if (w != 0) trivial = false;
  if (trivial) return {s, SpaceMorphism::identity(s)};

  std::vector<LocalizedRing> stalks;
  for (size_t p = 0; p < s.size(); ++p)
    stalks.push_back(collapse_trivial_degree0(
        LocalizedRing(s.stalk(p).poly_ring(), s.stalk(p).denominators(), action.gradings[p])));
  auto provider = [&](size_t p, size_t q) -> RingHom {
    if (stalks[p].poly_ring().arity() == 0) return RingHom(stalks[p], stalks[q], {});
    std::vector<RingElement> images;
    for (const auto& img : s.restriction(p, q).var_images())
      images.push_back(stalks[q].poly_ring().arity() == 0
                           ? stalks[q].constant_element(img.numerator().constant_value())
                           : reown(img, stalks[q]));
    return RingHom(stalks[p], stalks[q], std::move(images));
  };
  RingedSpace quotient(s.poset(), stalks, provider, s.name() + "/Gm");
  std::vector<RingHom> comorphisms;
  for (size_t p = 0; p < s.size(); ++p) {
    if (stalks[p].poly_ring().arity() == 0) {
      comorphisms.emplace_back(stalks[p], s.stalk(p), std::vector<RingElement>{});
    } else {
      std::vector<RingElement> images;
      for (size_t i = 0; i < s.stalk(p).poly_ring().arity(); ++i)
        images.push_back(s.stalk(p).var_element(i));
      comorphisms.emplace_back(stalks[p], s.stalk(p), std::move(images));
    }
  }
  SpaceMorphism projection{s, quotient, MonotoneMap::identity(s.poset()), std::move(comorphisms)};
  require_valid(projection);
  return {std::move(quotient), std::move(projection)};
}

bool algtop_leq(const AlgTopFunction& a, const AlgTopFunction& b) {
  return a.function == b.function && a.open_part.subset_of(b.open_part);
}

bool tuple_leq(const AlgTopTuple& a, const AlgTopTuple& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!algtop_leq(a[i], b[i])) return false;
  return true;
}

AlgTopFunction saturate(const AlgTopFunction& theta) {
  return AlgTopFunction{theta.function, unit_locus(theta.function)};
}

AlgTopTuple saturate_tuple(const AlgTopTuple& thetas) {
  AlgTopTuple out;
  for (const auto& theta : thetas) out.push_back(saturate(theta));
  return out;
}

std::vector<std::vector<size_t>> pi0_classes(const std::vector<AlgTopTuple>& tuples) {
  std::vector<AlgTopTuple> maxima;
  std::vector<std::vector<size_t>> classes;
  for (size_t i = 0; i < tuples.size(); ++i) {
    AlgTopTuple sat = saturate_tuple(tuples[i]);
    bool placed = false;
    for (size_t c = 0; c < maxima.size() && !placed; ++c) {
      if (tuple_leq(maxima[c], sat) && tuple_leq(sat, maxima[c])) {
        classes[c].push_back(i);
        placed = true;
      }
    }
    if (!placed) {
      maxima.push_back(std::move(sat));
      classes.push_back({i});
    }
  }
  return classes;
}

}  // namespace rspace
