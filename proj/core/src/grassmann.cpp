#include "rspace/grassmann.hpp"

#include <algorithm>

#include <map>
#include <mutex>

#include "builder_cache.hpp"
#include <sstream>

namespace rspace {

namespace {

void subsets_rec(size_t n, size_t r, size_t start, uint32_t acc, std::vector<uint32_t>& out) {
  if (__builtin_popcount(acc) == static_cast<int>(r)) {
    out.push_back(acc);
    return;
  }
  for (size_t j = start; j < n; ++j) subsets_rec(n, r, j + 1, acc | (1u << j), out);
}

std::vector<size_t> mask_members(uint32_t mask) {
  std::vector<size_t> members;
  for (size_t i = 0; i < 32; ++i)
    if (mask & (1u << i)) members.push_back(i);
  return members;
}

size_t binomial(size_t n, size_t r) {
  if (r > n) return 0;
  size_t v = 1;
  for (size_t i = 0; i < r; ++i) v = v * (n - i) / (i + 1);
  return v;
}

void check_guard(size_t r, size_t n) {
  if (r < 1 || r > n) throw domain_error("need 1 <= r <= n");
  if (binomial(n, r) > 6) throw domain_error("size guard: C(n,r) must be at most 6");
}

std::vector<std::string> hom_vars(size_t r, size_t n) {
  std::vector<std::string> vars;
  for (size_t i = 1; i <= r; ++i)
    for (size_t j = 1; j <= n; ++j)
      vars.push_back("x" + std::to_string(i) + std::to_string(j));
  return vars;
}

// generic matrix of the ambient polynomial ring of build_hom_space
RingMatrix generic_matrix(const LocalizedRing& ring, size_t r, size_t n) {
  RingMatrix m(ring, r, n);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < n; ++j) m.at(i, j) = ring.var_element(i * n + j);
  return m;
}

}  // namespace

std::vector<uint32_t> r_subsets(size_t n, size_t r) {
  std::vector<uint32_t> out;
  subsets_rec(n, r, 0, 0, out);
  return out;
}

std::string r_subset_name(uint32_t mask) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (size_t j : mask_members(mask)) {
    if (!first) out << ",";
    out << (j + 1);
    first = false;
  }
  out << "}";
  return out.str();
}

RingElement det_delta(const RingMatrix& phi, const std::vector<size_t>& delta) {
  if (delta.size() != phi.rows()) throw domain_error("det_delta needs |delta| = r");
  return phi.columns(delta).det();
}

RingElement det_delta(const RingMatrix& phi, uint32_t delta_mask) {
  return det_delta(phi, mask_members(delta_mask));
}

RingedSpace build_hom_space(const Field& k, size_t n, size_t r) {
  if (r < 1 || n < 1) throw domain_error("hom space needs r, n >= 1");
  return RingedSpace::point(LocalizedRing::polynomial(k, hom_vars(r, n)),
                            "Hom(k^" + std::to_string(n) + ",k^" + std::to_string(r) + ")");
}

RingedSpace build_gl(const Field& k, size_t r) {
  if (r < 1 || r > 5) throw domain_error("GL_r guard: 1 <= r <= 5");
  LocalizedRing plain = LocalizedRing::polynomial(k, hom_vars(r, r));
  RingElement det = generic_matrix(plain, r, r).det();
  LocalizedRing stalk(plain.poly_ring(), {{"det", det.numerator()}});
  return RingedSpace::point(stalk, "GL_" + std::to_string(r));
}

RingedSpace build_epim(const Field& k, size_t r, size_t n) {
  check_guard(r, n);
  std::vector<uint32_t> deltas = r_subsets(n, r);
  std::vector<std::string> ground;
  for (uint32_t d : deltas) ground.push_back(r_subset_name(d));
  PartsPoset parts = powerset_poset(ground, false);
  LocalizedRing plain = LocalizedRing::polynomial(k, hom_vars(r, n));
  RingMatrix x = generic_matrix(plain, r, n);
  std::vector<Poly> det_polys;
  for (uint32_t d : deltas) det_polys.push_back(det_delta(x, d).numerator());
  std::vector<LocalizedRing> stalks;
  for (uint32_t mask : parts.masks) {
    std::vector<Denominator> dens;
    for (size_t t = 0; t < deltas.size(); ++t)
      if (mask & (1u << t)) dens.push_back({"det" + r_subset_name(deltas[t]), det_polys[t]});
    stalks.emplace_back(plain.poly_ring(), std::move(dens));
  }
  auto provider = [&](size_t p, size_t q) {
    std::vector<RingElement> images;
    for (size_t i = 0; i < plain.poly_ring().arity(); ++i)
      images.push_back(stalks[q].var_element(i));
    return RingHom(stalks[p], stalks[q], std::move(images));
  };
  return RingedSpace(parts.poset, stalks, provider,
                     "Epim(" + std::to_string(r) + "," + std::to_string(n) + ")");
}

namespace {

struct GrassChart {
  uint32_t point_mask = 0;          // subset of Delta_{r,n}
  uint32_t pivot = 0;               // lex-least member
  std::vector<std::string> vars;    // z_ij, j outside the pivot
  std::vector<size_t> var_col;      // column (0-based) of each variable
  std::vector<size_t> var_row;      // row of each variable
};

GrassChart grass_chart(const std::vector<uint32_t>& deltas, uint32_t point_mask, size_t r,
                       size_t n) {
  GrassChart chart;
  chart.point_mask = point_mask;
  chart.pivot = deltas[mask_members(point_mask).front()];
  for (size_t i = 1; i <= r; ++i)
    for (size_t j = 1; j <= n; ++j) {
      if (chart.pivot & (1u << (j - 1))) continue;
      chart.vars.push_back("z" + std::to_string(i) + std::to_string(j));
      chart.var_row.push_back(i - 1);
      chart.var_col.push_back(j - 1);
    }
  return chart;
}

// pivot-normalized matrix over a ring whose variables follow the chart order
RingMatrix chart_matrix(const LocalizedRing& ring, const GrassChart& chart, size_t r, size_t n) {
  RingMatrix z(ring, r, n);
  std::vector<size_t> pivot_members = mask_members(chart.pivot);
  for (size_t t = 0; t < pivot_members.size(); ++t) z.at(t, pivot_members[t]) = ring.one();
  for (size_t v = 0; v < chart.vars.size(); ++v)
    z.at(chart.var_row[v], chart.var_col[v]) = ring.var_element(v);
  return z;
}

}  // namespace

namespace {
RingedSpace build_grass_uncached(const Field& k, size_t r, size_t n);
}

RingedSpace build_grass(const Field& k, size_t r, size_t n) {
  check_guard(r, n);
  return detail::cached_space(
      "grass:" + k.to_string() + ":" + std::to_string(r) + ":" + std::to_string(n),
      [&] { return build_grass_uncached(k, r, n); });
}

namespace {

RingedSpace build_grass_uncached(const Field& k, size_t r, size_t n) {
  std::vector<uint32_t> deltas = r_subsets(n, r);
  std::vector<std::string> ground;
  for (uint32_t d : deltas) ground.push_back(r_subset_name(d));
  PartsPoset parts = powerset_poset(ground, false);

  std::vector<GrassChart> charts;
  std::vector<LocalizedRing> stalks;
  for (uint32_t mask : parts.masks) {
    GrassChart chart = grass_chart(deltas, mask, r, n);
    LocalizedRing plain = LocalizedRing::polynomial(k, chart.vars);
    RingMatrix z = chart_matrix(plain, chart, r, n);
    std::vector<Denominator> dens;
    for (size_t t : mask_members(mask)) {
      if (deltas[t] == chart.pivot) continue;
      dens.push_back({"det" + r_subset_name(deltas[t]), det_delta(z, deltas[t]).numerator()});
    }
    stalks.emplace_back(plain.poly_ring(), std::move(dens));
    charts.push_back(std::move(chart));
  }
  auto provider = [&](size_t p, size_t q) {
    // renormalize the source chart to the target pivot
    RingMatrix zq = chart_matrix(stalks[q], charts[q], r, n);
    RingMatrix m = zq.columns(mask_members(charts[p].pivot));
    RingElement det = m.det();
    auto det_inv = det.unit_inverse();
    if (!det_inv)
      throw domain_error("pivot block determinant is not a unit in the target stalk");
    RingMatrix w = RingMatrix::invert_times(m, zq, *det_inv);
    std::vector<RingElement> images;
    for (size_t v = 0; v < charts[p].vars.size(); ++v)
      images.push_back(w.at(charts[p].var_row[v], charts[p].var_col[v]));
    return RingHom(stalks[p], stalks[q], std::move(images));
  };
  return RingedSpace(parts.poset, stalks, provider,
                     "Grass(" + std::to_string(r) + "," + std::to_string(n) + ")");
}

}  // namespace

RingMatrix grass_universal_matrix(const RingedSpace& grass, size_t p, size_t r, size_t n) {
  std::vector<uint32_t> deltas = r_subsets(n, r);
  std::vector<std::string> ground;
  for (uint32_t d : deltas) ground.push_back(r_subset_name(d));
  PartsPoset parts = powerset_poset(ground, false);
  GrassChart chart = grass_chart(deltas, parts.masks[p], r, n);
  return chart_matrix(grass.stalk(p), chart, r, n);
}

AlgTopEpimorphism make_algtop_epim(RingedSpace space, RingMatrix phi,
                                   std::vector<OpenSet> cover) {
  auto min_point = space.poset().minimum();
  if (!min_point) throw domain_error("algebro-topological epimorphisms need a global sections ring");
  if (phi.ring() != space.stalk(*min_point)) throw domain_error("phi not over Gamma(S)");
  size_t r = phi.rows(), n = phi.cols();
  std::vector<uint32_t> deltas = r_subsets(n, r);
  if (cover.size() != deltas.size()) throw domain_error("one open per r-subset required");
  if (!is_covering(space.poset(), cover)) throw domain_error("opens do not cover the space");
  for (size_t t = 0; t < deltas.size(); ++t) {
    RingElement det = det_delta(phi, deltas[t]);
    for (size_t p : cover[t].carrier())
      if (!space.restriction(*min_point, p).apply(det).is_unit())
        throw domain_error("cover open exceeds the det unit locus at " + r_subset_name(deltas[t]));
  }
  return AlgTopEpimorphism{std::move(space), std::move(phi), std::move(cover)};
}

AlgTopRankQuotient make_rank_quotient(FreeRankModule module, std::vector<FreeModuleSection> phi,
                                      std::vector<OpenSet> cover) {
  const RingedSpace& base = module.base();
  size_t r = module.rank(), n = phi.size();
  std::vector<uint32_t> deltas = r_subsets(n, r);
  if (cover.size() != deltas.size()) throw domain_error("one open per r-subset required");
  if (!is_covering(base.poset(), cover)) throw domain_error("opens do not cover the space");
  AlgTopRankQuotient q{std::move(module), std::move(phi), std::move(cover)};
  for (size_t t = 0; t < deltas.size(); ++t) {
    for (size_t p : q.cover[t].carrier()) {
      RingMatrix m = quotient_matrix_at(q, p);
      if (!det_delta(m, deltas[t]).is_unit())
        throw domain_error("cover open exceeds the minor unit locus at " +
                           r_subset_name(deltas[t]));
    }
  }
  return q;
}

RingMatrix quotient_matrix_at(const AlgTopRankQuotient& q, size_t p) {
  size_t r = q.module.rank(), n = q.phi.size();
  RingMatrix m(q.module.base().stalk(p), r, n);
  for (size_t j = 0; j < n; ++j)
    for (size_t i = 0; i < r; ++i) m.at(i, j) = q.phi[j].coefficients(p)[i];
  return m;
}

AlgTopRankQuotient universal_quotient(const Field& k, size_t r, size_t n) {
  static std::mutex mutex;
  static std::map<std::string, AlgTopRankQuotient> cache;
  std::string key = k.to_string() + ":" + std::to_string(r) + ":" + std::to_string(n);
  {
    std::scoped_lock lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  RingedSpace grass = build_grass(k, r, n);
  std::vector<uint32_t> deltas = r_subsets(n, r);
  std::vector<std::string> ground;
  for (uint32_t d : deltas) ground.push_back(r_subset_name(d));
  PartsPoset parts = powerset_poset(ground, false);

  std::map<std::pair<size_t, size_t>, RingMatrix> transitions;
  for (const auto& [p, q] : grass.poset().comparable_pairs()) {
    RingMatrix zq = grass_universal_matrix(grass, q, r, n);
    uint32_t pivot_p = deltas[mask_members(parts.masks[p]).front()];
    transitions.emplace(std::make_pair(p, q), zq.columns(mask_members(pivot_p)));
  }
  FreeRankModule module(grass, r, std::move(transitions));
  std::vector<FreeModuleSection> phi;
  for (size_t j = 0; j < n; ++j) {
    std::vector<std::vector<RingElement>> coeffs;
    for (size_t p = 0; p < grass.size(); ++p) {
      RingMatrix zp = grass_universal_matrix(grass, p, r, n);
      std::vector<RingElement> column;
      for (size_t i = 0; i < r; ++i) column.push_back(zp.at(i, j));
      coeffs.push_back(std::move(column));
    }
    phi.emplace_back(module, std::move(coeffs));
  }
  std::vector<OpenSet> cover;
  for (size_t t = 0; t < deltas.size(); ++t)
    cover.push_back(grass.poset().min_open(parts.index_of_mask(1u << t)));
  AlgTopRankQuotient result =
      make_rank_quotient(std::move(module), std::move(phi), std::move(cover));
  std::scoped_lock lock(mutex);
  return cache.emplace(key, std::move(result)).first->second;
}

SpaceMorphism morphism_from_rank_quotient(const RingedSpace& s, const AlgTopRankQuotient& q) {
  if (!(q.module.base() == s)) throw domain_error("quotient lives on another space");
  size_t r = q.module.rank(), n = q.phi.size();
  const Field& k = s.field();
  RingedSpace target = build_grass(k, r, n);
  std::vector<uint32_t> deltas = r_subsets(n, r);
  std::vector<std::string> ground;
  for (uint32_t d : deltas) ground.push_back(r_subset_name(d));
  PartsPoset parts = powerset_poset(ground, false);

  std::vector<size_t> top_images;
  for (size_t p = 0; p < s.size(); ++p) {
    uint32_t mask = 0;
    for (size_t t = 0; t < deltas.size(); ++t)
      if (q.cover[t].contains(p)) mask |= (1u << t);
    if (mask == 0) throw domain_error("covering violated at " + s.poset().label(p));
    top_images.push_back(parts.index_of_mask(mask));
  }
  MonotoneMap top(s.poset(), target.poset(), top_images);
  std::vector<RingHom> comorphisms;
  for (size_t p = 0; p < s.size(); ++p) {
    uint32_t mask = parts.masks[top.apply(p)];
    uint32_t pivot = deltas[mask_members(mask).front()];
    RingMatrix m = quotient_matrix_at(q, p);
    RingMatrix mpiv = m.columns(mask_members(pivot));
    auto det_inv = mpiv.det().unit_inverse();
    if (!det_inv) throw domain_error("pivot block not invertible on its declared open");
    RingMatrix w = RingMatrix::invert_times(mpiv, m, *det_inv);
    GrassChart chart = grass_chart(deltas, mask, r, n);
    std::vector<RingElement> images;
    for (size_t v = 0; v < chart.vars.size(); ++v)
      images.push_back(w.at(chart.var_row[v], chart.var_col[v]));
    comorphisms.emplace_back(target.stalk(top.apply(p)), s.stalk(p), std::move(images));
  }
  SpaceMorphism m{s, target, std::move(top), std::move(comorphisms)};
  require_valid(m);
  return m;
}

AlgTopRankQuotient rank_quotient_from_morphism(const SpaceMorphism& m, size_t r, size_t n) {
  const Field& k = m.target.field();
  RingedSpace expected = build_grass(k, r, n);
  if (!spaces_match(m.target, expected))
    throw domain_error("morphism does not land in the expected grassmannian");
  require_valid(m);
  AlgTopRankQuotient universal = universal_quotient(k, r, n);
  FreeRankModule pulled = pullback_free(m, universal.module);
  std::vector<FreeModuleSection> phi;
  for (const auto& s : universal.phi)
    phi.push_back(pullback_free_section(m, universal.module, s, pulled));
  std::vector<OpenSet> cover;
  for (const auto& u : universal.cover) cover.push_back(m.top.preimage(u));
  return make_rank_quotient(std::move(pulled), std::move(phi), std::move(cover));
}

bool rank_quotients_equivalent(const AlgTopRankQuotient& a, const AlgTopRankQuotient& b) {
  if (!(a.module.base() == b.module.base())) return false;
  if (a.module.rank() != b.module.rank() || a.phi.size() != b.phi.size()) return false;
  const RingedSpace& base = a.module.base();
  size_t r = a.module.rank(), n = a.phi.size();
  std::vector<uint32_t> deltas = r_subsets(n, r);
  for (size_t t = 0; t < deltas.size(); ++t)
    if (a.cover[t] != b.cover[t]) return false;
  std::vector<RingMatrix> lambda;
  for (size_t p = 0; p < base.size(); ++p) {
    std::optional<size_t> chart;
    for (size_t t = 0; t < deltas.size() && !chart; ++t)
      if (a.cover[t].contains(p)) chart = t;
    if (!chart) return false;
    RingMatrix ma = quotient_matrix_at(a, p).columns(mask_members(deltas[*chart]));
    RingMatrix mb = quotient_matrix_at(b, p).columns(mask_members(deltas[*chart]));
    auto det_inv = ma.det().unit_inverse();
    if (!det_inv) return false;
    RingMatrix inv(ma.ring(), r, r);
    RingMatrix adj = ma.adjugate();
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < r; ++j) inv.at(i, j) = adj.at(i, j) * *det_inv;
    RingMatrix l = mb * inv;
    if (!l.det().is_unit()) return false;
    lambda.push_back(std::move(l));
  }
  for (size_t p = 0; p < base.size(); ++p)
    if (!(lambda[p] * quotient_matrix_at(a, p) == quotient_matrix_at(b, p))) return false;
  for (const auto& [p, q] : base.poset().comparable_pairs()) {
    RingMatrix lhs = b.module.transition(p, q) * lambda[p].map(base.restriction(p, q));
    RingMatrix rhs = lambda[q] * a.module.transition(p, q);
    if (!(lhs == rhs)) return false;
  }
  return true;
}

SpaceMorphism plucker(const Field& k, size_t r, size_t n) {
  check_guard(r, n);
  RingedSpace grass = build_grass(k, r, n);
  std::vector<uint32_t> deltas = r_subsets(n, r);
  size_t c = deltas.size();
  RingedSpace proj = build_projective(k, c - 1);
  if (grass.size() != proj.size()) throw std::logic_error("plucker poset mismatch");
  std::vector<size_t> identity(grass.size());
  for (size_t i = 0; i < identity.size(); ++i) identity[i] = i;
  MonotoneMap top(grass.poset(), proj.poset(), identity);
  std::vector<RingHom> comorphisms;
  for (size_t p = 0; p < grass.size(); ++p) {
    const LocalizedRing& src = proj.stalk(p);
    if (src.poly_ring().arity() == 0) {
      comorphisms.emplace_back(src, grass.stalk(p), std::vector<RingElement>{});
      continue;
    }
    RingMatrix z = grass_universal_matrix(grass, p, r, n);
    std::vector<RingElement> images;
    for (size_t t = 0; t < c; ++t) images.push_back(det_delta(z, deltas[t]));
    comorphisms.emplace_back(src, grass.stalk(p), std::move(images));
  }
  SpaceMorphism m{grass, proj, std::move(top), std::move(comorphisms)};
  require_valid(m);
  return m;
}

std::pair<SpaceMorphism, SpaceMorphism> grass_projective_iso(const Field& k, size_t n) {
  SpaceMorphism forward = plucker(k, 1, n);
  RingedSpace grass = forward.source;
  RingedSpace proj = forward.target;
  std::vector<uint32_t> deltas = r_subsets(n, 1);
  std::vector<std::string> ground;
  for (uint32_t d : deltas) ground.push_back(r_subset_name(d));
  PartsPoset parts = powerset_poset(ground, false);
  std::vector<size_t> identity(grass.size());
  for (size_t i = 0; i < identity.size(); ++i) identity[i] = i;
  MonotoneMap top(proj.poset(), grass.poset(), identity);
  std::vector<RingHom> comorphisms;
  for (size_t p = 0; p < proj.size(); ++p) {
    const LocalizedRing& src = grass.stalk(p);
    const LocalizedRing& dst = proj.stalk(p);
    GrassChart chart = grass_chart(deltas, parts.masks[p], 1, n);
    size_t pivot_col = mask_members(chart.pivot).front();
    if (src.poly_ring().arity() == 0 || dst.poly_ring().arity() == 0) {
      if (src.poly_ring().arity() == 0) {
        comorphisms.emplace_back(src, dst, std::vector<RingElement>{});
        continue;
      }
      throw std::logic_error("collapsed projective stalk with noncollapsed grass stalk");
    }
    size_t den_index = 0;
    for (size_t t = 0; t < dst.denominators().size(); ++t)
      if (dst.denominators()[t].name == dst.poly_ring().vars()[pivot_col]) den_index = t;
    std::vector<RingElement> images;
    for (size_t v = 0; v < chart.vars.size(); ++v)
      images.push_back(dst.var_element(chart.var_col[v]) * dst.denominator_inverse(den_index));
    comorphisms.emplace_back(src, dst, std::move(images));
  }
  SpaceMorphism backward{proj, grass, std::move(top), std::move(comorphisms)};
  require_valid(backward);
  return {std::move(forward), std::move(backward)};
}

bool gl_action_check(const RingMatrix& g, const RingMatrix& phi) {
  if (g.rows() != g.cols() || g.rows() != phi.rows()) throw domain_error("shape mismatch");
  RingElement detg = g.det();
  RingMatrix composed = g * phi;
  for (uint32_t delta : r_subsets(phi.cols(), phi.rows()))
    if (det_delta(composed, delta) != detg * det_delta(phi, delta)) return false;
  return true;
}

bool gl_action_check(const RingMatrix& g, const AlgTopEpimorphism& e) {
  if (!gl_action_check(g, e.phi)) return false;
  if (!g.det().is_unit()) throw domain_error("group element must be invertible");
  size_t min_point = *e.space.poset().minimum();
  RingMatrix composed = g * e.phi;
  for (uint32_t delta : r_subsets(e.phi.cols(), e.phi.rows())) {
    RingElement before = det_delta(e.phi, delta);
    RingElement after = det_delta(composed, delta);
    for (size_t p = 0; p < e.space.size(); ++p) {
      RingHom to_p = e.space.restriction(min_point, p);
      if (to_p.apply(before).is_unit() != to_p.apply(after).is_unit()) return false;
    }
  }
  return true;
}

}  // namespace rspace
