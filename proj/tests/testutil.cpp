#include "testutil.hpp"

#include <atomic>

#include "rspace/lattice.hpp"

namespace rspace::testutil {

namespace {
std::atomic<uint64_t> seed_value{20240817};
}

uint64_t global_seed() { return seed_value.load(); }
void set_global_seed(uint64_t seed) { seed_value.store(seed); }

size_t Sampler::pick(size_t n) {
  if (n == 0) return 0;
  return std::uniform_int_distribution<size_t>(0, n - 1)(rng);
}

long Sampler::int_in(long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

mpq_class Sampler::coeff(const Field& f) {
  long v = int_in(-4, 4);
  return f.reduce(mpq_class(v));
}

mpq_class Sampler::nonzero_coeff(const Field& f) {
  while (true) {
    mpq_class c = coeff(f);
    if (c != 0) return c;
  }
}

Poly Sampler::poly(const PolyRing& ring, size_t max_terms, uint32_t max_exp) {
  Poly p(ring);
  size_t terms = pick(max_terms + 1);
  for (size_t t = 0; t < terms; ++t) {
    ExpVec e(ring.arity(), 0);
    for (size_t i = 0; i < ring.arity(); ++i) e[i] = static_cast<uint32_t>(pick(max_exp + 1));
    p.add_term(e, coeff(ring.field()));
  }
  return p;
}

RingElement Sampler::element(const LocalizedRing& ring) {
  Poly num = poly(ring.poly_ring(), 3, 2);
  std::vector<unsigned> dexp(ring.denominators().size(), 0);
  for (auto& e : dexp) e = static_cast<unsigned>(pick(2));
  return RingElement(ring, std::move(num), std::move(dexp));
}

RingElement Sampler::unit(const LocalizedRing& ring) {
  RingElement u = ring.constant_element(nonzero_coeff(ring.field()));
  for (size_t i = 0; i < ring.denominators().size(); ++i) {
    long e = int_in(-2, 2);
    if (e > 0)
      u = u * ring.from_poly(ring.denominators()[i].poly).pow(static_cast<unsigned>(e));
    else if (e < 0)
      u = u * ring.denominator_inverse(i).pow(static_cast<unsigned>(-e));
  }
  return u;
}

OpenSet Sampler::open_inside(const OpenSet& bound) {
  std::vector<size_t> seed;
  for (size_t p : bound.carrier())
    if (pick(2) == 0) seed.push_back(p);
  return OpenSet(bound.poset(), bound.poset().up_closure(seed));
}

GlobalSection Sampler::section(const RingedSpace& s) {
  if (auto m = s.poset().minimum()) {
    return GlobalSection::from_minimum(s, element(s.stalk(*m)));
  }
  // shared-ambient case: a polynomial with no denominators restricts everywhere
  Poly p = poly(s.stalk(0).poly_ring(), 3, 2);
  std::vector<RingElement> germs;
  for (size_t q = 0; q < s.size(); ++q) germs.push_back(s.stalk(q).from_poly(p));
  return GlobalSection(s, std::move(germs));
}

RingMatrix Sampler::invertible_matrix(const LocalizedRing& ring, size_t r) {
  RingMatrix m = RingMatrix::identity(ring, r);
  for (size_t i = 0; i < r; ++i) m.at(i, i) = unit(ring);
  size_t ops = pick(2 * r);
  for (size_t t = 0; t < ops; ++t) {
    size_t i = pick(r), j = pick(r);
    if (i == j) continue;
    RingMatrix e = RingMatrix::identity(ring, r);
    e.at(i, j) = ring.from_poly(poly(ring.poly_ring(), 1, 1));
    m = e * m;
  }
  return m;
}

AlgTopTuple Sampler::tuple(const RingedSpace& s, size_t n, bool covering) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    AlgTopTuple thetas;
    std::vector<OpenSet> opens;
    for (size_t i = 0; i < n; ++i) {
      GlobalSection f = [&] {
        if (pick(3) == 0) {
          // guaranteed-unit section, so coverings are reachable
          if (auto m = s.poset().minimum())
            return GlobalSection::from_minimum(s, unit(s.stalk(*m)));
          std::vector<RingElement> germs;
          mpq_class c = nonzero_coeff(s.field());
          for (size_t q = 0; q < s.size(); ++q) germs.push_back(s.stalk(q).constant_element(c));
          return GlobalSection(s, std::move(germs));
        }
        return section(s);
      }();
      OpenSet u = open_inside(unit_locus(f));
      opens.push_back(u);
      thetas.push_back(make_algtop_function(std::move(f), std::move(u)));
    }
    if (!covering || is_covering(s.poset(), opens)) return thetas;
  }
  throw domain_error("sampler failed to produce a covering tuple");
}

AlgTopInvQuotient Sampler::inv_quotient(const RingedSpace& s, size_t sections) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    // twist the trivial module by pointwise units
    std::vector<RingElement> lambda;
    for (size_t p = 0; p < s.size(); ++p) lambda.push_back(unit(s.stalk(p)));
    std::map<std::pair<size_t, size_t>, RingElement> transitions;
    for (const auto& [p, q] : s.poset().comparable_pairs())
      transitions.emplace(std::make_pair(p, q),
                          lambda[q] * *s.restriction(p, q).apply(lambda[p]).unit_inverse());
    InvertibleModule module(s, std::vector<std::string>(s.size(), "e"), std::move(transitions));
    std::vector<AlgTopSection> secs;
    std::vector<OpenSet> opens;
    for (size_t j = 0; j < sections; ++j) {
      GlobalSection g = pick(3) == 0
                            ? [&] {
                                if (auto m = s.poset().minimum())
                                  return GlobalSection::from_minimum(s, unit(s.stalk(*m)));
                                std::vector<RingElement> germs;
                                mpq_class c = nonzero_coeff(s.field());
                                for (size_t q = 0; q < s.size(); ++q)
                                  germs.push_back(s.stalk(q).constant_element(c));
                                return GlobalSection(s, std::move(germs));
                              }()
                            : section(s);
    std::vector<RingElement> coeffs;
      for (size_t p = 0; p < s.size(); ++p) coeffs.push_back(lambda[p] * g.germ(p));
      ModuleSection ms(module, std::move(coeffs));
      OpenSet u = open_inside(ms.unit_locus(module));
      opens.push_back(u);
      secs.push_back(AlgTopSection{std::move(ms), std::move(u)});
    }
    if (!is_covering(s.poset(), opens)) continue;
    return make_inv_quotient(std::move(module), std::move(secs));
  }
  throw domain_error("sampler failed to produce a covering quotient");
}

AlgTopRankQuotient Sampler::rank_quotient(const RingedSpace& s, size_t r, size_t n) {
  std::vector<uint32_t> deltas = r_subsets(n, r);
  for (int attempt = 0; attempt < 256; ++attempt) {
    std::vector<RingMatrix> lambda;
    for (size_t p = 0; p < s.size(); ++p) lambda.push_back(invertible_matrix(s.stalk(p), r));
    std::map<std::pair<size_t, size_t>, RingMatrix> transitions;
    for (const auto& [p, q] : s.poset().comparable_pairs()) {
      RingMatrix moved = lambda[p].map(s.restriction(p, q));
      auto det_inv = moved.det().unit_inverse();
      if (!det_inv) throw domain_error("sampled matrix lost invertibility");
      RingMatrix inv = RingMatrix::invert_times(moved, RingMatrix::identity(s.stalk(q), r),
                                                *det_inv);
      transitions.emplace(std::make_pair(p, q), lambda[q] * inv);
    }
    FreeRankModule module(s, r, std::move(transitions));
    // base matrix [I | random] in global sections, twisted by lambda
    std::vector<GlobalSection> base_cols;
    for (size_t j = 0; j < n; ++j) {
      std::vector<GlobalSection> column;
      for (size_t i = 0; i < r; ++i) {
        if (j < r) {
          mpq_class c = (i == j) ? 1 : 0;
          std::vector<RingElement> germs;
          for (size_t p = 0; p < s.size(); ++p) germs.push_back(s.stalk(p).constant_element(c));
          column.push_back(GlobalSection(s, std::move(germs)));
        } else {
          column.push_back(section(s));
        }
      }
      base_cols.insert(base_cols.end(), column.begin(), column.end());
    }
    std::vector<FreeModuleSection> phi;
    for (size_t j = 0; j < n; ++j) {
      std::vector<std::vector<RingElement>> coeffs;
      for (size_t p = 0; p < s.size(); ++p) {
        std::vector<RingElement> w;
        for (size_t i = 0; i < r; ++i) w.push_back(base_cols[j * r + i].germ(p));
        std::vector<RingElement> v;
        for (size_t i = 0; i < r; ++i) {
          RingElement acc = s.stalk(p).zero();
          for (size_t t = 0; t < r; ++t) acc = acc + lambda[p].at(i, t) * w[t];
          v.push_back(acc);
        }
        coeffs.push_back(std::move(v));
      }
      phi.emplace_back(module, std::move(coeffs));
    }
    AlgTopRankQuotient probe{module, phi, {}};
    std::vector<OpenSet> cover;
    bool ok = true;
    for (size_t t = 0; t < deltas.size(); ++t) {
      std::vector<size_t> locus;
      for (size_t p = 0; p < s.size(); ++p)
        if (det_delta(quotient_matrix_at(probe, p), deltas[t]).is_unit()) locus.push_back(p);
      OpenSet bound(s.poset(), std::move(locus));
      // keep the first chart full so the cover condition holds
      cover.push_back(t == 0 ? bound : open_inside(bound));
    }
    if (!is_covering(s.poset(), cover)) continue;
    try {
      return make_rank_quotient(std::move(module), std::move(phi), std::move(cover));
    } catch (const domain_error&) {
      ok = false;
    }
    if (!ok) continue;
  }
  throw domain_error("sampler failed to produce a rank quotient");
}

std::vector<RingedSpace> test_space_library(const Field& k) {
  return {
      build_affine(k, 1),
      build_affine(k, 2),
      build_punctured(k, 2),
      build_flag_chain(k, 2),
      build_open_function_space(k, 1),
  };
}

std::vector<FinitePoset> all_posets_upto(size_t max_elems) {
  std::vector<FinitePoset> out;
  for (size_t n = 0; n <= max_elems; ++n) {
    std::vector<std::pair<size_t, size_t>> slots;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    for (uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
      std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
      for (size_t i = 0; i < n; ++i) leq[i][i] = true;
      for (size_t t = 0; t < slots.size(); ++t)
        if (mask & (1u << t)) leq[slots[t].first][slots[t].second] = true;
      bool transitive = true;
      for (size_t i = 0; i < n && transitive; ++i)
        for (size_t j = 0; j < n && transitive; ++j)
          for (size_t l = 0; l < n && transitive; ++l)
            if (leq[i][j] && leq[j][l] && !leq[i][l]) transitive = false;
      if (!transitive) continue;
      std::vector<std::string> labels;
      for (size_t i = 0; i < n; ++i) labels.push_back("s" + std::to_string(i));
      std::vector<std::pair<std::string, std::string>> pairs;
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
          if (i != j && leq[i][j]) pairs.emplace_back(labels[i], labels[j]);
      out.emplace_back(std::move(labels), pairs);
    }
  }
  return out;
}

bool sspec_of_free_matches_parts(size_t n) {
  DistLattice free = free_dl(n);
  SSpecResult ss = sspec(free);
  PartsPoset parts = parts_poset(n);
  if (ss.poset.size() != parts.poset.size()) return false;
  size_t subsets = 1u << n;
  // the lattice elements in construction order are the antichains
  std::vector<uint32_t> antichains;
  for (uint32_t members = 0; members < (1u << subsets); ++members) {
    bool anti = true;
    for (size_t s = 0; s < subsets && anti; ++s) {
      if (!(members & (1u << s))) continue;
      for (size_t t = 0; t < subsets && anti; ++t)
        if (s != t && (members & (1u << t)) && (s & t) == s) anti = false;
    }
    if (anti) antichains.push_back(members);
  }
  if (antichains.size() != free.size()) return false;
  std::vector<size_t> image(parts.poset.size());
  for (size_t d = 0; d < parts.poset.size(); ++d) {
    uint32_t delta = parts.masks[d];
    std::vector<size_t> prime;
    for (size_t e = 0; e < free.size(); ++e) {
      bool value = false;
      for (size_t s = 0; s < subsets; ++s)
        if ((antichains[e] & (1u << s)) && (s & ~delta) == 0) value = true;
      if (!value) prime.push_back(e);
    }
    bool found = false;
    for (size_t t = 0; t < ss.primes.size() && !found; ++t)
      if (ss.primes[t] == prime) {
        image[d] = t;
        found = true;
      }
    if (!found) return false;
  }
  for (size_t a = 0; a < parts.poset.size(); ++a)
    for (size_t b = 0; b < parts.poset.size(); ++b)
      if (parts.poset.leq(a, b) != ss.poset.leq(image[a], image[b])) return false;
  return true;
}

}  // namespace rspace::testutil
