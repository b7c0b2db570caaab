#include "rspace/stanley.hpp"

#include <algorithm>
#include <json.hpp>
#include <map>
#include <sstream>

namespace rspace {

SimplicialComplex::SimplicialComplex(size_t n, std::vector<uint32_t> faces)
    : n_(n), faces_(std::move(faces)) {
  if (n > 20) throw domain_error("simplicial complex guard: ground set larger than 20");
  std::sort(faces_.begin(), faces_.end());
  faces_.erase(std::unique(faces_.begin(), faces_.end()), faces_.end());
  if (faces_.empty()) throw domain_error("simplicial complex must be nonempty");
  for (uint32_t f : faces_) {
    if (f >= (1u << n)) throw domain_error("face outside the ground set");
    for (size_t i = 0; i < n; ++i) {
      if (!(f & (1u << i))) continue;
      if (!std::binary_search(faces_.begin(), faces_.end(), f & ~(1u << i)))
        throw domain_error("face set is not downward closed");
    }
  }
}

SimplicialComplex SimplicialComplex::from_facets(size_t n, const std::vector<uint32_t>& facets) {
  std::vector<uint32_t> faces{0};
  for (uint32_t f : facets) {
    if (f >= (1u << n)) throw domain_error("facet outside the ground set");
    // all subsets of f
    uint32_t sub = f;
    while (true) {
      faces.push_back(sub);
      if (sub == 0) break;
      sub = (sub - 1) & f;
    }
  }
  return SimplicialComplex(n, std::move(faces));
}

SimplicialComplex SimplicialComplex::full_simplex(size_t n) {
  return from_facets(n, {n == 0 ? 0u : (1u << n) - 1u});
}

bool SimplicialComplex::has_face(uint32_t mask) const {
  return std::binary_search(faces_.begin(), faces_.end(), mask);
}

long SimplicialComplex::dim() const {
  long d = -1;
  for (uint32_t f : faces_) d = std::max<long>(d, __builtin_popcount(f) - 1);
  return d;
}

std::vector<uint32_t> SimplicialComplex::facets() const {
  std::vector<uint32_t> out;
  for (uint32_t f : faces_) {
    bool maximal = true;
    for (uint32_t g : faces_)
      if (g != f && (g & f) == f) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back(f);
  }
  return out;
}

bool SimplicialComplex::is_pure() const {
  auto fs = facets();
  for (uint32_t f : fs)
    if (__builtin_popcount(f) != __builtin_popcount(fs.front())) return false;
  return true;
}

std::string SimplicialComplex::to_json() const {
  nlohmann::json j;
  j["n"] = n_;
  auto facet_list = nlohmann::json::array();
  for (uint32_t f : facets()) {
    auto members = nlohmann::json::array();
    for (size_t i = 0; i < n_; ++i)
      if (f & (1u << i)) members.push_back(i + 1);
    facet_list.push_back(members);
  }
  j["facets"] = facet_list;
  return j.dump(2);
}

SimplicialComplex SimplicialComplex::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  size_t n = j.at("n").get<size_t>();
  std::vector<uint32_t> facets;
  for (const auto& facet : j.at("facets")) {
    uint32_t mask = 0;
    for (const auto& v : facet) {
      size_t member = v.get<size_t>();
      if (member < 1 || member > n) throw domain_error("facet member outside 1..n");
      mask |= (1u << (member - 1));
    }
    facets.push_back(mask);
  }
  return from_facets(n, facets);
}

std::string MonomialIdeal::to_string() const {
  if (generators.empty()) return "(0)";
  std::ostringstream out;
  out << "(";
  for (size_t t = 0; t < generators.size(); ++t) {
    if (t) out << ", ";
    bool first = true;
    for (size_t i = 0; i < n; ++i) {
      if (!(generators[t] & (1u << i))) continue;
      if (!first) out << "*";
      out << "x" << (i + 1);
      first = false;
    }
  }
  out << ")";
  return out.str();
}

MonomialIdeal sr_ideal(const SimplicialComplex& k) {
  size_t n = k.ground_size();
  std::vector<uint32_t> generators;
  for (uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (k.has_face(mask)) continue;
    bool minimal = true;
    for (size_t i = 0; i < n && minimal; ++i) {
      if (!(mask & (1u << i))) continue;
      if (!k.has_face(mask & ~(1u << i))) minimal = false;
    }
    if (minimal) generators.push_back(mask);
  }
  return MonomialIdeal{n, std::move(generators)};
}

SimplicialComplex link(const SimplicialComplex& k, uint32_t p) {
  if (!k.has_face(p)) throw domain_error("link of a non-face");
  std::vector<uint32_t> faces{0};
  for (uint32_t q : k.faces()) {
    if (q == 0) continue;
    if ((q & p) == 0 && k.has_face(q | p)) faces.push_back(q);
  }
  return SimplicialComplex(k.ground_size(), std::move(faces));
}

std::vector<std::vector<mpz_class>> boundary_matrix(const SimplicialComplex& k, long d) {
  // rows: (d-1)-faces, cols: d-faces, signs by position of the dropped vertex
  std::vector<uint32_t> rows, cols;
  for (uint32_t f : k.faces()) {
    long fd = __builtin_popcount(f) - 1;
    if (fd == d - 1) rows.push_back(f);
    if (fd == d) cols.push_back(f);
  }
  std::map<uint32_t, size_t> row_index;
  for (size_t i = 0; i < rows.size(); ++i) row_index[rows[i]] = i;
  std::vector<std::vector<mpz_class>> m(rows.size(), std::vector<mpz_class>(cols.size(), 0));
  for (size_t c = 0; c < cols.size(); ++c) {
    uint32_t f = cols[c];
    int sign = 1;
    for (size_t i = 0; i < k.ground_size(); ++i) {
      if (!(f & (1u << i))) continue;
      m[row_index.at(f & ~(1u << i))][c] = sign;
      sign = -sign;
    }
  }
  return m;
}

std::vector<size_t> reduced_homology(const SimplicialComplex& k, const Field& f) {
  long top = k.dim();
  std::vector<size_t> counts;  // faces per degree, counts[i] = #(i-1)-faces
  for (long d = -1; d <= top; ++d) {
    size_t c = 0;
    for (uint32_t face : k.faces())
      if (__builtin_popcount(face) - 1 == d) ++c;
    counts.push_back(c);
  }
  auto rank_of = [&](long d) -> size_t {
    auto rows_cols = boundary_matrix(k, d);
    size_t rows = rows_cols.size();
    size_t cols = rows ? rows_cols[0].size() : 0;
    if (rows == 0 || cols == 0) return 0;
    FieldMatrix m(f, rows, cols);
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j) m.at(i, j) = mpq_class(rows_cols[i][j]);
    return matrix_rank(std::move(m));
  };
  std::vector<size_t> betti;
  for (long d = -1; d <= top; ++d) {
    size_t dim_cd = counts[d + 1];
    size_t rank_d = rank_of(d);        // boundary out of degree d
    size_t rank_d1 = rank_of(d + 1);   // boundary into degree d
    betti.push_back(dim_cd - rank_d - rank_d1);
  }
  return betti;
}

CMCertificate is_cohen_macaulay(const SimplicialComplex& k, const Field& f, bool reduced) {
  if (reduced && !k.is_pure())
    return CMCertificate{false, 0, 0, "complex is not pure"};
  for (uint32_t p : k.faces()) {
    if (reduced && p == 0) continue;
    SimplicialComplex l = link(k, p);
    long dl = l.dim();
    std::vector<size_t> betti = reduced_homology(l, f);
    for (long i = -1; i < dl; ++i) {
      if (betti[i + 1] != 0)
        return CMCertificate{false, p, i,
                             "nonzero reduced homology in the link of a face"};
    }
  }
  return CMCertificate{true, 0, 0, "all pass"};
}

std::vector<size_t> closed_subset_from_complex(const PartsPoset& parts,
                                               const SimplicialComplex& k) {
  if (parts.ground.size() != k.ground_size() || parts.masks.front() != 0)
    throw domain_error("expected the full parts poset of the ground set");
  std::vector<size_t> closed;
  for (uint32_t f : k.faces()) closed.push_back(parts.index_of_mask(f));
  std::sort(closed.begin(), closed.end());
  return closed;
}

SimplicialComplex complex_from_closed(const PartsPoset& parts, const std::vector<size_t>& closed) {
  // closed = downward-closed set of points of P_n
  for (size_t p : closed)
    for (size_t q = 0; q < parts.poset.size(); ++q)
      if (parts.poset.leq(q, p) && std::find(closed.begin(), closed.end(), q) == closed.end())
        throw domain_error("subset is not closed in P_n");
  std::vector<uint32_t> faces;
  for (size_t p : closed) faces.push_back(parts.masks[p]);
  return SimplicialComplex(parts.ground.size(), std::move(faces));
}

SimplicialComplex triangle_boundary() { return SimplicialComplex::from_facets(3, {0b011, 0b101, 0b110}); }

SimplicialComplex two_disjoint_edges() { return SimplicialComplex::from_facets(4, {0b0011, 0b1100}); }

SimplicialComplex rp2_6() {
  // antipodal quotient of the icosahedron; vertices 1..6
  std::vector<std::vector<int>> facets = {{1, 2, 5}, {1, 2, 6}, {1, 3, 4}, {1, 3, 6},
                                          {1, 4, 5}, {2, 3, 4}, {2, 3, 5}, {2, 4, 6},
                                          {3, 5, 6}, {4, 5, 6}};
  std::vector<uint32_t> masks;
  for (const auto& f : facets) {
    uint32_t m = 0;
    for (int v : f) m |= (1u << (v - 1));
    masks.push_back(m);
  }
  return SimplicialComplex::from_facets(6, masks);
}

}  // namespace rspace
