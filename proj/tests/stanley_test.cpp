#include <doctest.h>

#include <fstream>
#include <sstream>

#include "rspace/stanley.hpp"
#include "testutil.hpp"

using namespace rspace;

namespace {
const Field kQ = Field::rationals();
const Field kF2 = Field::prime(2);

long euler_characteristic_from_faces(const SimplicialComplex& k) {
  // reduced Euler characteristic: alternating sum over nonempty faces minus 1
  long chi = 0;
  for (uint32_t f : k.faces()) {
    if (f == 0) continue;
    int d = __builtin_popcount(f) - 1;
    chi += (d % 2 == 0) ? 1 : -1;
  }
  return chi - 1;
}

long euler_characteristic_from_betti(const SimplicialComplex& k, const Field& f) {
  auto betti = reduced_homology(k, f);
  long chi = 0;
  for (size_t i = 1; i < betti.size(); ++i)
    chi += ((i - 1) % 2 == 0 ? 1 : -1) * static_cast<long>(betti[i]);
  // degree -1 contributes with sign -1
  chi -= static_cast<long>(betti[0]);
  return chi;
}

}  // namespace

TEST_CASE("complex construction and encodings") {
  SimplicialComplex tri = triangle_boundary();
  CHECK(tri.dim() == 1);
  CHECK(tri.faces().size() == 7);  // empty, 3 vertices, 3 edges
  CHECK(tri.is_pure());
  CHECK_THROWS_AS(SimplicialComplex(2, {0b11}), domain_error);  // not downward closed

  PartsPoset parts = parts_poset(3);
  std::vector<size_t> closed = closed_subset_from_complex(parts, tri);
  CHECK(closed.size() == 7);
  SimplicialComplex back = complex_from_closed(parts, closed);
  CHECK(back == tri);

  SimplicialComplex empty_only(2, {0});
  auto enc = closed_subset_from_complex(parts_poset(2), empty_only);
  CHECK(enc == std::vector<size_t>{0});
  CHECK(complex_from_closed(parts_poset(2), enc) == empty_only);

  // a non-closed subset is rejected
  CHECK_THROWS_AS(complex_from_closed(parts, {parts.index_of_mask(0b11)}), domain_error);

  // json round trip and the shipped fixture
  CHECK(SimplicialComplex::from_json(tri.to_json()) == tri);
  std::ifstream file(std::string(RSPACE_FIXTURE_DIR) + "/rp2_6.json");
  REQUIRE(file.good());
  std::stringstream buf;
  buf << file.rdbuf();
  CHECK(SimplicialComplex::from_json(buf.str()) == rp2_6());
}

TEST_CASE("stanley-reisner ideals") {
  CHECK(sr_ideal(SimplicialComplex::full_simplex(4)).generators.empty());

  SimplicialComplex point_only(3, {0});
  MonomialIdeal all_vars = sr_ideal(point_only);
  CHECK(all_vars.generators == std::vector<uint32_t>{1, 2, 4});
  CHECK(all_vars.to_string() == "(x1, x2, x3)");

  MonomialIdeal tri = sr_ideal(triangle_boundary());
  CHECK(tri.generators == std::vector<uint32_t>{0b111});
  CHECK(tri.to_string() == "(x1*x2*x3)");

  // generators are exactly the minimal non-faces
  for (const SimplicialComplex& k : {triangle_boundary(), two_disjoint_edges(), rp2_6()}) {
    MonomialIdeal ideal = sr_ideal(k);
    for (uint32_t g : ideal.generators) {
      CHECK_FALSE(k.has_face(g));
      for (size_t i = 0; i < k.ground_size(); ++i)
        if (g & (1u << i)) CHECK(k.has_face(g & ~(1u << i)));
    }
    // completeness: every non-face contains a generator
    for (uint32_t mask = 0; mask < (1u << k.ground_size()); ++mask) {
      if (k.has_face(mask)) continue;
      bool contains = false;
      for (uint32_t g : ideal.generators)
        if ((mask & g) == g) contains = true;
      CHECK(contains);
    }
  }
}

TEST_CASE("links") {
  SimplicialComplex tri = triangle_boundary();
  CHECK(link(tri, 0) == tri);  // link of the empty face is the whole complex

  SimplicialComplex full2 = SimplicialComplex::full_simplex(3);
  SimplicialComplex top_link = link(full2, 0b111);
  CHECK(top_link.faces() == std::vector<uint32_t>{0});

  SimplicialComplex l1 = link(tri, 0b001);
  CHECK(l1.faces() == std::vector<uint32_t>{0, 2, 4});  // vertices 2 and 3

  CHECK_THROWS_AS(link(tri, 0b111), domain_error);

  // links are themselves downward closed complexes (constructor re-checks)
  SimplicialComplex rp2 = rp2_6();
  for (uint32_t p : rp2.faces()) {
    SimplicialComplex l = link(rp2, p);
    CHECK(l.faces().front() == 0);
  }
}

TEST_CASE("reduced homology") {
  // cones are acyclic
  for (size_t m = 1; m <= 5; ++m) {
    auto betti = reduced_homology(SimplicialComplex::full_simplex(m), kQ);
    for (size_t b : betti) CHECK(b == 0);
  }
  // the 3-cycle has one loop
  auto tri = reduced_homology(triangle_boundary(), kQ);
  REQUIRE(tri.size() == 3);
  CHECK(tri[0] == 0);
  CHECK(tri[1] == 0);
  CHECK(tri[2] == 1);

  // the empty-face complex has reduced homology in degree -1
  auto point_betti = reduced_homology(SimplicialComplex(2, {0}), kQ);
  REQUIRE(point_betti.size() == 1);
  CHECK(point_betti[0] == 1);

  auto rp2_q = reduced_homology(rp2_6(), kQ);
  for (size_t b : rp2_q) CHECK(b == 0);
  auto rp2_f2 = reduced_homology(rp2_6(), kF2);
  REQUIRE(rp2_f2.size() == 4);
  CHECK(rp2_f2[0] == 0);  // degree -1
  CHECK(rp2_f2[1] == 0);  // degree 0
  CHECK(rp2_f2[2] == 1);  // degree 1
  CHECK(rp2_f2[3] == 1);  // degree 2

  // Euler characteristic agrees with the alternating face count, both fields
  for (const SimplicialComplex& k :
       {triangle_boundary(), two_disjoint_edges(), rp2_6(), SimplicialComplex::full_simplex(4)})
    for (const Field& f : {kQ, kF2})
      CHECK(euler_characteristic_from_betti(k, f) == euler_characteristic_from_faces(k));

  // torsion detection: integer SNF of the top boundary of RP2_6 has an
  // invariant 2, which is why the F2 ranks differ from the rational ones
  auto snf = smith_normal_form(boundary_matrix(rp2_6(), 2));
  CHECK(std::count(snf.begin(), snf.end(), mpz_class(2)) == 1);
  // torsion-free fixtures have field-independent Betti numbers
  for (const SimplicialComplex& k : {triangle_boundary(), two_disjoint_edges()}) {
    bool torsion_free = true;
    for (long d = 0; d <= k.dim(); ++d)
      for (const mpz_class& inv : smith_normal_form(boundary_matrix(k, d)))
        if (inv != 1 && inv != -1) torsion_free = false;
    REQUIRE(torsion_free);
    CHECK(reduced_homology(k, kQ) == reduced_homology(k, kF2));
  }
}

TEST_CASE("reisner criterion") {
  for (size_t n = 1; n <= 6; ++n)
    CHECK(is_cohen_macaulay(SimplicialComplex::full_simplex(n), kQ, false).cohen_macaulay);

  CMCertificate edges = is_cohen_macaulay(two_disjoint_edges(), kQ, false);
  CHECK_FALSE(edges.cohen_macaulay);
  CHECK(edges.witness_face == 0);
  CHECK(edges.witness_degree == 0);

  CMCertificate rp2_q = is_cohen_macaulay(rp2_6(), kQ, false);
  CHECK(rp2_q.cohen_macaulay);
  CMCertificate rp2_f2 = is_cohen_macaulay(rp2_6(), kF2, false);
  CHECK_FALSE(rp2_f2.cohen_macaulay);
  CHECK(rp2_f2.witness_face == 0);
  CHECK(rp2_f2.witness_degree == 1);

  // reduced variant: purity is a precondition
  SimplicialComplex impure = SimplicialComplex::from_facets(3, {0b011, 0b100});
  CMCertificate impure_cert = is_cohen_macaulay(impure, kQ, true);
  CHECK_FALSE(impure_cert.cohen_macaulay);
  CHECK(impure_cert.note.find("pure") != std::string::npos);

  // the reduced variant ranges over nonempty faces only, so the disjoint
  // edges (whose failure sits at the empty face) pass it
  CHECK(is_cohen_macaulay(two_disjoint_edges(), kQ, true).cohen_macaulay);
  CHECK(is_cohen_macaulay(rp2_6(), kF2, true).cohen_macaulay);

  // CM of a link matches a direct recomputation on the link complex
  SimplicialComplex k = rp2_6();
  for (uint32_t p : k.faces()) {
    if (__builtin_popcount(p) != 1) continue;
    SimplicialComplex l = link(k, p);
    CMCertificate inner = is_cohen_macaulay(l, kQ, false);
    CMCertificate direct = is_cohen_macaulay(SimplicialComplex(l.ground_size(), l.faces()),
                                             kQ, false);
    CHECK(inner.cohen_macaulay == direct.cohen_macaulay);
  }
}
