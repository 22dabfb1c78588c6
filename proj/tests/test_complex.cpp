#include "doctest.h"

#include <algorithm>
#include <random>

#include "tilecoh/complex.hpp"
#include "tilecoh/fixtures.hpp"
#include "tilecoh/perron.hpp"

using namespace tilecoh;

namespace {

std::vector<Integer> sorted_coeffs(const GroupRingElement& e) {
  auto c = e.coeffs();
  std::sort(c.begin(), c.end());
  return c;
}

}  // namespace

TEST_CASE("orientation groups") {
  CHECK(orientation_group(split_edges(fixture("chair"))).describe() == "Z4");
  CHECK(orientation_group(fixture("penrose_triangles")).describe() == "Z10");
  CHECK(orientation_group(fixture("square_2x2")).describe() == "trivial");
  auto pw = orientation_group(split_edges(fixture("pinwheel")));
  CHECK_FALSE(pw.finite);
  REQUIRE(pw.witness.has_value());
  CHECK_FALSE(root_of_unity_order(pw.witness->c, pw.witness->s).has_value());
}

TEST_CASE("corona counts") {
  auto ch = enumerate_coronas(split_edges(fixture("chair")));
  CHECK(ch.complete);
  CHECK(ch.up_to_rotation == 14);
  CHECK(ch.per_orientation == std::optional<size_t>(56));
  // identifying mirror images as well
  CHECK(ch.up_to_reflection == 9);
  CHECK(enumerate_coronas(fixture("square_2x2")).up_to_rotation == 1);
  CHECK(enumerate_coronas(fixture("penrose_triangles")).up_to_rotation == 30);
  auto pw = enumerate_coronas(split_edges(fixture("pinwheel")));
  CHECK(pw.up_to_rotation >= 50);
  CHECK_FALSE(pw.per_orientation.has_value());
}

TEST_CASE("border forcing") {
  auto ch = forces_border(split_edges(fixture("chair")), 4);
  CHECK_FALSE(ch.forced);
  CHECK(ch.level == 4);
  auto pen = forces_border(fixture("penrose_triangles"), 4);
  CHECK(pen.forced);
  CHECK(pen.level == 3);
  CHECK(forces_border(fixture("square_2x2"), 2).level == 1);
  auto col = collar(split_edges(fixture("chair")));
  CHECK(col.collared.tiles.size() == 14);
  auto fb = forces_border(col.collared, 2, col.base_type);
  CHECK(fb.forced);
  CHECK(fb.level == 1);
}

TEST_CASE("chair uncollared complex") {
  auto c = build_complex(fixture("chair"), Variant::fixed_orientation, false);
  REQUIRE(c.cells.subst2.rows() == 1);
  CHECK(c.cells.N == 4);
  const auto& phi = c.cells.subst2.at(0, 0);
  CHECK(sorted_coeffs(phi) == std::vector<Integer>{0, 1, 1, 2});
  CHECK(phi.at_one() == 4);
  CHECK_FALSE(check_chain_complex(c).has_value());
  CHECK(vertex_orbit_structure(c).faces == std::vector<int>{4});
}

TEST_CASE("penrose complex from geometry") {
  auto c = build_complex(fixture("penrose_triangles"), Variant::fixed_orientation, false);
  auto o = vertex_orbit_structure(c);
  CHECK(o.faces == std::vector<int>(4, 10));
  CHECK(o.edges == std::vector<int>(4, 10));
  CHECK(o.vertices == std::vector<int>{2, 2});
  CHECK_FALSE(check_chain_complex(c).has_value());
  CHECK(c.cells.subst2.at_one() == type_count_matrix(fixture("penrose_triangles")));
  // the quotient complex is the fixed-orientation one with t = 1
  auto q = build_complex(fixture("penrose_triangles"), Variant::quotient, false);
  CHECK(q.cells.subst2.at_one() == c.cells.subst2.at_one());
  CHECK(q.cells.subst1.at_one() == c.cells.subst1.at_one());
  CHECK(q.cells.boundary2.at_one() == c.cells.boundary2.at_one());
  CHECK(q.cells.boundary1.at_one() == c.cells.boundary1.at_one());
}

TEST_CASE("penrose given data") {
  auto sys = fixture("penrose_combinatorial");
  auto c = complex_from_spec(sys, Variant::fixed_orientation);
  CHECK_FALSE(check_chain_complex(c).has_value());
  auto o = vertex_orbit_structure(c);
  CHECK(o.vertices == std::vector<int>{2, 2});
  CHECK(o.faces == std::vector<int>(4, 10));
  auto q = complex_from_spec(sys, Variant::quotient);
  CHECK(q.cells.N == 1);
  CHECK_FALSE(check_chain_complex(q).has_value());
  CHECK_THROWS(complex_from_spec(fixture("chair"), Variant::quotient));
}

TEST_CASE("pinwheel complexes") {
  auto sys = fixture("pinwheel");
  CHECK_THROWS_AS(build_complex(sys, Variant::fixed_orientation, false), std::invalid_argument);
  auto c = build_complex(sys, Variant::quotient, true);
  CHECK(c.collared);
  CHECK(c.cells.face_orbits.size() >= 50);
  CHECK_FALSE(check_chain_complex(c).has_value());
  auto pd = perron_data(c.cells.subst2.at_one());
  REQUIRE(pd.lambda.is_integer());
  CHECK(pd.lambda.rational_value() == Rational(5));
}

TEST_CASE("collared complexes are chain complexes") {
  for (const auto& name : {"chair", "square_2x2", "penrose_triangles"})
    for (auto v : {Variant::fixed_orientation, Variant::quotient}) {
      auto c = build_complex(fixture(name), v, true);
      auto err = check_chain_complex(c);
      CHECK_MESSAGE(!err.has_value(), name << ": " << err.value_or(""));
      // face substitution at t = 1 is the collared count matrix: Perron root c^2
      auto pd = perron_data(c.cells.subst2.at_one());
      auto base = perron_data(type_count_matrix(fixture(name)));
      CHECK(pd.lambda.min_poly() == base.lambda.min_poly());
    }
}

TEST_CASE("seeded: substituted chains stay cycles") {
  // phi_1 maps cycles to cycles: d1 (phi1 z) = phi0 (d1 z)
  std::mt19937 rng(7);
  auto c = build_complex(fixture("chair"), Variant::fixed_orientation, true);
  IntMatrix d1 = c.cells.boundary1.expand(), p1 = c.cells.subst1.expand(), p0 = c.cells.subst0->expand();
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    IntMatrix z(p1.cols(), 1, Integer(0));
    for (size_t i = 0; i < z.rows(); ++i) z(i, 0) = coef(rng);
    CHECK(d1 * (p1 * z) == p0 * (d1 * z));
  }
}

TEST_CASE("complex json") {
  auto c = build_complex(fixture("square_2x2"), Variant::fixed_orientation, false);
  std::string j = complex_json(c);
  CHECK(j.find("\"phi2\"") != std::string::npos);
  CHECK(j.find("\"4\"") != std::string::npos);
}
