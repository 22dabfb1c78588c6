#include "doctest.h"

#include <random>

#include "tilecoh/fixtures.hpp"

using namespace tilecoh;

namespace {

const ConditionResult& cond(const ValidationReport& r, int k) {
  for (const auto& c : r.conditions)
    if (c.condition == k) return c;
  throw std::runtime_error("missing condition");
}

FieldElement patch_area(const TilingSystem& sys, const Patch& p) {
  FieldElement s(sys.field, Rational(0));
  for (const auto& t : p) s += twice_signed_area(placed_vertices(sys, t)) * Rational(1, 2);
  return s;
}

}  // namespace

TEST_CASE("fixture child counts") {
  auto counts = [](const std::string& name) {
    std::vector<size_t> out;
    for (const auto& pl : fixture(name).rule.placements) out.push_back(pl.size());
    return out;
  };
  CHECK(counts("chair") == std::vector<size_t>{4});
  CHECK(counts("pinwheel") == std::vector<size_t>{5, 5});
  CHECK(counts("pinwheel_2_3") == std::vector<size_t>{13, 13});
  CHECK(counts("penrose_triangles") == std::vector<size_t>{2, 2, 3, 3});
  CHECK(counts("square_2x2") == std::vector<size_t>{4});
}

TEST_CASE("prototile areas") {
  auto pw = fixture("pinwheel");
  CHECK(area_vector(pw)[0] == FieldElement(pw.field, Rational(1)));
  auto ch = fixture("chair");
  CHECK(area_vector(ch)[0] == FieldElement(ch.field, Rational(3)));
  auto p23 = fixture("pinwheel_2_3");
  CHECK(area_vector(p23)[1] == FieldElement(p23.field, Rational(3)));
}

TEST_CASE("areas are a left eigenvector of the count matrix with eigenvalue c^2") {
  for (const auto& name : {"chair", "pinwheel", "pinwheel_2_3", "penrose_triangles", "square_2x2"}) {
    auto sys = fixture(name);
    IntMatrix m = type_count_matrix(sys);
    auto a = area_vector(sys);
    FieldElement c2 = sys.rule.linear_factor * sys.rule.linear_factor;
    for (size_t j = 0; j < a.size(); ++j) {
      FieldElement s(sys.field, Rational(0));
      for (size_t i = 0; i < a.size(); ++i) s += a[i] * Rational(m(i, j));
      CHECK_MESSAGE(s == c2 * a[j], name);
    }
  }
}

TEST_CASE("validation of the raw fixtures") {
  auto pw = validate_system(fixture("pinwheel"));
  CHECK_FALSE(cond(pw, 2).pass);
  CHECK(cond(pw, 5).pass);
  auto ch = validate_system(fixture("chair"));
  CHECK_FALSE(cond(ch, 2).pass);
  auto pen = validate_system(fixture("penrose_triangles"));
  CHECK(pen.ok());
  // the literal level-1 condition fails for Penrose; phi^2 satisfies it
  CHECK(cond(pen, 3).detail.find("phi^2") != std::string::npos);
  CHECK(validate_system(fixture("square_2x2")).ok());
}

TEST_CASE("symmetric square fails condition 5") {
  auto sq = fixture("square_2x2");
  sq.tiles[0].edge_labels.clear();
  auto r = validate_system(sq);
  CHECK_FALSE(cond(r, 5).pass);
  CHECK_FALSE(r.ok());
}

TEST_CASE("split_edges") {
  auto pw = split_edges(fixture("pinwheel"));
  CHECK(pw.tiles[0].vertices.size() == 4);
  CHECK(pw.tiles[1].vertices.size() == 4);
  CHECK(validate_system(pw).ok());
  // the inserted point is the midpoint of the long leg
  auto raw = fixture("pinwheel");
  const auto& v = raw.tiles[0].vertices;
  Point mid = FieldElement(raw.field, Rational(1, 2)) * (v[1] + v[2]);
  bool found = false;
  for (const auto& q : pw.tiles[0].vertices) found = found || q == mid;
  CHECK(found);

  auto ch = split_edges(fixture("chair"));
  CHECK(ch.tiles[0].vertices.size() == 8);
  CHECK(validate_system(ch).ok());

  auto pen = fixture("penrose_triangles");
  auto pen2 = split_edges(pen);
  for (size_t k = 0; k < pen.tiles.size(); ++k) CHECK(pen2.tiles[k].vertices == pen.tiles[k].vertices);

  CHECK(validate_system(split_edges(fixture("pinwheel_2_3"))).ok());
}

TEST_CASE("supertile sizes") {
  auto pw = fixture("pinwheel");
  CHECK(supertile(pw, 0, 3).size() == 125);
  auto ch = fixture("chair");
  CHECK(supertile(ch, 0, 4).size() == 256);
  auto pen = fixture("penrose_triangles");
  // counts follow the column sums of powers of the count matrix
  IntMatrix m = power(type_count_matrix(pen), 3);
  for (size_t j = 0; j < 4; ++j) {
    Integer s = 0;
    for (size_t i = 0; i < 4; ++i) s += m(i, j);
    CHECK(Integer(supertile(pen, static_cast<int>(j), 3).size()) == s);
  }
  CHECK_THROWS(supertile(ch, 0, -1));
}

TEST_CASE("seeded: supertiles cover c^n T exactly") {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 12; ++trial) {
    auto names = fixture_names();
    std::string name = names[rng() % names.size()];
    if (name == "penrose_combinatorial") name = "penrose_triangles";
    auto sys = fixture(name);
    int type = static_cast<int>(rng() % sys.tiles.size());
    int n = 1 + static_cast<int>(rng() % 2);
    Patch p = supertile(sys, type, n);
    FieldElement cn = sys.rule.linear_factor.pow(n);
    std::vector<Point> big;
    for (const auto& v : sys.tiles[static_cast<size_t>(type)].vertices) big.push_back(cn * v);
    CHECK_MESSAGE(patch_area(sys, p) == twice_signed_area(big) * Rational(1, 2), name);
    for (const auto& t : p) {
      CHECK(t.motion.is_unit());
      for (const auto& q : placed_vertices(sys, t)) CHECK(point_in_polygon(q, big) >= 0);
    }
    // substituting the level-n patch equals the level n+1 supertile
    Patch a = substitute(sys, p), b = supertile(sys, type, n + 1);
    REQUIRE(a.size() == b.size());
    for (size_t k = 0; k < a.size(); ++k) CHECK(a[k].motion == b[k].motion);
  }
}

TEST_CASE("group ring parsing") {
  auto e = GroupRingElement::parse(10, "1 - t + 2*t^3 - t^12");
  CHECK(e.coeff(0) == 1);
  CHECK(e.coeff(1) == -1);
  CHECK(e.coeff(2) == -1);
  CHECK(e.coeff(3) == 2);
  CHECK(GroupRingElement::parse(4, "0").is_zero());
  CHECK_THROWS_AS(GroupRingElement::parse(4, "1 + x"), std::invalid_argument);
  CHECK_THROWS_AS(GroupRingElement::parse(4, "t^"), std::invalid_argument);
  CHECK_THROWS_AS(GroupRingElement::parse(4, ""), std::invalid_argument);
}

TEST_CASE("penrose combinatorial data") {
  auto sys = fixture("penrose_combinatorial");
  REQUIRE(sys.combinatorial.has_value());
  const auto& cs = *sys.combinatorial;
  CHECK(is_zero(cs.boundary1 * cs.boundary2));
  CHECK(is_zero(cs.boundary2 * cs.subst2 - cs.subst1 * cs.boundary2));
  CHECK(is_zero(cs.boundary1 * cs.subst1 - *cs.subst0 * cs.boundary1));
  IntMatrix m = cs.subst2.at_one();
  CHECK(m == type_count_matrix(fixture("penrose_triangles")));
}
