#include "doctest.h"

#include <fstream>
#include <sstream>

#include "tilecoh/fixtures.hpp"
#include "tilecoh/rule_format.hpp"

using namespace tilecoh;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string error_kind(const std::string& text) {
  try {
    parse_system(text);
  } catch (const FormatError& e) {
    return e.kind() + " " + e.where();
  }
  return "none";
}

const char* kChair = R"({
  "name": "c",
  "field": {"min_poly": [0, 1]},
  "prototiles": [{"id": "L", "vertices": [[["0"],["0"]], [["2"],["0"]], [["2"],["1"]], [["1"],["1"]], [["1"],["2"]], [["0"],["2"]]]}],
  "substitution": {"linear_factor": ["2"], "placements": {"L": [
    {"child": "L", "rotation": [["1"],["0"]], "translation": [["0"],["0"]]},
    {"child": "L", "rotation": [["1"],["0"]], "translation": [["1"],["1"]]},
    {"child": "L", "rotation": [["0"],["1"]], "translation": [["4"],["0"]]},
    {"child": "L", "rotation": [["0"],["-1"]], "translation": [["0"],["4"]]}]}}
})";

}  // namespace

TEST_CASE("round trip of every fixture") {
  for (const auto& name : fixture_names()) {
    TilingSystem s = fixture(name);
    std::string text = serialize_system(s);
    TilingSystem t = parse_system(text);
    CHECK_MESSAGE(structurally_equal(s, t), name);
    CHECK(serialize_system(t) == text);
    // split systems carry extra vertices and must survive too
    if (s.is_geometric()) CHECK(structurally_equal(split_edges(s), parse_system(serialize_system(split_edges(s)))));
  }
}

TEST_CASE("shipped fixture files match the built-in fixtures") {
  for (const auto& name : fixture_names()) {
    std::string path = std::string(TILECOH_FIXTURE_DIR) + "/" + name + ".tsys.json";
    CHECK_MESSAGE(structurally_equal(parse_system(read_file(path)), fixture(name)), path);
  }
}

TEST_CASE("hand-written chair document") {
  TilingSystem s = parse_system(kChair);
  CHECK(s.tiles.size() == 1);
  CHECK(s.field->degree() == 1);
  TilingSystem c = fixture("chair");
  c.name = "c";
  CHECK(structurally_equal(s, c));
}

TEST_CASE("penrose combinatorial block") {
  TilingSystem s = parse_system(read_file(std::string(TILECOH_FIXTURE_DIR) + "/penrose_combinatorial.tsys.json"));
  REQUIRE(s.combinatorial);
  CHECK(s.combinatorial->N == 10);
  CHECK(s.combinatorial->vertex_orbits == std::vector<int>{2, 2});
  CHECK(s.combinatorial->boundary1.at(0, 0) == GroupRingElement::parse(10, "1-t"));
  CHECK(s.combinatorial->boundary2.at(0, 3) == GroupRingElement::parse(10, "-t^7"));
  CHECK(s.combinatorial->subst1.at(3, 3) == GroupRingElement::parse(10, "-t^5"));
  CHECK(s.combinatorial->subst0_derived);
}

TEST_CASE("errors carry a kind and a position") {
  CHECK(error_kind("{\"name\": ") == "syntax byte 10");
  CHECK(error_kind("[]") == "schema /");
  std::string s = kChair;
  auto with = [&](const std::string& from, const std::string& to) {
    std::string t = s;
    auto p = t.find(from);
    REQUIRE(p != std::string::npos);
    t.replace(p, from.size(), to);
    return t;
  };
  CHECK(error_kind(with("\"child\": \"L\", \"rotation\": [[\"0\"],[\"1\"]]", "\"child\": \"Q\", \"rotation\": [[\"0\"],[\"1\"]]")) ==
        "reference /substitution/placements/L/2/child");
  CHECK(error_kind(with("\"linear_factor\": [\"2\"]", "\"linear_factor\": [\"2\", \"0\"]")) ==
        "arity /substitution/linear_factor");
  CHECK(error_kind(with("\"min_poly\": [0, 1]", "\"min_poly\": [-4, 0, 1], \"generator_interval\": [\"1\", \"3\"]")) ==
        "field /field");
  CHECK(error_kind(with("\"linear_factor\": [\"2\"]", "\"linear_factor\": [\"2/0\"]")) ==
        "schema /substitution/linear_factor/0");
  CHECK(error_kind(with("\"name\": \"c\",", "\"name\": \"c\", \"combinatorial\": {},")) == "schema /combinatorial");
  CHECK(error_kind(with("\"placements\": {\"L\"", "\"placements\": {\"M\"")) == "reference /substitution/placements/M");
  // an interval with three roots of x^3 - x is not isolating
  CHECK(error_kind(with("\"min_poly\": [0, 1]", "\"min_poly\": [0, -2, 0, 1], \"generator_interval\": [\"-2\", \"2\"]"))
            .rfind("field", 0) == 0);
}
