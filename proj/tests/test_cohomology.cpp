#include "doctest.h"

#include "tilecoh/cohomology.hpp"
#include "tilecoh/fixtures.hpp"

using namespace tilecoh;

namespace {

const RepresentationRanks& rep(const CohomologyReport& r, int d) {
  for (const auto& x : r.representations)
    if (x.d == d) return x;
  throw std::runtime_error("no such representation");
}

std::array<size_t, 3> free_ranks(const CohomologyReport& r) { return {r.H[0].free_rank, r.H[1].free_rank, r.H[2].free_rank}; }

}  // namespace

TEST_CASE("penrose representation table") {
  auto c = complex_from_spec(fixture("penrose_combinatorial"), Variant::fixed_orientation);
  auto cc = cochain_complex(c);
  auto t1 = representation_ranks(cc, 1);
  CHECK(t1.rank_delta1 == 2);
  CHECK(t1.rank_delta0 == 1);
  auto tm1 = representation_ranks(cc, 2);
  CHECK(tm1.rank_delta1 == 2);
  CHECK(tm1.rank_delta0 == 2);
  auto f5 = representation_ranks(cc, 5);
  CHECK(f5.factor == "t^4+t^3+t^2+t+1");
  CHECK(f5.dims[0] == 0);
  CHECK(f5.rank_delta1 == 4);
  auto f10 = representation_ranks(cc, 10);
  CHECK(f10.rank_delta0 == 0);
  CHECK(f10.rank_delta1 == 3);
  CHECK_THROWS(representation_ranks(cc, 3));
}

TEST_CASE("penrose cohomology") {
  auto c = complex_from_spec(fixture("penrose_combinatorial"), Variant::fixed_orientation);
  auto r = cohomology_groups(c);
  CHECK(free_ranks(r) == std::array<size_t, 3>{1, 5, 8});
  for (const auto& h : r.H) CHECK(h.torsion.empty());
  CHECK(r.H[0].module == "Z");
  CHECK(r.H[1].module == "Z[t]/(t-1) ⊕ Z[t]/(t^4-t^3+t^2-t+1)");
  CHECK(r.H[2].module == "(Z[t]/(t-1))^2 ⊕ (Z[t]/(t+1))^2 ⊕ Z[t]/(t^4-t^3+t^2-t+1)");
  CHECK(r.finite_index_caveat);
  auto l = limit_cohomology(c);
  CHECK(l.branch == "invertible");
  CHECK(free_ranks(l) == free_ranks(r));
  for (const auto& x : l.representations)
    for (const auto& inv : x.invertible) CHECK(inv.value_or(true));

  auto q = limit_cohomology(complex_from_spec(fixture("penrose_combinatorial"), Variant::quotient));
  CHECK(free_ranks(q) == std::array<size_t, 3>{1, 1, 2});
  CHECK(q.H[2].module == "Z^2");
  auto top = top_cohomology_all_orientation(q);
  CHECK(top.free_rank == 2);
  CHECK_THROWS(top_cohomology_all_orientation(l));
}

TEST_CASE("penrose from geometry agrees with the given data") {
  auto g = cohomology_groups(build_complex(fixture("penrose_triangles"), Variant::fixed_orientation, false));
  auto s = cohomology_groups(complex_from_spec(fixture("penrose_combinatorial"), Variant::fixed_orientation));
  CHECK(free_ranks(g) == free_ranks(s));
  for (size_t i = 0; i < 3; ++i) CHECK(g.H[i].module == s.H[i].module);
  // collaring changes the complex but not the limit
  auto col = limit_cohomology(build_complex(fixture("penrose_triangles"), Variant::fixed_orientation, true));
  CHECK(free_ranks(col) == free_ranks(s));
}

TEST_CASE("cochains are the integer transposes") {
  for (const auto& name : {"penrose_combinatorial"}) {
    auto c = complex_from_spec(fixture(name), Variant::fixed_orientation);
    auto cc = cochain_complex(c);
    CHECK(cc.delta0.expand() == c.cells.boundary1.expand().transposed());
    CHECK(cc.delta1.expand() == c.cells.boundary2.expand().transposed());
    CHECK(cc.pullback[0]->expand() == c.cells.subst0->expand().transposed());
  }
  auto ch = build_complex(fixture("chair"), Variant::fixed_orientation, true);
  auto cc = cochain_complex(ch);
  CHECK(cc.delta0.expand() == ch.cells.boundary1.expand().transposed());
  CHECK(cc.pullback[1]->expand() == ch.cells.subst1.expand().transposed());
}

TEST_CASE("rotation invariant part matches the quotient complex") {
  for (const auto& name : {"chair", "penrose_triangles", "square_2x2"}) {
    auto x = limit_cohomology(build_complex(fixture(name), Variant::fixed_orientation, true));
    auto q = limit_cohomology(build_complex(fixture(name), Variant::quotient, true));
    CHECK_MESSAGE(rep(x, 1).h_limit == rep(q, 1).h_limit, name);
    CHECK(free_ranks(q) == *rep(q, 1).h_limit);
  }
}

TEST_CASE("chair and square limits") {
  auto ch = limit_cohomology(build_complex(fixture("chair"), Variant::fixed_orientation, true));
  CHECK(ch.branch == "eventual-image");
  CHECK(free_ranks(ch) == std::array<size_t, 3>{1, 2, 3});
  CHECK_FALSE(ch.H[2].torsion_known);
  auto sq = limit_cohomology(build_complex(fixture("square_2x2"), Variant::fixed_orientation, false));
  CHECK(free_ranks(sq) == std::array<size_t, 3>{1, 2, 1});
  CHECK(sq.branch == "eventual-image");
  auto cc = cochain_complex(build_complex(fixture("square_2x2"), Variant::fixed_orientation, false));
  CHECK(cc.pullback[2]->expand() == IntMatrix(1, 1, Integer(4)));
}

TEST_CASE("direct limits") {
  auto two = direct_limit(IntMatrix(1, 1, Integer(2)));
  CHECK(two.stable_rank == 1);
  CHECK(two.equal({1}, 0, {2}, 1));
  CHECK_FALSE(two.equal({1}, 0, {1}, 1));
  auto s = two.add({1}, 0, {1}, 1);
  CHECK(s.second == 1);
  CHECK(s.first == std::vector<Integer>{3});
  auto zero = direct_limit(IntMatrix(1, 1, Integer(0)));
  CHECK(zero.stable_rank == 0);
  CHECK(zero.equal({5}, 0, {-7}, 3));
  // nilpotent part is killed, the invertible part survives
  auto m = direct_limit(IntMatrix::from_rows({{0, 1, 0}, {0, 0, 0}, {0, 0, 3}}));
  CHECK(m.stable_rank == 1);
  CHECK(m.equal({4, 9, 1}, 0, {0, 0, 3}, 1));
  CHECK_FALSE(m.equal({0, 0, 1}, 0, {0, 0, 1}, 1));
}

TEST_CASE("module strings") {
  CHECK(module_string({}, 4) == "0");
  CHECK(module_string({{"t-1", 3}}, 4) == "Z^3");
  CHECK(module_string({{"t-1", 1}, {"t+1", 2}}, 2) == "Z[t]/(t-1) ⊕ (Z[t]/(t+1))^2");
  CHECK(module_string({{"t-1", 2}}, 1) == "Z^2");
}

TEST_CASE("report json") {
  auto r = cohomology_groups(complex_from_spec(fixture("penrose_combinatorial"), Variant::fixed_orientation));
  auto j = r.to_json();
  CHECK(j.find("\"finite_index_caveat\": true") != std::string::npos);
  CHECK(j.find("t^4-t^3+t^2-t+1") != std::string::npos);
}
