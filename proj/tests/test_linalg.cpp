#include "doctest.h"

#include <random>

#include "tilecoh/group_ring.hpp"
#include "tilecoh/matrix.hpp"

using namespace tilecoh;

namespace {

IntMatrix im(const std::vector<std::vector<long>>& rows) {
  std::vector<std::vector<Integer>> r;
  for (const auto& row : rows) {
    r.emplace_back();
    for (long x : row) r.back().emplace_back(x);
  }
  return IntMatrix::from_rows(r);
}

GroupRingElement mono(int n, long a, int k) { return GroupRingElement::monomial(n, Integer(a), k); }

}  // namespace

TEST_CASE("smith normal form of small matrices") {
  auto s = smith_normal_form(im({{2, 4}, {6, 8}}));
  CHECK(s.D == im({{2, 0}, {0, 4}}));
  CHECK(s.U * im({{2, 4}, {6, 8}}) * s.V == s.D);
  CHECK(abs(determinant(s.U)) == 1);
  CHECK(abs(determinant(s.V)) == 1);
  CHECK(smith_normal_form(identity_matrix(3)).D == identity_matrix(3));
  CHECK(is_zero(smith_normal_form(IntMatrix(2, 3, Integer(0))).D));
  auto t = smith_invariants(im({{2, 0}, {0, 3}}));
  REQUIRE(t.size() == 2);
  CHECK(t[0] == 1);
  CHECK(t[1] == 6);
}

TEST_CASE("rank, determinant, charpoly") {
  CHECK(rank(im({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}})) == 2);
  CHECK(determinant(im({{2, 1}, {1, 1}})) == 1);
  CHECK(determinant(im({{0, 1, 0}, {1, 0, 0}, {0, 0, 3}})) == -3);
  CHECK(charpoly(im({{1, 1}, {1, 0}})) == Poly::from_ints({-1, -1, 1}));
  CHECK(charpoly(im({{4}})) == Poly::from_ints({-4, 1}));
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    size_t n = 1 + rng() % 6;
    IntMatrix m(n, n, Integer(0));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) m(i, j) = static_cast<long>(rng() % 11) - 5;
    Poly p = charpoly(m);
    CHECK(p.degree() == static_cast<int>(n));
    // constant term is (-1)^n det
    Integer d = determinant(m);
    CHECK(p.coeff(0) == Rational(n % 2 ? Integer(-d) : d));
  }
}

TEST_CASE("primitivity") {
  CHECK(is_primitive(im({{4}})));
  CHECK(is_primitive(im({{1, 1}, {1, 0}})));
  CHECK_FALSE(is_primitive(im({{0, 1}, {1, 0}})));
  CHECK_FALSE(is_primitive(im({{1, 1}, {0, 1}})));
  CHECK_THROWS(is_primitive(im({{-1}})));
}

TEST_CASE("group ring arithmetic") {
  auto a = mono(10, 1, 3) + mono(10, 2, 0);
  auto b = mono(10, 1, 9);
  CHECK((a * b) == mono(10, 1, 2) + mono(10, 2, 9));
  CHECK(a.involution() == mono(10, 1, 7) + mono(10, 2, 0));
  CHECK(a.at_one() == 3);
  CHECK(mono(10, 1, 3).folded(2) == mono(10, 1, 1));
  auto f = cyclotomic_factors(10);
  REQUIRE(f.size() == 4);
  Poly prod(Rational(1));
  for (auto& p : f) prod = prod * p;
  CHECK(prod == Poly::monomial(1, 10) - Poly(Rational(1)));
  CHECK(f[3].to_string("t") == "t^4-t^3+t^2-t+1");
  auto g = cyclotomic_factors(4);
  CHECK(g.size() == 3);
  CHECK(g[2] == Poly::from_ints({1, 0, 1}));
}

TEST_CASE("expansion of a free orbit is a circulant block") {
  RingMatrix m(4, {4}, {4});
  m.at(0, 0) = mono(4, 2, 0) + mono(4, 1, 1) + mono(4, 1, 3);
  IntMatrix z = m.expand();
  CHECK(z.rows() == 4);
  Integer colsum = 0;
  for (size_t i = 0; i < 4; ++i) colsum += z(i, 0);
  CHECK(colsum == 4);
  CHECK(z(1, 0) == 1);
  CHECK(z(0, 1) == 1);
  CHECK(z(2, 1) == 1);
  CHECK(m.at_one()(0, 0) == 4);
}
