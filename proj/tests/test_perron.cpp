#include "doctest.h"

#include "tilecoh/perron.hpp"

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

FieldPtr sqrt_field(long d, long lo, long hi) {
  return std::make_shared<const NumberField>(Poly::from_ints({-d, 0, 1}), Rational(lo), Rational(hi));
}

}  // namespace

TEST_CASE("Perron data of the Fibonacci matrix") {
  auto pd = perron_data(im({{1, 1}, {1, 0}}));
  CHECK(pd.lambda.min_poly() == Poly::from_ints({-1, -1, 1}));
  CHECK_FALSE(pd.integer_case);
  REQUIRE(pd.r.size() == 2);
  // r proportional to (lambda, 1)
  CHECK(pd.r[0] == pd.r[1] * pd.lambda_element());
  CHECK(pd.lambda_power == 1);
  // r (lambda I - M) = 0
  FieldElement L = pd.lambda_element();
  CHECK(pd.r[0] * L == pd.r[0] + pd.r[1]);
  CHECK(pd.r[1] * L == pd.r[0]);
}

TEST_CASE("Perron data, integer case") {
  auto pd = perron_data(im({{4}}));
  CHECK(pd.integer_case);
  CHECK(pd.lambda.rational_value() == 4);
  CHECK(pd.r[0].rational_part() == 1);
  auto q = perron_data(im({{2, 2}, {1, 3}}));  // lambda = 4, left vector (1, 2)
  CHECK(q.integer_case);
  CHECK(q.r[0].rational_part() == 1);
  CHECK(q.r[1].rational_part() == 2);
  CHECK_THROWS(perron_data(im({{0, 1}, {1, 0}})));
}

TEST_CASE("root of unity test") {
  auto K = sqrt_field(5, 2, 3);
  FieldElement s5(K, std::vector<Rational>{0, 1});
  FieldElement one(K, Rational(1));
  // (2 + i)/sqrt5
  FieldElement c = FieldElement(K, Rational(2)) / s5, s = one / s5;
  // z + 1/z = 4/sqrt5 gives 5z^4 - 6z^2 + 5
  CHECK(rotation_min_poly(c, s) == Poly::from_ints({5, 0, -6, 0, 5}));
  CHECK_FALSE(root_of_unity_order(c, s).has_value());
  CHECK(root_of_unity_order(-one, FieldElement(K, Rational(0))) == 2);
  CHECK(root_of_unity_order(FieldElement(K, Rational(0)), one) == 4);
  // zeta_10 = cos 36 + i sin 36, cos 36 = (1 + sqrt5)/4, sin 36 = sqrt((5 - sqrt5)/8) lives in Q(u)
  auto U = std::make_shared<const NumberField>(Poly::from_ints({5, 0, -5, 0, 1}), Rational(1), Rational(3, 2));
  FieldElement u(U, std::vector<Rational>{0, 1});
  FieldElement c36 = (FieldElement(U, Rational(3)) - u * u) * Rational(1, 2);
  FieldElement s36 = u * Rational(1, 2);
  CHECK(root_of_unity_order(c36, s36) == 10);
}

TEST_CASE("field equality") {
  auto tau2 = *largest_real_root(Poly::from_ints({1, -3, 1}));
  AlgebraicNumber r5(Poly::from_ints({-5, 0, 1}), Rational(2), Rational(3));
  AlgebraicNumber r2(Poly::from_ints({-2, 0, 1}), Rational(1), Rational(2));
  AlgebraicNumber r3(Poly::from_ints({-3, 0, 1}), Rational(1), Rational(2));
  CHECK(field_equal(tau2, r5));
  CHECK_FALSE(field_equal(r2, r3));
  CHECK(field_equal(tau2, tau2));
  AlgebraicNumber half_r5(Poly::from_ints({-5, 0, 4}), Rational(1), Rational(2));  // sqrt5 / 2
  CHECK(field_equal(half_r5, r5));
  // real cube roots of 2 and 4 generate the same field
  AlgebraicNumber c2(Poly::from_ints({-2, 0, 0, 1}), Rational(1), Rational(2));
  AlgebraicNumber c4(Poly::from_ints({-4, 0, 0, 1}), Rational(1), Rational(2));
  CHECK(field_equal(c2, c4));
  CHECK_THROWS(field_equal(AlgebraicNumber(Rational(2)), r5));
}

TEST_CASE("roots of x^2 - 5 in Q(sqrt5)") {
  auto K = sqrt_field(5, 2, 3);
  auto rs = roots_in_field(Poly::from_ints({-5, 0, 1}), K);
  CHECK(rs.size() == 2);
  CHECK(roots_in_field(Poly::from_ints({-2, 0, 1}), K).empty());
}
