#include "doctest.h"

#include "tilecoh/algebraic.hpp"
#include "tilecoh/factor.hpp"
#include "tilecoh/number_field.hpp"
#include "tilecoh/polynomial.hpp"

using namespace tilecoh;

TEST_CASE("t^10 - 1 splits into four cyclotomic factors") {
  Poly p = Poly::monomial(1, 10) - Poly::monomial(1, 0);
  auto f = factor(p);
  REQUIRE(f.size() == 4);
  int degs = 0;
  for (auto& x : f) {
    CHECK(x.multiplicity == 1);
    degs += x.poly.degree();
    bool cyc = false;
    for (int d : {1, 2, 5, 10}) cyc = cyc || (x.poly == cyclotomic(d));
    CHECK(cyc);
  }
  CHECK(degs == 10);
}

TEST_CASE("factor finds nontrivial splittings and multiplicities") {
  // (x^2 - 2)^2 (x^4 - 10x^2 + 1) (3x + 1)
  Poly a = Poly::from_ints({-2, 0, 1});
  Poly b = Poly::from_ints({1, 0, -10, 0, 1});
  Poly c = Poly::from_ints({1, 3});
  auto f = factor(a * a * b * c);
  REQUIRE(f.size() == 3);
  int total = 0;
  for (auto& x : f) total += x.poly.degree() * x.multiplicity;
  CHECK(total == 9);
  CHECK(is_irreducible(b));
  CHECK_FALSE(is_irreducible(Poly::from_ints({1, 0, 0, 0, 1}) * Poly::from_ints({1, 1})));
  // x^4 + 1 is irreducible over Q but reducible mod every prime
  CHECK(is_irreducible(Poly::from_ints({1, 0, 0, 0, 1})));
}

TEST_CASE("largest real root of x^2 - 3x + 1") {
  auto r = largest_real_root(Poly::from_ints({1, -3, 1}));
  REQUIRE(r);
  CHECK(r->to_double() == doctest::Approx(2.618033988749895));
  auto q = largest_real_root(Poly::from_ints({-6, 1, 1}));
  REQUIRE(q);
  CHECK(q->is_integer());
  CHECK(q->rational_value() == 2);
}

TEST_CASE("roots inside a disk") {
  CHECK(roots_inside_disk(Poly::from_ints({-1, 2}), Rational(1)) == 1);
  CHECK(roots_inside_disk(Poly::from_ints({-3, 1}), Rational(1)) == 0);
  // (x - 1/2)(x - 3)(x + 2/3)
  Poly p = Poly::from_ints({-1, 2}) * Poly::from_ints({-3, 1}) * Poly::from_ints({2, 3});
  CHECK_FALSE(roots_inside_disk(p, Rational(1)).has_value());  // |a0| = |a3|
  CHECK(roots_inside_disk(p, Rational(11, 10)) == 2);
  CHECK(roots_inside_disk(p, Rational(4)) == 3);
  // x^2 + 4: |roots| = 2
  CHECK(roots_inside_disk(Poly::from_ints({4, 0, 1}), Rational(3)) == 2);
  CHECK(roots_inside_disk(Poly::from_ints({4, 0, 1}), Rational(1)) == 0);
}

TEST_CASE("arithmetic in Q(sqrt5)") {
  auto K = std::make_shared<const NumberField>(Poly::from_ints({-5, 0, 1}), Rational(2), Rational(3));
  FieldElement s(K, std::vector<Rational>{0, 1});
  FieldElement one(K, Rational(1));
  CHECK(s * s == FieldElement(K, Rational(5)));
  FieldElement tau = (one + s) * Rational(1, 2);
  CHECK(tau * tau == tau + one);
  CHECK((one / tau) == tau - one);
  CHECK(tau.sign() == 1);
  CHECK((one - tau).sign() == -1);
  CHECK(compare(s, FieldElement(K, Rational(9, 4))) == -1 + 2 * (s.to_double() > 2.25));
  CHECK(tau.pow(-2) * tau.pow(2) == one);
}

TEST_CASE("isolated roots of a quartic") {
  auto r = isolate_real_roots(Poly::from_ints({5, 0, -5, 0, 1}));
  CHECK(r.size() == 4);
}
