#include "doctest.h"

#include <random>

#include "tilecoh/fixtures.hpp"
#include "tilecoh/order_invariant.hpp"

using namespace tilecoh;

namespace {

FieldElement q(const OrderedInvariant& inv, long n, long d) { return FieldElement(inv.perron.field, Rational(n, d)); }

OrderedInvariant quotient_invariant(const std::string& name, bool collared) {
  return ordered_invariant(build_complex(fixture(name), Variant::quotient, collared));
}

}  // namespace

TEST_CASE("chair mu values") {
  auto inv = quotient_invariant("chair", false);
  REQUIRE(inv.arity() == 1);
  CHECK(mu(inv, {{Integer(3)}, 1}) == q(inv, 3, 4));
  CHECK(mu(inv, {{Integer(4)}, 1}) == mu(inv, {{Integer(1)}, 0}));
  CHECK(is_positive(inv, {{Integer(1)}, 0}));
  CHECK_FALSE(is_positive(inv, {{Integer(-1)}, 0}));
  CHECK(is_zero_class(inv, {{Integer(0)}, 5}));
  CHECK(positivity_oracle(inv, {Integer(-1)}) == std::nullopt);
  auto s = add(inv, {{Integer(1)}, 0}, {{Integer(1)}, 2});
  CHECK(s.k == 2);
  CHECK(s.v == std::vector<Integer>{Integer(17)});
}

TEST_CASE("penrose positivity") {
  auto inv = quotient_invariant("penrose_triangles", false);
  auto m = mu_image(inv);
  CHECK_FALSE(m.integer_case);
  CHECK(m.field == "Q(sqrt(5))");
  // sum of the dual cochains is positive from the start
  std::vector<Integer> ones(inv.arity(), Integer(1));
  CHECK(positivity_oracle(inv, ones) == std::optional<int>(0));
  CHECK(is_positive(inv, {ones, 3}));
  // a mixed vector decided by its Perron pairing
  std::vector<Integer> e(inv.arity(), Integer(0));
  e[0] = 5;
  e[1] = -3;
  bool p = mu(inv, {e, 0}).sign() > 0;
  CHECK(is_positive(inv, {e, 0}) == p);
  CHECK(is_positive(inv, negate({e, 0})) == !p);
}

TEST_CASE("coboundaries lie in the kernel") {
  for (const auto& name : {"chair", "penrose_triangles", "square_2x2"})
    for (auto var : {Variant::quotient, Variant::fixed_orientation}) {
      auto c = build_complex(fixture(name), var, false);
      auto inv = ordered_invariant(c);
      for (const auto& x : mu_of_coboundaries(inv, c)) CHECK_MESSAGE(x.is_zero(), name);
    }
}

TEST_CASE("mu is constant along the limit") {
  auto inv = quotient_invariant("penrose_triangles", true);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> d(-9, 9);
  for (int s = 0; s < 20; ++s) {
    LimitElement x{std::vector<Integer>(inv.arity()), s % 4};
    for (auto& a : x.v) a = d(rng);
    LimitElement y{tilecoh::apply(inv.pullback, x.v), x.k + 1};
    CHECK(mu(inv, x) == mu(inv, y));
  }
}

TEST_CASE("ordered group axioms on samples") {
  auto inv = quotient_invariant("penrose_triangles", false);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> d(-6, 6);
  std::vector<LimitElement> xs;
  for (int s = 0; s < 12; ++s) {
    LimitElement x{std::vector<Integer>(inv.arity()), s % 3};
    for (auto& a : x.v) a = d(rng);
    xs.push_back(x);
  }
  auto rep = ordered_axioms_check(inv, xs);
  CHECK(rep.ok());
  CHECK(rep.samples == 12);
}

TEST_CASE("comparisons") {
  auto chair = quotient_invariant("chair", false);
  auto penrose = quotient_invariant("penrose_triangles", false);
  auto square = quotient_invariant("square_2x2", false);
  CHECK(compare_systems(chair, chair).outcome == Outcome::not_distinguished);
  CHECK(compare_systems(chair, square).outcome == Outcome::not_distinguished);
  auto pc = compare_systems(penrose, chair);
  CHECK(pc.outcome == Outcome::distinguished);
  CHECK(pc.reason == "irrational lambda vs integer lambda");
  auto pp = compare_systems(penrose, penrose);
  CHECK(pp.outcome == Outcome::not_distinguished);
  CHECK(pp.a.field == "Q(sqrt(5))");
  auto pw = quotient_invariant("pinwheel", true);
  auto v = compare_systems(pw, chair);
  CHECK(v.outcome == Outcome::distinguished);
  CHECK(v.reason == "prime sets {5} ≠ {2}");
  CHECK(v.to_json().find("\"Distinguished\"") != std::string::npos);
}

TEST_CASE("mu image") {
  auto m = mu_image(quotient_invariant("pinwheel", true));
  CHECK(m.integer_case);
  CHECK(m.lambda_integer == 5);
  CHECK(m.primes == std::vector<Integer>{Integer(5)});
  Integer s = 0;
  for (size_t i = 0; i < m.unit_witness.size(); ++i) s += m.unit_witness[i] * m.generators[i].rational_part().get_num();
  CHECK(s == 1);
  CHECK(prime_factors(Integer(360)) == std::vector<Integer>{Integer(2), Integer(3), Integer(5)});
  CHECK(prime_factors(Integer(13)) == std::vector<Integer>{Integer(13)});
  CHECK_THROWS(prime_factors(Integer(0)));
}

TEST_CASE("ratio invariance") {
  auto inv = quotient_invariant("chair", true);
  std::vector<Integer> ones(inv.arity(), Integer(1)), e(inv.arity(), Integer(0));
  e[0] = 1;
  std::vector<Rational> grid;
  for (int a : {3, 4, 5})
    for (int b : {3, 4, 5}) grid.emplace_back(b, a);
  auto rep = ratio_invariance_check(inv, {ones, 0}, {e, 1}, grid);
  CHECK(rep.ok());
  CHECK(rep.rows.size() == 9);
  // the boundary case is hit exactly when the ratio is on the grid
  auto same = ratio_invariance_check(inv, {ones, 0}, {ones, 0}, {Rational(1), Rational(1, 2), Rational(2)});
  CHECK(same.ok());
  CHECK(same.rows[0].zero_class);
  CHECK_THROWS(ratio_invariance_check(inv, {negate({ones, 0})}, {ones, 0}, grid));
}
