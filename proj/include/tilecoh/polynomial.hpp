#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace tilecoh {

using Integer = mpz_class;
using Rational = mpq_class;

/// Dense univariate polynomial over Q, coefficients stored lowest degree first.
/// The zero polynomial has an empty coefficient vector and degree -1.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);
  Poly(const Rational& constant);  // NOLINT(google-explicit-constructor)

  static Poly monomial(const Rational& c, int degree);
  static Poly x() { return monomial(1, 1); }
  static Poly from_ints(const std::vector<long>& coeffs);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Rational& lc() const { return c_.back(); }
  Rational coeff(int i) const;
  const std::vector<Rational>& coeffs() const { return c_; }

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  Poly scaled(const Rational& s) const;
  Poly derivative() const;
  Poly monic() const;
  Rational eval(const Rational& at) const;
  /// p(q(x))
  Poly compose(const Poly& q) const;
  /// p(-x)
  Poly reflected() const;

  bool is_integral() const;
  /// Integer content times sign of lc; primitive_part() * content() == *this.
  Rational content() const;
  /// Integer polynomial with coprime coefficients and positive leading coefficient.
  Poly primitive_part() const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
/// Monic gcd (zero if both are zero).
Poly gcd(const Poly& a, const Poly& b);
/// Returns (g, s, t) with s*a + t*b = g, g monic.
struct ExtendedGcd {
  Poly g, s, t;
};
ExtendedGcd extended_gcd(const Poly& a, const Poly& b);

/// Squarefree part (monic): product of the distinct irreducible factors.
Poly squarefree_part(const Poly& p);

/// The n-th cyclotomic polynomial.
Poly cyclotomic(int n);

/// Euler's totient.
int euler_phi(int n);

Integer gcd(const Integer& a, const Integer& b);

}  // namespace tilecoh
