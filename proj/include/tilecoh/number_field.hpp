#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tilecoh/algebraic.hpp"
#include "tilecoh/polynomial.hpp"

namespace tilecoh {

/// A real number field K = Q[x]/(m(x)) with a distinguished real embedding
/// x -> generator. Points of the plane are pairs of elements of K.
class NumberField {
 public:
  /// `min_poly` must be monic with integer coefficients and irreducible over Q
  /// (checked). `generator` isolates the embedded root.
  NumberField(Poly min_poly, Rational lo, Rational hi);
  /// Field without a chosen real embedding (e.g. Q(zeta_d) for d > 2); exact
  /// arithmetic only, sign() is unavailable.
  explicit NumberField(Poly min_poly);
  static std::shared_ptr<const NumberField> rationals();

  int degree() const { return poly_.degree(); }
  const Poly& min_poly() const { return poly_; }
  bool has_embedding() const { return embedded_; }
  const AlgebraicNumber& generator() const;
  /// The isolating interval given at construction (not the refined one).
  const Interval& declared_interval() const { return declared_; }
  /// Reduced representative of p(generator) as a coefficient vector of length degree().
  std::vector<Rational> reduce(const Poly& p) const;

  bool same_as(const NumberField& o) const;

 private:
  Poly poly_;
  bool embedded_ = true;
  AlgebraicNumber gen_;
  Interval declared_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

/// Element of a NumberField in the power basis. Equality is exact; comparisons
/// are decided by refining the generator's isolating interval.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(FieldPtr field, const Rational& value);
  FieldElement(FieldPtr field, std::vector<Rational> coeffs);

  const FieldPtr& field() const { return field_; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Poly as_poly() const { return Poly(c_); }
  bool is_zero() const;
  bool is_rational() const;
  Rational rational_part() const { return c_.empty() ? Rational(0) : c_[0]; }

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);
  FieldElement& operator*=(const Rational& r);
  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  friend FieldElement operator*(FieldElement a, const Rational& b) { return a *= b; }
  friend bool operator==(const FieldElement& a, const FieldElement& b) { return a.c_ == b.c_; }

  FieldElement inverse() const;
  FieldElement pow(int e) const;

  int sign() const;
  double to_double() const;
  /// Exact, canonical text key (coefficients joined by ',').
  std::string key() const;
  std::string to_string() const;

 private:
  FieldPtr field_;
  std::vector<Rational> c_;
};

int compare(const FieldElement& a, const FieldElement& b);

}  // namespace tilecoh
