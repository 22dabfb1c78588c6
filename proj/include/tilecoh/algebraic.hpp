#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "tilecoh/polynomial.hpp"

namespace tilecoh {

/// Closed rational interval.
struct Interval {
  Rational lo, hi;
  bool contains_zero() const { return lo <= 0 && hi >= 0; }
  Rational width() const { return hi - lo; }
};

/// Interval enclosure of p(x) for x in [x.lo, x.hi].
Interval eval_interval(const Poly& p, const Interval& x);

/// A real algebraic number: irreducible primitive integer polynomial plus an
/// isolating interval. Rational numbers have degree 1 and a point interval.
///
/// Refinement is cached and shared between copies; the cache is guarded, so
/// concurrent readers are fine and observable values never change.
class AlgebraicNumber {
 public:
  AlgebraicNumber() : AlgebraicNumber(Rational(0)) {}
  explicit AlgebraicNumber(const Rational& r);
  /// `poly` must be irreducible over Q and [lo, hi] must contain exactly one of its
  /// roots, with neither endpoint a root unless lo == hi.
  AlgebraicNumber(Poly poly, Rational lo, Rational hi);

  const Poly& min_poly() const { return poly_; }
  int degree() const { return poly_.degree(); }
  bool is_rational() const { return poly_.degree() == 1; }
  bool is_integer() const;
  /// Requires is_rational().
  Rational rational_value() const;

  /// Current isolating interval (possibly refined).
  Interval interval() const;
  /// Shrink the isolating interval until its width is at most `width`.
  Interval refine_to(const Rational& width) const;
  double to_double() const;

  /// Exact sign of q(alpha). Terminates because q(alpha) = 0 is decided exactly.
  int sign_of(const Poly& q) const;

  std::string to_string() const;

 private:
  struct Cache {
    std::mutex mu;
    Interval iv;
    int sign_lo = 0;
  };
  Poly poly_;
  std::shared_ptr<Cache> cache_;
};

/// Largest real root of a nonzero polynomial as an AlgebraicNumber (its irreducible
/// factor is extracted). Returns nullopt if there is no real root.
std::optional<AlgebraicNumber> largest_real_root(const Poly& p);

/// All real roots of a squarefree polynomial, isolated, ascending. Roots are
/// returned against the squarefree input (not yet reduced to minimal polynomials).
std::vector<Interval> isolate_real_roots(const Poly& squarefree);

/// Number of roots of a real polynomial strictly inside |z| < radius, counted with
/// multiplicity, via the Schur-Cohn/Marden recursion. Returns nullopt when the
/// recursion is singular (a root on or symmetric about the circle); callers perturb
/// the radius and retry.
std::optional<int> roots_inside_disk(const Poly& p, const Rational& radius);

}  // namespace tilecoh
