#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tilecoh/matrix.hpp"
#include "tilecoh/number_field.hpp"
#include "tilecoh/polynomial.hpp"

namespace tilecoh {

/// Element sum a_i t^i of Z[t]/(t^N - 1).
class GroupRingElement {
 public:
  GroupRingElement() = default;
  explicit GroupRingElement(int n) : c_(static_cast<size_t>(n), Integer(0)) {}
  GroupRingElement(int n, std::vector<Integer> coeffs);
  static GroupRingElement constant(int n, const Integer& a);
  /// a * t^k
  static GroupRingElement monomial(int n, const Integer& a, int k);
  /// Parses sums of terms like "1-t", "-t^7", "2*t^3 + 4". Exponents are taken mod n.
  /// Throws std::invalid_argument with the offending column on bad input.
  static GroupRingElement parse(int n, const std::string& text);

  int order() const { return static_cast<int>(c_.size()); }
  const std::vector<Integer>& coeffs() const { return c_; }
  const Integer& coeff(int i) const { return c_[static_cast<size_t>(i)]; }
  bool is_zero() const;

  GroupRingElement operator-() const;
  GroupRingElement& operator+=(const GroupRingElement& o);
  GroupRingElement& operator-=(const GroupRingElement& o);
  friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
  friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }
  friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b);
  friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) { return a.c_ == b.c_; }

  /// t -> t^{-1}
  GroupRingElement involution() const;
  /// t -> t^u (u coprime to N for an automorphism).
  GroupRingElement substitute_power(int u) const;
  /// Multiply by t^k.
  GroupRingElement shifted(int k) const;
  /// Image in Z[t]/(t^k - 1) for k | N, lifted back (coefficients folded).
  GroupRingElement folded(int k) const;
  Integer at_one() const;
  Poly as_poly() const;
  std::string to_string() const;

 private:
  std::vector<Integer> c_;
};

/// Matrix over Z[t]/(t^N - 1). Row cell i and column cell j carry orbit sizes
/// dividing N; the chain summand of a cell with orbit size k is Z[t]/(t^k - 1).
struct RingMatrix {
  int N = 1;
  Matrix<GroupRingElement> m;
  std::vector<int> row_orbits, col_orbits;

  RingMatrix() = default;
  RingMatrix(int n, std::vector<int> row_orbits, std::vector<int> col_orbits);
  size_t rows() const { return row_orbits.size(); }
  size_t cols() const { return col_orbits.size(); }
  GroupRingElement& at(size_t i, size_t j) { return m(i, j); }
  const GroupRingElement& at(size_t i, size_t j) const { return m(i, j); }

  /// Entries reduced into the target summand (coefficients folded modulo t^k - 1).
  RingMatrix normalized() const;
  /// Expansion over Z: a cell of orbit k becomes k integer coordinates t^0 c .. t^{k-1} c.
  IntMatrix expand() const;
  /// t -> 1; orbit structure dropped (one coordinate per cell).
  IntMatrix at_one() const;
  /// Transpose with t -> t^{-1}.
  RingMatrix adjoint() const;
};

RingMatrix operator*(const RingMatrix& a, const RingMatrix& b);
RingMatrix operator-(const RingMatrix& a, const RingMatrix& b);
bool is_zero(const RingMatrix& a);

/// Irreducible factors Phi_d (d | N) of t^N - 1, ordered by d.
std::vector<Poly> cyclotomic_factors(int N);
std::vector<int> divisors(int N);

/// The field Q[t]/(Phi_d) (no real embedding).
FieldPtr cyclotomic_field(int d);

/// Restriction of a group-ring matrix to the Phi_d isotypic part: only cells whose
/// orbit size is divisible by d survive; entries are reduced modulo Phi_d.
struct ReducedMatrix {
  int d = 1;
  Matrix<FieldElement> m;
  size_t rank = 0;
  std::vector<size_t> kept_rows, kept_cols;
};
ReducedMatrix reduce_mod_factor(const RingMatrix& a, int d);

}  // namespace tilecoh
