#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tilecoh/algebraic.hpp"
#include "tilecoh/matrix.hpp"
#include "tilecoh/number_field.hpp"

namespace tilecoh {

/// Perron eigenvalue and normalized left eigenvector of a primitive matrix.
///
/// `r[i]` lives in Q(lambda). In the integer case the entries are coprime
/// integers. Otherwise `r_numerators[i]` is an integer polynomial q_i with
/// r[i] = q_i(lambda) / lambda^p and p the largest power of lambda in any q_i.
struct PerronData {
  AlgebraicNumber lambda;
  FieldPtr field;
  std::vector<FieldElement> r;
  bool integer_case = false;
  std::vector<Poly> r_numerators;
  int lambda_power = 0;

  FieldElement lambda_element() const;
  /// r . v for an integer vector.
  FieldElement pair(const std::vector<Integer>& v) const;
  std::string describe() const;
};

/// Throws std::invalid_argument for non-primitive input.
PerronData perron_data(const IntMatrix& m);

/// True when every root of the characteristic polynomial other than lambda has
/// modulus strictly below lambda (decided with disk root counts).
bool perron_root_dominates(const IntMatrix& m, const AlgebraicNumber& lambda);

/// Field Q(a) as a NumberField with a's embedding; a must be an algebraic integer.
FieldPtr field_of(const AlgebraicNumber& a);

/// Order of the rotation cos + i sin (cos^2 + sin^2 = 1 required) if it is a root of
/// unity, nullopt otherwise.
std::optional<int> root_of_unity_order(const FieldElement& cos, const FieldElement& sin);
/// Minimal polynomial over Q of cos + i sin.
Poly rotation_min_poly(const FieldElement& cos, const FieldElement& sin);

/// Roots in K of a rational polynomial g, by factoring the norm of g(y - s*alpha).
std::vector<FieldElement> roots_in_field(const Poly& g, const FieldPtr& K);

/// Q(a) == Q(b) as subfields of R (both irrational).
bool field_equal(const AlgebraicNumber& a, const AlgebraicNumber& b);

}  // namespace tilecoh
