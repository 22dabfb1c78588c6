#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tilecoh/complex.hpp"
#include "tilecoh/perron.hpp"

namespace tilecoh {

/// Element of the direct limit of top cochains: [(v, k)] with (v, k) ~ (M v, k + 1).
struct LimitElement {
  std::vector<Integer> v;
  int k = 0;
};

/// Perron functional on the top cochains of the quotient complex (t = 1).
struct OrderedInvariant {
  std::string system;
  IntMatrix pullback;  // M = transpose of the face substitution at t = 1
  PerronData perron;

  size_t arity() const { return pullback.rows(); }
};

/// Throws std::invalid_argument if the face substitution is not primitive.
OrderedInvariant ordered_invariant(const APComplex& c);
OrderedInvariant ordered_invariant(const std::string& name, const IntMatrix& face_substitution);

/// lambda^-k r . v, exact in Q(lambda).
FieldElement mu(const OrderedInvariant& inv, const LimitElement& x);

/// Smallest m <= m_max with M^m v entrywise positive, or nullopt.
std::optional<int> positivity_oracle(const OrderedInvariant& inv, const std::vector<Integer>& v, int m_max = 64);

/// x in the positive cone: zero, or mu(x) > 0. Cross-checked against the oracle;
/// a disagreement throws std::logic_error.
bool is_positive(const OrderedInvariant& inv, const LimitElement& x, int m_max = 64);

/// Class of x is zero in the limit (killed by a power of M).
bool is_zero_class(const OrderedInvariant& inv, const LimitElement& x);

LimitElement add(const OrderedInvariant& inv, const LimitElement& a, const LimitElement& b);
LimitElement negate(const LimitElement& a);

struct AxiomReport {
  size_t samples = 0, pairs = 0;
  bool closed_under_addition = true;
  bool antisymmetric = true;
  bool generates = true;
  std::vector<std::string> failures;
  bool ok() const { return closed_under_addition && antisymmetric && generates; }
};

/// H+ + H+ in H+, H+ n -H+ = {0} and H+ - H+ = H, checked on the samples
/// (generation by an explicit decomposition x = (x + p) - p with p positive).
AxiomReport ordered_axioms_check(const OrderedInvariant& inv, const std::vector<LimitElement>& samples);

struct MuImage {
  bool integer_case = false;
  Integer lambda_integer;            // integer case
  std::vector<Integer> primes;       // integer case: Z[1/lambda] = Z[1/p1 ... pk]
  std::vector<Integer> unit_witness; // integer case: r . v = 1
  Poly min_poly;                     // minimal polynomial of lambda
  std::string field;                 // e.g. "Q(sqrt(5))"
  std::vector<FieldElement> generators;  // r . e_i
  std::string describe() const;
};

MuImage mu_image(const OrderedInvariant& inv);

enum class Outcome { distinguished, not_distinguished };

struct Verdict {
  Outcome outcome = Outcome::not_distinguished;
  std::string reason;
  MuImage a, b;
  std::string to_json() const;
};

/// Homeomorphism invariant of the two tiling spaces. NotDistinguished is
/// inconclusive: the invariant is a necessary condition only.
Verdict compare_systems(const OrderedInvariant& a, const OrderedInvariant& b);

struct RatioReport {
  FieldElement ratio;
  struct Row {
    Rational b_over_a;
    int sign = 0;            // sign of mu(a x - b y)
    bool positive = false;   // a x - b y in the cone
    bool zero_class = false;
    bool consistent = true;  // positive <=> b/a <= ratio (boundary: zero class)
  };
  std::vector<Row> rows;
  bool ok() const;
};

/// For each b/a on the grid: a x - b y is positive exactly when b/a <= mu(x)/mu(y).
RatioReport ratio_invariance_check(const OrderedInvariant& inv, const LimitElement& x, const LimitElement& y,
                                   const std::vector<Rational>& grid);

/// mu(delta f_e) for every elementary edge cochain of the complex (all zero when
/// coboundaries lie in the kernel). Fixed-orientation complexes are expanded.
std::vector<FieldElement> mu_of_coboundaries(const OrderedInvariant& inv, const APComplex& c);

/// Distinct prime factors of a positive integer.
std::vector<Integer> prime_factors(Integer n);

}  // namespace tilecoh
