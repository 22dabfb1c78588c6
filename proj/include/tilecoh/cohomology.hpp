#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tilecoh/complex.hpp"
#include "tilecoh/group_ring.hpp"
#include "tilecoh/matrix.hpp"

namespace tilecoh {

/// delta^i : C^i -> C^{i+1} are the adjoints (transpose, t -> 1/t) of the boundary
/// maps; pullback[i] is the adjoint of phi_i.
struct CochainComplex {
  int N = 1;
  std::array<std::vector<int>, 3> orbits;
  RingMatrix delta0, delta1;
  std::array<std::optional<RingMatrix>, 3> pullback;

  const RingMatrix& delta(int i) const { return i == 0 ? delta0 : delta1; }
};

/// Throws std::logic_error if delta1 delta0 != 0 or a pullback fails to commute.
CochainComplex cochain_complex(const APComplex& c);

/// Ranks over Q[t]/(Phi_d) for one irreducible factor of t^N - 1.
struct RepresentationRanks {
  int d = 1;
  std::string factor;  // Phi_d in t
  int degree = 1;      // phi(d)
  std::array<size_t, 3> dims{};
  size_t rank_delta0 = 0, rank_delta1 = 0;
  std::array<size_t, 3> h{};
  /// ranks in the direct limit (set by limit_cohomology)
  std::optional<std::array<size_t, 3>> h_limit;
  /// pullback i restricted to this representation is invertible (unset: no pullback)
  std::array<std::optional<bool>, 3> invertible;
};

RepresentationRanks representation_ranks(const CochainComplex& cc, int d);

struct DegreeGroup {
  size_t free_rank = 0;
  std::vector<Integer> torsion;  // invariant factors > 1
  bool torsion_known = true;
  std::string module;            // decomposition by representation, up to finite index
  std::string describe() const;
};

struct CohomologyReport {
  std::string system;
  std::string complex;  // "fixed_orientation" or "quotient"
  int N = 1;
  std::array<DegreeGroup, 3> H;
  std::vector<RepresentationRanks> representations;
  /// module strings are only correct up to finite index
  bool finite_index_caveat = false;
  /// for limits: "invertible" (H of the space equals H of the complex) or "eventual-image"
  std::string branch;
  std::vector<std::string> notes;

  std::string to_json() const;
};

/// Cohomology of the complex itself: SNF over Z plus the per-representation table.
CohomologyReport cohomology_groups(const APComplex& c);

/// Direct limit of Z^n under M, elements are classes [(v, k)] with (v, k) ~ (M v, k + 1).
struct LimitGroup {
  IntMatrix M;
  size_t n = 0;
  size_t stable_rank = 0;  // rank of M^n
  bool equal(const std::vector<Integer>& v, int k, const std::vector<Integer>& w, int l) const;
  /// [(v, k)] + [(w, l)] as a pair at level max(k, l)
  std::pair<std::vector<Integer>, int> add(const std::vector<Integer>& v, int k, const std::vector<Integer>& w, int l) const;
};
LimitGroup direct_limit(const IntMatrix& M);

/// Cohomology of the tiling space as the direct limit under the pullbacks.
CohomologyReport limit_cohomology(const APComplex& c);

/// Top cohomology of the space with all orientations, from the limit cohomology of
/// the quotient complex (its degree-2 group, up to finite extensions).
DegreeGroup top_cohomology_all_orientation(const CohomologyReport& quotient_limit);

/// Display form of a decomposition, e.g. "(Z[t]/(t-1))^2 + Z[t]/(t+1)" with the
/// direct-sum sign; a purely trivial module is written Z^r.
std::string module_string(const std::vector<std::pair<std::string, size_t>>& parts, int N);

}  // namespace tilecoh
