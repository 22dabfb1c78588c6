#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tilecoh/tiling.hpp"

namespace tilecoh {

/// Group generated by the rotations of tiles in the supertiles phi^n T (prototile
/// frames). Finite groups are cyclic; elements[k] = generator^k.
struct OrientationGroup {
  bool finite = true;
  int N = 1;
  std::vector<RigidMotion> elements;
  /// Rotations observed while scanning; for an infinite group the first one found
  /// that is not a root of unity.
  std::vector<RigidMotion> generators;
  std::optional<RigidMotion> witness;
  /// k with elements[k] equal to the rotation part of g; throws if absent.
  int index_of(const RigidMotion& g) const;
  std::string describe() const;
};

OrientationGroup orientation_group(const TilingSystem& sys);

/// A tile with all tiles sharing a point with it, in the center's frame.
struct Corona {
  int center = 0;
  std::vector<PlacedTile> neighbors;
  std::string key;
};

enum class CoronaMode { per_orientation, up_to_rotation };

struct CoronaOptions {
  /// Closure rounds before giving up.
  int max_rounds = 64;
  size_t max_coronas = 20000;
  /// Supertile level tried when looking for a seed corona.
  int max_seed_level = 6;
};

struct CoronaSet {
  std::vector<Corona> coronas;  // ordered by (center type, discovery)
  int rounds = 0;
  bool complete = false;
  size_t up_to_rotation = 0;
  /// up_to_rotation * N for a finite orientation group, else nullopt.
  std::optional<size_t> per_orientation;
  /// Coronas identified further by the reflection symmetries of the prototiles.
  size_t up_to_reflection = 0;
  size_t count(CoronaMode m) const { return m == CoronaMode::up_to_rotation ? up_to_rotation : per_orientation.value_or(0); }
  int index_of(const std::string& key) const;
};

/// Throws std::runtime_error (with the partial count) when the budget runs out.
CoronaSet enumerate_coronas(const TilingSystem& sys, const CoronaOptions& opt = {});

/// Two tiles sharing a full edge: edge ea of tile a (identity frame) is edge eb of
/// tile b placed at `rel`.
struct Adjacency {
  int a = 0, ea = 0, b = 0, eb = 0;
  RigidMotion rel;
};

/// All legal edge contacts between prototiles.
std::vector<Adjacency> adjacencies(const TilingSystem& sys, const CoronaSet& coronas);

struct CollaredSystem {
  TilingSystem base;
  TilingSystem collared;
  std::vector<int> base_type;  // per collared type
  CoronaSet coronas;
  std::vector<Adjacency> contacts;  // between collared types
};

CollaredSystem collar(const TilingSystem& sys, const CoronaOptions& opt = {});

struct BorderForcing {
  bool forced = false;
  int level = 0;  // N when forced, else the bound searched
};

/// Smallest N <= n_max such that the level-0 tiles around every level-N supertile
/// are determined by its type. `base_type` (optional) projects types before comparing.
BorderForcing forces_border(const TilingSystem& sys, int n_max, const std::vector<int>& base_type = {});

enum class Variant { fixed_orientation, quotient };

struct APComplex {
  std::string system;
  Variant variant = Variant::quotient;
  /// Cells and matrices; N = 1 for the quotient complex.
  CombinatorialSpec cells;
  bool collared = false;
  size_t folded_edges = 0;
  std::vector<std::string> notes;
};

/// Anderson-Putnam complex. fixed_orientation needs a finite orientation group.
APComplex build_complex(const TilingSystem& sys, Variant variant, const std::vector<Adjacency>& contacts,
                        const OrientationGroup& group);
/// Convenience: split edges, optionally collar, then build.
APComplex build_complex(const TilingSystem& sys, Variant variant, bool collared, const CoronaOptions& opt = {});
/// A combinatorial system taken as given (fixed orientation) or with t -> 1 (quotient).
APComplex complex_from_spec(const TilingSystem& sys, Variant variant);

struct OrbitStructure {
  std::vector<int> faces, edges, vertices;
};
OrbitStructure vertex_orbit_structure(const APComplex& c);

/// Matrices must satisfy d1 d2 = 0 and d_i phi_i = phi_{i-1} d_i; returns the first failure.
std::optional<std::string> check_chain_complex(const APComplex& c);

std::string complex_json(const APComplex& c);

}  // namespace tilecoh
