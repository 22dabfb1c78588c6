#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tilecoh/geometry.hpp"
#include "tilecoh/group_ring.hpp"

namespace tilecoh {

struct ProtoTile {
  std::string id;
  std::vector<Point> vertices;  // counterclockwise
  std::vector<std::string> edge_labels;
};

/// A child tile of phi(T): prototile `type` placed by `motion` inside c * T.
struct Placement {
  int type = 0;
  RigidMotion motion;
};

struct SubstitutionRule {
  FieldElement linear_factor;
  std::vector<std::vector<Placement>> placements;  // indexed by prototile
};

/// Cells and matrices given directly (no geometry). Matrices are over
/// Z[t]/(t^N - 1); orbit sizes give the chain summands.
struct CombinatorialSpec {
  int N = 1;
  std::vector<int> face_orbits, edge_orbits, vertex_orbits;
  std::vector<std::string> face_names, edge_names, vertex_names;
  RingMatrix boundary1, boundary2;
  std::optional<RingMatrix> subst0;
  /// subst0 was solved for rather than read off the source data.
  bool subst0_derived = false;
  RingMatrix subst1, subst2;
};

struct TilingSystem {
  std::string name;
  FieldPtr field;
  std::vector<ProtoTile> tiles;
  SubstitutionRule rule;
  std::optional<CombinatorialSpec> combinatorial;

  bool is_geometric() const { return !combinatorial.has_value(); }
  int tile_index(const std::string& id) const;
};

struct PlacedTile {
  int type = 0;
  RigidMotion motion;
};
using Patch = std::vector<PlacedTile>;

std::vector<Point> placed_vertices(const TilingSystem& sys, const PlacedTile& t);

/// phi applied once to every tile of a patch (the result lives in the frame scaled by c).
Patch substitute(const TilingSystem& sys, const Patch& p);
/// phi^n T in the frame of c^n T.
Patch supertile(const TilingSystem& sys, int type, int n);
/// Entry (i, j) = number of type-i children in phi(type j).
IntMatrix type_count_matrix(const TilingSystem& sys);
std::vector<FieldElement> area_vector(const TilingSystem& sys);

struct ConditionResult {
  int condition = 0;
  bool pass = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ConditionResult> conditions;
  /// Smallest n with a parallel same-type tile in phi^n T, or nullopt at the bound.
  std::vector<std::optional<int>> parallel_witness;
  bool ok() const;
};

struct ValidationOptions {
  int n_max = 6;
  /// Supertile level used for the edge-to-edge scan.
  int contact_level = 2;
};

ValidationReport validate_system(const TilingSystem& sys, const ValidationOptions& opt = {});

/// Inserts vertices on prototile edges until every contact inside the scanned
/// supertiles is full edge to full edge and c * (vertex) is always a child vertex.
/// Throws std::runtime_error when the vertex budget is exhausted.
TilingSystem split_edges(const TilingSystem& sys, int vertex_budget = 64, int contact_level = 2);

/// First T-junction found in a patch: a vertex strictly inside an edge of another tile.
struct EdgeDefect {
  size_t tile_a = 0, edge_a = 0;  // tile whose edge contains the foreign vertex
  size_t tile_b = 0, vertex_b = 0;
};
std::optional<EdgeDefect> find_t_junction(const TilingSystem& sys, const Patch& p);

}  // namespace tilecoh
