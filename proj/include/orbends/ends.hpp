#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orbends/digraph.hpp"
#include "orbends/treelike.hpp"

namespace orbends {

/// Components of g minus the closed ball B(center, r) that reach the
/// frontier. Throws scale_error when the ball itself meets the frontier.
std::size_t count_ends_at_radius(const Digraph &g, Vertex center, int r);

/// count_ends_at_radius for r = 1..r_max.
std::vector<std::size_t> end_sequence(const Digraph &g, Vertex center, int r_max);

bool is_non_decreasing(std::span<const std::size_t> values);

/// Largest r whose ball around `center` avoids the frontier (-1 if the
/// centre itself is on the frontier).
int interior_radius(const Digraph &g, Vertex center);

enum class EndKind { thin_ray, thick_lobe };

struct EndHandle {
  EndKind kind = EndKind::thin_ray;
  std::vector<int> ray; // tree nodes from the root: violet, blue, violet, ...
  int lobe = -1;        // blue tree node for thick handles
  int depth = 0;        // violet steps along the ray; 0 for thick handles

  static EndHandle thin(std::vector<int> ray);
  static EndHandle thick(int blue_node);
};

/// Throws input_error unless the ray is a simple T-path from the root ending
/// at a violet node, or the lobe is a blue node.
void validate_handle(const TreeLikeTruncation &trunc, const EndHandle &e);

/// Ray of the given depth that always takes the smallest child.
EndHandle canonical_ray(const TreeLikeTruncation &trunc, int depth);

/// Every root ray of exactly `depth` violet steps, lexicographic.
std::vector<EndHandle> thin_handles(const TreeLikeTruncation &trunc, int depth);

/// One thick handle per lobe; requires a declared one-ended template.
std::vector<EndHandle> thick_handles(const TreeLikeTruncation &trunc);

enum class EndType { thin, thick };

EndType classify_end(const TreeLikeTruncation &trunc, const EndHandle &e);

enum class EndOrbitClass { single, countably_infinite, continuum };
enum class GroupContext { one_ended, closed_primitive_tree_like };

std::string to_string(EndType t);
std::string to_string(EndOrbitClass c);
std::string to_string(GroupContext c);

enum class GrowthMode {
  listed,    // direct images under each listed element
  generated, // orbit under the group generated by the list
};

struct GrowthRow {
  int depth = 0;
  std::size_t images = 0;
  std::size_t escaped = 0; // listed mode: elements whose image left the window
};

struct PrefixGrowth {
  GrowthMode mode = GrowthMode::listed;
  bool list_limited = false;
  std::vector<GrowthRow> rows; // depth 1..depth_max
};

/// Distinct images of the depth-d prefix (first 2d+1 nodes) of a thin ray,
/// for d = 1..depth_max. Throws scale_error if the ray is shorter than
/// depth_max.
PrefixGrowth end_orbit_prefix_growth(const TreeLikeTruncation &trunc,
                                     const EndHandle &e,
                                     std::span<const VertexMap> elements,
                                     int depth_max);

/// Generated-mode growth for sparse generators (large truncations).
PrefixGrowth end_orbit_prefix_growth(const TreeLikeTruncation &trunc,
                                     const EndHandle &e,
                                     std::span<const SparseMap> generators,
                                     int depth_max);

struct EndOrbitVerdict {
  EndOrbitClass orbit_class = EndOrbitClass::single;
  std::string reason;
  std::optional<PrefixGrowth> growth;
};

/// OneEnded with a tree-like truncation is inconsistent (input_error); use
/// one_ended_trichotomy for one-ended digraphs. Growth evidence uses
/// `generators` when given, else truncation_automorphisms(trunc, true).
EndOrbitVerdict end_orbit_trichotomy(const TreeLikeTruncation &trunc,
                                     const EndHandle &e, GroupContext context,
                                     int growth_depth = 3,
                                     const std::vector<SparseMap> *generators = nullptr);

/// Requires one frontier component at every radius 1..interior_radius
/// (at least one radius); otherwise input_error.
EndOrbitVerdict one_ended_trichotomy(const Digraph &g, Vertex center);

} // namespace orbends
