#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "orbends/digraph.hpp"
#include "orbends/permgroup.hpp"

namespace orbends {

/// Finite window of the one-way infinite ladder: 2 x k grid, arcs both ways
/// on rails and rungs, last rung flagged as frontier. Vertex 2i, 2i+1 is rung i.
Digraph ladder_window(int rungs);

/// Lobe Λ of Γ(m, Λ). One-ended lobes need a generating family; the only
/// family shipped is `ladder <k>`.
struct LobeTemplate {
  Digraph lobe;
  int declared_end_count = 0;
  std::vector<Permutation> automorphisms; // empty: exhaustive search
  std::optional<int> ladder_rungs;

  std::size_t size() const { return static_cast<std::size_t>(lobe.vertex_count()); }
};

/// Validates connectivity, absence of cut vertices (>= 2 vertices), the
/// end-count declaration and every listed automorphism.
LobeTemplate make_template(Digraph lobe, int declared_end_count = 0,
                           std::vector<Permutation> automorphisms = {},
                           std::optional<int> ladder_rungs = std::nullopt);

struct TemplateFile {
  LobeTemplate lobe_template;
  int m = 2;
};

/// Digraph block, then `m <int>`, `ends 0|1`, optional `auto <perm>` lines
/// and `family ladder <k>` (which may replace the digraph block).
TemplateFile parse_template(std::istream &in);
TemplateFile parse_template(const std::string &text);

/// Generators of the lobe's automorphism group: the listed ones, or every
/// automorphism found by exhaustive search.
PermGroup automorphism_group(const LobeTemplate &t);

struct LobeInstance {
  std::vector<Vertex> map; // template vertex -> graph vertex; empty if unknown
  bool complete = false;   // no vertex on the frontier
  Vertex parent = -1;      // vertex nearer the root, -1 for none
};

struct TreeLikeTruncation {
  Digraph graph;
  BlockCutVertexTree tree;
  int m = 2;
  Vertex root = 0;
  int depth = 0;
  std::vector<LobeInstance> lobe_instances; // by lobe index of `tree`
  LobeTemplate lobe_template;
  std::vector<int> vertex_depth; // tree distance from the root, halved
};

inline constexpr std::size_t default_vertex_cap = 100000;

/// Breadth-first gluing: m lobes at the root, m-1 more at each new vertex,
/// `depth` lobe layers. Depth 0 is the lone root.
TreeLikeTruncation build_truncation(const LobeTemplate &t, int m, int depth,
                                    std::size_t vertex_cap = default_vertex_cap);

/// Projected vertex count of build_truncation.
std::size_t truncation_vertex_count(std::size_t lobe_size, int m, int depth);

/// Wraps an externally produced frontier-marked window. Complete lobes get a
/// template bijection when one exists.
TreeLikeTruncation adopt_truncation(Digraph graph, const LobeTemplate &t, int m,
                                    Vertex root);

struct TruncationCheck {
  bool interior_degree = true;   // interior violet nodes lie in m lobes
  bool lobes_isomorphic = true;  // complete lobes match the template map
  bool tree_matches = true;      // stored tree equals a fresh decomposition
  std::size_t complete_lobes = 0;
  std::vector<std::string> problems;

  bool ok() const { return interior_degree && lobes_isomorphic && tree_matches; }
};

TruncationCheck check_truncation(const TreeLikeTruncation &trunc);

enum class PrimitivityVerdict { primitive, imprimitive };

enum class CriterionReason {
  lobe_not_primitive,
  lobe_is_odd_prime_directed_cycle,
  lobe_too_small,
};

struct CriterionResult {
  PrimitivityVerdict verdict = PrimitivityVerdict::primitive;
  std::vector<CriterionReason> reasons;
  bool lobe_group_primitive = false;
  std::size_t lobe_group_order = 0;
};

std::string to_string(PrimitivityVerdict v);
std::string to_string(CriterionReason r);

bool is_odd_prime_directed_cycle(const Digraph &g);

CriterionResult connectivity_one_primitivity_criterion(const LobeTemplate &t,
                                                       int m);

/// Image per vertex, -1 where the image leaves the window.
using VertexMap = std::vector<Vertex>;

/// Throws input_error unless `map` is injective where defined and preserves
/// arcs and non-arcs between defined vertices.
void validate_vertex_map(const Digraph &g, std::span<const Vertex> map);

/// Image of a tree node; blue nodes need two defined vertex images.
std::optional<int> tree_node_image(const TreeLikeTruncation &trunc,
                                   std::span<const Vertex> map, int node);

struct Witness {
  Vertex alpha = -1;
  Vertex beta = -1;
  int x = -1; // tree node strictly inside the path alpha..beta
  bool x_is_violet = false;
  std::size_t stabilizer_size = 0;
};

enum class WitnessStatus { found, not_found, inconclusive };

struct WitnessSearchResult {
  WitnessStatus status = WitnessStatus::inconclusive;
  std::optional<Witness> witness;
  std::size_t element_count = 0;
  std::size_t triples_scanned = 0;
};

std::string to_string(WitnessStatus s);

/// Looks for violet beta != alpha and x on the tree path with equal listwise
/// stabilisers of (alpha, x) and (beta, x). Alpha is the truncation root;
/// the smallest (beta, x) wins. Fewer than two elements is inconclusive.
WitnessSearchResult imprimitivity_witness_search(const TreeLikeTruncation &trunc,
                                                 std::span<const VertexMap> elements);

/// Sorted (vertex, image) pairs of the moved vertices.
using SparseMap = std::vector<std::pair<Vertex, Vertex>>;

Vertex apply(const SparseMap &f, Vertex v);
VertexMap to_vertex_map(const SparseMap &f, int vertex_count);

/// Generators of the automorphisms of the truncation fixing its root, by
/// rooted canonical recursion over T. With fix_frontier the frontier set is
/// preserved as well. Throws precondition_error if the root is not the
/// unique centre of T (so the root-fixing group is the whole group).
std::vector<SparseMap> truncation_automorphisms(const TreeLikeTruncation &trunc,
                                                bool fix_frontier);

/// Full element list of a small generated group, as total vertex maps.
std::vector<VertexMap> enumerate_automorphisms(std::span<const SparseMap> gens,
                                               int vertex_count,
                                               std::size_t cap = default_group_cap);

} // namespace orbends
