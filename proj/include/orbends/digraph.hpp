#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace orbends {

using Vertex = int;
using Arc = std::pair<Vertex, Vertex>;

/// Finite loopless digraph without multiple arcs. Vertices are dense ids
/// 0..n-1; a subset may be flagged as truncation frontier.
///
/// Paths, distances and connectivity are taken in the underlying undirected
/// graph, where u and v are adjacent iff at least one of (u,v), (v,u) is an arc.
class Digraph {
public:
  Digraph() = default;
  explicit Digraph(int vertex_count);
  /// Throws input_error on loops, duplicate arcs or out-of-range ids.
  Digraph(int vertex_count, std::span<const Arc> arcs,
          std::span<const Vertex> frontier = {});

  int vertex_count() const noexcept { return n_; }
  std::size_t arc_count() const noexcept { return arc_count_; }

  bool has_arc(Vertex u, Vertex v) const;
  std::span<const Vertex> out_neighbors(Vertex v) const;
  std::span<const Vertex> in_neighbors(Vertex v) const;
  /// Sorted neighbours in the underlying undirected graph.
  std::span<const Vertex> neighbors(Vertex v) const;
  /// Arcs in lexicographic order.
  std::vector<Arc> arcs() const;

  bool is_frontier(Vertex v) const;
  std::vector<Vertex> frontier() const;

  /// Subgraph induced on `vertices`; vertex i of the result is vertices[i].
  Digraph induced(std::span<const Vertex> vertices) const;

  bool valid_vertex(Vertex v) const noexcept { return v >= 0 && v < n_; }
  void check_vertex(Vertex v) const;

  friend bool operator==(const Digraph &, const Digraph &) = default;

private:
  int n_ = 0;
  std::size_t arc_count_ = 0;
  std::vector<std::vector<Vertex>> out_;
  std::vector<std::vector<Vertex>> in_;
  std::vector<std::vector<Vertex>> undirected_;
  std::vector<char> frontier_;
};

/// Maximal 2-connected piece of the underlying undirected graph.
struct Lobe {
  std::vector<Vertex> vertices; // sorted
  std::vector<Arc> arcs;        // arcs of g with both ends in `vertices`

  friend bool operator==(const Lobe &, const Lobe &) = default;
};

struct BlockDecomposition {
  std::vector<Vertex> cut_vertices; // sorted
  std::vector<Lobe> lobes;          // ordered lexicographically by vertex list
};

/// Bipartite tree on original vertices (violet) and lobes (blue).
/// Tree node ids: violet v is node v, blue lobe b is node violet_count + b.
struct BlockCutVertexTree {
  int violet_count = 0;
  int blue_count = 0;
  std::vector<std::pair<Vertex, int>> edges; // (violet, blue), sorted
  std::vector<std::vector<int>> adjacency;   // indexed by tree node, sorted

  int node_count() const noexcept { return violet_count + blue_count; }
  bool is_violet(int node) const noexcept { return node < violet_count; }
  int blue_node(int lobe) const noexcept { return violet_count + lobe; }
  int lobe_of(int node) const noexcept { return node - violet_count; }

  friend bool operator==(const BlockCutVertexTree &,
                         const BlockCutVertexTree &) = default;
};

bool is_connected(const Digraph &g);

/// Undirected BFS distance; nullopt when v is unreachable from u.
std::optional<int> undirected_distance(const Digraph &g, Vertex u, Vertex v);

/// Undirected BFS distances from `source`; -1 marks unreachable vertices.
std::vector<int> undirected_distances(const Digraph &g, Vertex source);

/// Biconnected decomposition by the iterative DFS low-link method.
/// Requires a connected graph; lobes always have at least two vertices.
BlockDecomposition cut_vertices_and_lobes(const Digraph &g);

BlockCutVertexTree block_cut_vertex_tree(const Digraph &g);
BlockCutVertexTree block_cut_vertex_tree(int vertex_count,
                                         std::span<const Lobe> lobes);

/// Node sequence of the unique path from a to b in the tree, inclusive.
std::vector<int> tree_path(const BlockCutVertexTree &t, int a, int b);
std::vector<int> tree_distances(const BlockCutVertexTree &t, int source);

struct Valencies {
  int in = 0;
  int out = 0;
  friend bool operator==(const Valencies &, const Valencies &) = default;
};

Valencies in_out_valencies(const Digraph &g, Vertex v);

/// Integer levels with level(head) == level(tail) + 1 for every arc, shifted
/// so the minimum level is 0; nullopt when no such map exists.
std::optional<std::vector<int>> z_grading(const Digraph &g);

inline constexpr int default_isomorphism_limit = 12;

/// Invoked with each colour-preserving isomorphism (map from a-vertices to
/// b-vertices); return false to stop the search.
using IsomorphismVisitor = std::function<bool(std::span<const Vertex>)>;

/// Exhaustive backtracking over arc-preserving bijections a -> b that map
/// every vertex to one of the same colour. Empty colour spans mean
/// uncoloured. Returns the number of isomorphisms visited.
std::size_t for_each_isomorphism(const Digraph &a, const Digraph &b,
                                 std::span<const int> colour_a,
                                 std::span<const int> colour_b,
                                 const IsomorphismVisitor &visit,
                                 int vertex_limit = default_isomorphism_limit);

std::optional<std::vector<Vertex>>
digraph_isomorphic(const Digraph &a, const Digraph &b,
                   int vertex_limit = default_isomorphism_limit);

/// All automorphisms of a small digraph, identity first.
std::vector<std::vector<Vertex>>
all_automorphisms(const Digraph &g, int vertex_limit = default_isomorphism_limit);

bool is_automorphism(const Digraph &g, std::span<const Vertex> map);

Digraph parse_digraph(std::istream &in);
Digraph parse_digraph(const std::string &text);
/// `digraph <n>`, sorted `u v` lines, then sorted `frontier v` lines.
std::string to_text(const Digraph &g);

// Small constructors used by examples, tests and the CLI.
Digraph directed_cycle(int n);
Digraph complete_digraph(int n);
Digraph undirected_path(int n);

} // namespace orbends
