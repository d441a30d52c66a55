#include "orbends/digraph.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <numeric>
#include <sstream>

#include "orbends/errors.hpp"
#include "text_lines.hpp"

namespace orbends {

Digraph::Digraph(int vertex_count) : Digraph(vertex_count, {}, {}) {}

Digraph::Digraph(int vertex_count, std::span<const Arc> arcs,
                 std::span<const Vertex> frontier)
    : n_(vertex_count) {
  if (vertex_count < 0)
    throw input_error("negative vertex count");
  out_.resize(n_);
  in_.resize(n_);
  undirected_.resize(n_);
  frontier_.assign(n_, 0);
  for (auto [u, v] : arcs) {
    check_vertex(u);
    check_vertex(v);
    if (u == v)
      throw input_error("loop at vertex " + std::to_string(u));
    out_[u].push_back(v);
    in_[v].push_back(u);
  }
  for (int v = 0; v < n_; ++v) {
    std::sort(out_[v].begin(), out_[v].end());
    std::sort(in_[v].begin(), in_[v].end());
    if (std::adjacent_find(out_[v].begin(), out_[v].end()) != out_[v].end())
      throw input_error("duplicate arc from vertex " + std::to_string(v));
    auto &und = undirected_[v];
    std::set_union(out_[v].begin(), out_[v].end(), in_[v].begin(),
                   in_[v].end(), std::back_inserter(und));
    und.erase(std::unique(und.begin(), und.end()), und.end());
  }
  arc_count_ = arcs.size();
  for (Vertex f : frontier) {
    check_vertex(f);
    frontier_[f] = 1;
  }
}

void Digraph::check_vertex(Vertex v) const {
  if (!valid_vertex(v))
    throw input_error("vertex " + std::to_string(v) + " out of range [0, " +
                      std::to_string(n_) + ")");
}

bool Digraph::has_arc(Vertex u, Vertex v) const {
  check_vertex(u);
  check_vertex(v);
  return std::binary_search(out_[u].begin(), out_[u].end(), v);
}

std::span<const Vertex> Digraph::out_neighbors(Vertex v) const {
  check_vertex(v);
  return out_[v];
}

std::span<const Vertex> Digraph::in_neighbors(Vertex v) const {
  check_vertex(v);
  return in_[v];
}

std::span<const Vertex> Digraph::neighbors(Vertex v) const {
  check_vertex(v);
  return undirected_[v];
}

std::vector<Arc> Digraph::arcs() const {
  std::vector<Arc> result;
  result.reserve(arc_count_);
  for (int u = 0; u < n_; ++u)
    for (Vertex v : out_[u])
      result.emplace_back(u, v);
  return result;
}

bool Digraph::is_frontier(Vertex v) const {
  check_vertex(v);
  return frontier_[v] != 0;
}

std::vector<Vertex> Digraph::frontier() const {
  std::vector<Vertex> result;
  for (int v = 0; v < n_; ++v)
    if (frontier_[v])
      result.push_back(v);
  return result;
}

Digraph Digraph::induced(std::span<const Vertex> vertices) const {
  std::vector<int> position(n_, -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    check_vertex(vertices[i]);
    if (position[vertices[i]] != -1)
      throw input_error("repeated vertex in induced subgraph");
    position[vertices[i]] = static_cast<int>(i);
  }
  std::vector<Arc> arcs;
  std::vector<Vertex> frontier;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (Vertex w : out_[vertices[i]])
      if (position[w] != -1)
        arcs.emplace_back(static_cast<int>(i), position[w]);
    if (frontier_[vertices[i]])
      frontier.push_back(static_cast<int>(i));
  }
  return Digraph(static_cast<int>(vertices.size()), arcs, frontier);
}

std::vector<int> undirected_distances(const Digraph &g, Vertex source) {
  g.check_vertex(source);
  std::vector<int> dist(g.vertex_count(), -1);
  std::deque<Vertex> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(u))
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
  }
  return dist;
}

bool is_connected(const Digraph &g) {
  if (g.vertex_count() == 0)
    return true;
  auto dist = undirected_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

std::optional<int> undirected_distance(const Digraph &g, Vertex u, Vertex v) {
  g.check_vertex(v);
  int d = undirected_distances(g, u)[v];
  if (d < 0)
    return std::nullopt;
  return d;
}

BlockDecomposition cut_vertices_and_lobes(const Digraph &g) {
  if (!is_connected(g))
    throw precondition_error("cut_vertices_and_lobes: digraph is disconnected");
  const int n = g.vertex_count();
  BlockDecomposition result;
  if (n == 0)
    return result;

  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<char> is_cut(n, 0);
  std::vector<std::pair<Vertex, Vertex>> edge_stack;
  struct Frame {
    Vertex v;
    Vertex parent;
    std::size_t next;
  };
  std::vector<Frame> frames;
  int clock = 0;
  int root_children = 0;

  auto pop_block = [&](Vertex u, Vertex w) {
    std::vector<Vertex> vertices;
    while (true) {
      auto e = edge_stack.back();
      edge_stack.pop_back();
      vertices.push_back(e.first);
      vertices.push_back(e.second);
      if (e.first == u && e.second == w)
        break;
    }
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()),
                   vertices.end());
    Lobe lobe;
    lobe.vertices = std::move(vertices);
    for (Vertex a : lobe.vertices)
      for (Vertex b : g.out_neighbors(a))
        if (std::binary_search(lobe.vertices.begin(), lobe.vertices.end(), b))
          lobe.arcs.emplace_back(a, b);
    result.lobes.push_back(std::move(lobe));
  };

  disc[0] = low[0] = clock++;
  frames.push_back({0, -1, 0});
  while (!frames.empty()) {
    Frame &f = frames.back();
    auto nbrs = g.neighbors(f.v);
    if (f.next < nbrs.size()) {
      Vertex w = nbrs[f.next++];
      if (w == f.parent)
        continue;
      if (disc[w] < 0) {
        edge_stack.emplace_back(f.v, w);
        disc[w] = low[w] = clock++;
        if (f.v == 0)
          ++root_children;
        frames.push_back({w, f.v, 0});
      } else if (disc[w] < disc[f.v]) {
        edge_stack.emplace_back(f.v, w);
        low[f.v] = std::min(low[f.v], disc[w]);
      }
      continue;
    }
    Vertex w = f.v;
    Vertex u = f.parent;
    frames.pop_back();
    if (u < 0)
      break;
    low[u] = std::min(low[u], low[w]);
    if (low[w] >= disc[u]) {
      if (u != 0)
        is_cut[u] = 1;
      pop_block(u, w);
    }
  }
  if (root_children >= 2)
    is_cut[0] = 1;

  for (int v = 0; v < n; ++v)
    if (is_cut[v])
      result.cut_vertices.push_back(v);
  std::sort(result.lobes.begin(), result.lobes.end(),
            [](const Lobe &a, const Lobe &b) { return a.vertices < b.vertices; });
  return result;
}

BlockCutVertexTree block_cut_vertex_tree(int vertex_count,
                                         std::span<const Lobe> lobes) {
  BlockCutVertexTree t;
  t.violet_count = vertex_count;
  t.blue_count = static_cast<int>(lobes.size());
  t.adjacency.resize(t.node_count());
  for (int b = 0; b < t.blue_count; ++b)
    for (Vertex v : lobes[b].vertices) {
      t.edges.emplace_back(v, b);
      t.adjacency[v].push_back(t.blue_node(b));
      t.adjacency[t.blue_node(b)].push_back(v);
    }
  std::sort(t.edges.begin(), t.edges.end());
  for (auto &adj : t.adjacency)
    std::sort(adj.begin(), adj.end());
  return t;
}

BlockCutVertexTree block_cut_vertex_tree(const Digraph &g) {
  auto decomposition = cut_vertices_and_lobes(g);
  return block_cut_vertex_tree(g.vertex_count(), decomposition.lobes);
}

namespace {

std::vector<int> tree_bfs(const BlockCutVertexTree &t, int source,
                          std::vector<int> *parent) {
  std::vector<int> dist(t.node_count(), -1);
  if (parent)
    parent->assign(t.node_count(), -1);
  std::deque<int> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int w : t.adjacency[u])
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        if (parent)
          (*parent)[w] = u;
        queue.push_back(w);
      }
  }
  return dist;
}

} // namespace

std::vector<int> tree_distances(const BlockCutVertexTree &t, int source) {
  if (source < 0 || source >= t.node_count())
    throw input_error("tree node out of range");
  return tree_bfs(t, source, nullptr);
}

std::vector<int> tree_path(const BlockCutVertexTree &t, int a, int b) {
  if (a < 0 || a >= t.node_count() || b < 0 || b >= t.node_count())
    throw input_error("tree node out of range");
  std::vector<int> parent;
  auto dist = tree_bfs(t, a, &parent);
  if (dist[b] < 0)
    return {};
  std::vector<int> path;
  for (int x = b; x != -1; x = parent[x])
    path.push_back(x);
  std::reverse(path.begin(), path.end());
  return path;
}

Valencies in_out_valencies(const Digraph &g, Vertex v) {
  return {static_cast<int>(g.in_neighbors(v).size()),
          static_cast<int>(g.out_neighbors(v).size())};
}

std::optional<std::vector<int>> z_grading(const Digraph &g) {
  if (!is_connected(g))
    throw precondition_error("z_grading: digraph is disconnected");
  const int n = g.vertex_count();
  std::vector<int> level(n, 0);
  std::vector<char> seen(n, 0);
  if (n == 0)
    return level;
  std::deque<Vertex> queue{0};
  seen[0] = 1;
  auto assign = [&](Vertex w, int value) {
    if (!seen[w]) {
      seen[w] = 1;
      level[w] = value;
      queue.push_back(w);
      return true;
    }
    return level[w] == value;
  };
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    for (Vertex w : g.out_neighbors(u))
      if (!assign(w, level[u] + 1))
        return std::nullopt;
    for (Vertex w : g.in_neighbors(u))
      if (!assign(w, level[u] - 1))
        return std::nullopt;
  }
  int lowest = *std::min_element(level.begin(), level.end());
  for (int &l : level)
    l -= lowest;
  return level;
}

namespace {

class IsomorphismSearch {
public:
  IsomorphismSearch(const Digraph &a, const Digraph &b,
                    std::span<const int> colour_a,
                    std::span<const int> colour_b,
                    const IsomorphismVisitor &visit)
      : a_(a), b_(b), colour_a_(colour_a), colour_b_(colour_b), visit_(visit) {
  }

  std::size_t run() {
    const int n = a_.vertex_count();
    if (n != b_.vertex_count() || a_.arc_count() != b_.arc_count())
      return 0;
    if (!signatures_match())
      return 0;
    order_vertices();
    map_.assign(n, -1);
    used_.assign(n, 0);
    extend(0);
    return found_;
  }

private:
  struct Signature {
    int colour, in, out;
    auto operator<=>(const Signature &) const = default;
  };

  Signature signature(const Digraph &g, std::span<const int> colour,
                      Vertex v) const {
    return {colour.empty() ? 0 : colour[v],
            static_cast<int>(g.in_neighbors(v).size()),
            static_cast<int>(g.out_neighbors(v).size())};
  }

  bool signatures_match() const {
    std::vector<Signature> sa, sb;
    for (int v = 0; v < a_.vertex_count(); ++v) {
      sa.push_back(signature(a_, colour_a_, v));
      sb.push_back(signature(b_, colour_b_, v));
    }
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    return sa == sb;
  }

  // Most-constrained-first: prefer vertices with many already-ordered
  // neighbours, then high degree.
  void order_vertices() {
    const int n = a_.vertex_count();
    std::vector<int> placed_neighbours(n, 0);
    std::vector<char> placed(n, 0);
    order_.clear();
    for (int step = 0; step < n; ++step) {
      int best = -1;
      for (int v = 0; v < n; ++v) {
        if (placed[v])
          continue;
        if (best < 0 || placed_neighbours[v] > placed_neighbours[best] ||
            (placed_neighbours[v] == placed_neighbours[best] &&
             a_.neighbors(v).size() > a_.neighbors(best).size()))
          best = v;
      }
      placed[best] = 1;
      order_.push_back(best);
      for (Vertex w : a_.neighbors(best))
        ++placed_neighbours[w];
    }
  }

  bool consistent(Vertex u, Vertex w, std::size_t depth) const {
    if (signature(a_, colour_a_, u) != signature(b_, colour_b_, w))
      return false;
    for (std::size_t j = 0; j < depth; ++j) {
      Vertex u2 = order_[j];
      Vertex w2 = map_[u2];
      if (a_.has_arc(u, u2) != b_.has_arc(w, w2) ||
          a_.has_arc(u2, u) != b_.has_arc(w2, w))
        return false;
    }
    return true;
  }

  bool extend(std::size_t depth) {
    if (depth == order_.size()) {
      ++found_;
      return visit_(map_);
    }
    Vertex u = order_[depth];
    for (Vertex w = 0; w < b_.vertex_count(); ++w) {
      if (used_[w] || !consistent(u, w, depth))
        continue;
      map_[u] = w;
      used_[w] = 1;
      bool keep_going = extend(depth + 1);
      used_[w] = 0;
      map_[u] = -1;
      if (!keep_going)
        return false;
    }
    return true;
  }

  const Digraph &a_;
  const Digraph &b_;
  std::span<const int> colour_a_;
  std::span<const int> colour_b_;
  const IsomorphismVisitor &visit_;
  std::vector<Vertex> order_;
  std::vector<Vertex> map_;
  std::vector<char> used_;
  std::size_t found_ = 0;
};

} // namespace

std::size_t for_each_isomorphism(const Digraph &a, const Digraph &b,
                                 std::span<const int> colour_a,
                                 std::span<const int> colour_b,
                                 const IsomorphismVisitor &visit,
                                 int vertex_limit) {
  int size = std::max(a.vertex_count(), b.vertex_count());
  if (size > vertex_limit)
    throw capacity_error("isomorphism search", vertex_limit, size);
  if ((!colour_a.empty() &&
       colour_a.size() != static_cast<std::size_t>(a.vertex_count())) ||
      (!colour_b.empty() &&
       colour_b.size() != static_cast<std::size_t>(b.vertex_count())) ||
      colour_a.empty() != colour_b.empty())
    throw input_error("colour vector size mismatch");
  return IsomorphismSearch(a, b, colour_a, colour_b, visit).run();
}

std::optional<std::vector<Vertex>>
digraph_isomorphic(const Digraph &a, const Digraph &b, int vertex_limit) {
  std::optional<std::vector<Vertex>> result;
  for_each_isomorphism(
      a, b, {}, {},
      [&](std::span<const Vertex> map) {
        result.emplace(map.begin(), map.end());
        return false;
      },
      vertex_limit);
  return result;
}

std::vector<std::vector<Vertex>> all_automorphisms(const Digraph &g,
                                                   int vertex_limit) {
  std::vector<std::vector<Vertex>> result;
  for_each_isomorphism(
      g, g, {}, {},
      [&](std::span<const Vertex> map) {
        result.emplace_back(map.begin(), map.end());
        return true;
      },
      vertex_limit);
  std::sort(result.begin(), result.end());
  return result; // identity is the lexicographically smallest map
}

bool is_automorphism(const Digraph &g, std::span<const Vertex> map) {
  const int n = g.vertex_count();
  if (map.size() != static_cast<std::size_t>(n))
    return false;
  std::vector<char> hit(n, 0);
  for (Vertex v : map) {
    if (!g.valid_vertex(v) || hit[v])
      return false;
    hit[v] = 1;
  }
  for (auto [u, v] : g.arcs())
    if (!g.has_arc(map[u], map[v]))
      return false;
  return true; // injective on a finite arc set, so arcs map onto arcs
}

Digraph parse_digraph(std::istream &in) {
  auto lines = detail::read_lines(in);
  if (lines.empty())
    throw parse_error(0, "empty digraph text");
  const auto &head = lines.front();
  if (head.tokens.size() != 2 || head.tokens[0] != "digraph")
    throw parse_error(head.number, "expected 'digraph <n>'");
  int n = static_cast<int>(detail::parse_integer(head.tokens[1], head.number));
  if (n < 0)
    throw parse_error(head.number, "negative vertex count");
  std::vector<Arc> arcs;
  std::vector<Vertex> frontier;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto &line = lines[i];
    auto vertex = [&](const std::string &tok) {
      auto v = detail::parse_integer(tok, line.number);
      if (v < 0 || v >= n)
        throw parse_error(line.number, "vertex " + tok + " out of range");
      return static_cast<Vertex>(v);
    };
    if (line.tokens.size() == 2 && line.tokens[0] == "frontier") {
      frontier.push_back(vertex(line.tokens[1]));
    } else if (line.tokens.size() == 2) {
      Vertex u = vertex(line.tokens[0]);
      Vertex v = vertex(line.tokens[1]);
      if (u == v)
        throw parse_error(line.number, "loop arc");
      arcs.emplace_back(u, v);
    } else {
      throw parse_error(line.number, "expected 'u v' or 'frontier v'");
    }
  }
  std::sort(arcs.begin(), arcs.end());
  if (auto dup = std::adjacent_find(arcs.begin(), arcs.end());
      dup != arcs.end())
    throw parse_error(lines.back().number,
                      "duplicate arc " + std::to_string(dup->first) + " " +
                          std::to_string(dup->second));
  std::sort(frontier.begin(), frontier.end());
  frontier.erase(std::unique(frontier.begin(), frontier.end()),
                 frontier.end());
  return Digraph(n, arcs, frontier);
}

Digraph parse_digraph(const std::string &text) {
  std::istringstream in(text);
  return parse_digraph(in);
}

std::string to_text(const Digraph &g) {
  std::ostringstream out;
  out << "digraph " << g.vertex_count() << '\n';
  for (auto [u, v] : g.arcs())
    out << u << ' ' << v << '\n';
  for (Vertex f : g.frontier())
    out << "frontier " << f << '\n';
  return out.str();
}

Digraph directed_cycle(int n) {
  std::vector<Arc> arcs;
  for (int i = 0; i < n && n >= 2; ++i)
    arcs.emplace_back(i, (i + 1) % n);
  return Digraph(n, arcs);
}

Digraph complete_digraph(int n) {
  std::vector<Arc> arcs;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v)
        arcs.emplace_back(u, v);
  return Digraph(n, arcs);
}

Digraph undirected_path(int n) {
  std::vector<Arc> arcs;
  for (int i = 0; i + 1 < n; ++i) {
    arcs.emplace_back(i, i + 1);
    arcs.emplace_back(i + 1, i);
  }
  return Digraph(n, arcs);
}

} // namespace orbends
