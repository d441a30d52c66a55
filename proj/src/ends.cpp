#include "orbends/ends.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <iterator>
#include <set>

#include "orbends/errors.hpp"

namespace orbends {

std::size_t count_ends_at_radius(const Digraph &g, Vertex center, int r) {
  g.check_vertex(center);
  if (r < 0)
    throw input_error("negative radius");
  auto dist = undirected_distances(g, center);
  const int n = g.vertex_count();
  std::vector<char> removed(static_cast<std::size_t>(n), 0);
  for (Vertex v = 0; v < n; ++v)
    if (dist[v] >= 0 && dist[v] <= r) {
      if (g.is_frontier(v))
        throw scale_error("ball of radius " + std::to_string(r) +
                          " reaches the frontier at vertex " + std::to_string(v));
      removed[v] = 1;
    }
  std::size_t count = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (removed[s])
      continue;
    bool touches = false;
    removed[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      touches = touches || g.is_frontier(u);
      for (Vertex w : g.neighbors(u))
        if (!removed[w]) {
          removed[w] = 1;
          stack.push_back(w);
        }
    }
    if (touches)
      ++count;
  }
  return count;
}

std::vector<std::size_t> end_sequence(const Digraph &g, Vertex center, int r_max) {
  std::vector<std::size_t> counts;
  for (int r = 1; r <= r_max; ++r)
    counts.push_back(count_ends_at_radius(g, center, r));
  return counts;
}

bool is_non_decreasing(std::span<const std::size_t> values) {
  return std::is_sorted(values.begin(), values.end());
}

int interior_radius(const Digraph &g, Vertex center) {
  g.check_vertex(center);
  auto dist = undirected_distances(g, center);
  int nearest = -1;
  int farthest = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (dist[v] < 0)
      continue;
    farthest = std::max(farthest, dist[v]);
    if (g.is_frontier(v) && (nearest < 0 || dist[v] < nearest))
      nearest = dist[v];
  }
  return nearest < 0 ? farthest : nearest - 1;
}

EndHandle EndHandle::thin(std::vector<int> ray) {
  EndHandle e;
  e.kind = EndKind::thin_ray;
  e.depth = ray.empty() ? 0 : static_cast<int>(ray.size() / 2);
  e.ray = std::move(ray);
  return e;
}

EndHandle EndHandle::thick(int blue_node) {
  EndHandle e;
  e.kind = EndKind::thick_lobe;
  e.lobe = blue_node;
  return e;
}

void validate_handle(const TreeLikeTruncation &trunc, const EndHandle &e) {
  const auto &tree = trunc.tree;
  if (e.kind == EndKind::thick_lobe) {
    if (e.lobe < 0 || e.lobe >= tree.node_count() || tree.is_violet(e.lobe))
      throw input_error("thick handle does not name a lobe");
    return;
  }
  const auto &ray = e.ray;
  if (ray.empty() || ray.front() != trunc.root)
    throw input_error("ray does not start at the root");
  if (ray.size() % 2 == 0)
    throw input_error("ray must end at a violet node");
  if (e.depth != static_cast<int>(ray.size() / 2))
    throw input_error("ray depth does not match its length");
  std::set<int> seen;
  for (std::size_t i = 0; i < ray.size(); ++i) {
    int node = ray[i];
    if (node < 0 || node >= tree.node_count())
      throw input_error("ray node out of range");
    if (tree.is_violet(node) != (i % 2 == 0))
      throw input_error("ray does not alternate violet and blue nodes");
    if (!seen.insert(node).second)
      throw input_error("ray is not a simple path");
    if (i > 0) {
      const auto &adj = tree.adjacency[ray[i - 1]];
      if (!std::binary_search(adj.begin(), adj.end(), node))
        throw input_error("consecutive ray nodes are not adjacent in T");
    }
  }
}

namespace {

void extend_rays(const BlockCutVertexTree &tree, std::vector<int> &path,
                 int remaining, std::vector<EndHandle> &out, bool first_only) {
  if (remaining == 0) {
    out.push_back(EndHandle::thin(path));
    return;
  }
  int here = path.back();
  int back = path.size() >= 2 ? path[path.size() - 2] : -1;
  for (int blue : tree.adjacency[here]) {
    if (blue == back)
      continue;
    for (int next : tree.adjacency[blue]) {
      if (next == here)
        continue;
      path.push_back(blue);
      path.push_back(next);
      extend_rays(tree, path, remaining - 1, out, first_only);
      path.resize(path.size() - 2);
      if (first_only && !out.empty())
        return;
    }
  }
}

} // namespace

EndHandle canonical_ray(const TreeLikeTruncation &trunc, int depth) {
  if (depth < 0)
    throw input_error("negative ray depth");
  std::vector<int> path{trunc.root};
  std::vector<EndHandle> out;
  extend_rays(trunc.tree, path, depth, out, true);
  if (out.empty())
    throw scale_error("no root ray of depth " + std::to_string(depth) +
                      " inside the truncation");
  return out.front();
}

std::vector<EndHandle> thin_handles(const TreeLikeTruncation &trunc, int depth) {
  if (depth < 0)
    throw input_error("negative ray depth");
  std::vector<int> path{trunc.root};
  std::vector<EndHandle> out;
  extend_rays(trunc.tree, path, depth, out, false);
  return out;
}

std::vector<EndHandle> thick_handles(const TreeLikeTruncation &trunc) {
  if (trunc.lobe_template.declared_end_count != 1)
    throw input_error("thick handles need a declared one-ended lobe");
  std::vector<EndHandle> out;
  for (int b = 0; b < trunc.tree.blue_count; ++b)
    out.push_back(EndHandle::thick(trunc.tree.blue_node(b)));
  return out;
}

EndType classify_end(const TreeLikeTruncation &trunc, const EndHandle &e) {
  validate_handle(trunc, e);
  if (e.kind == EndKind::thin_ray)
    return EndType::thin;
  if (trunc.lobe_template.declared_end_count != 1)
    throw input_error("thick handle on a template with no end");
  return EndType::thick;
}

std::string to_string(EndType t) { return t == EndType::thin ? "thin" : "thick"; }

std::string to_string(EndOrbitClass c) {
  switch (c) {
  case EndOrbitClass::single:
    return "single";
  case EndOrbitClass::countably_infinite:
    return "countably_infinite";
  case EndOrbitClass::continuum:
    return "continuum";
  }
  return "unknown";
}

std::string to_string(GroupContext c) {
  return c == GroupContext::one_ended ? "one-ended" : "closed-primitive";
}

namespace {

template <class Image>
std::optional<int> node_image(const TreeLikeTruncation &trunc, const Image &f,
                              int node) {
  const auto &tree = trunc.tree;
  if (tree.is_violet(node)) {
    Vertex w = f(node);
    if (w < 0)
      return std::nullopt;
    return w;
  }
  std::vector<Vertex> images;
  for (Vertex v : tree.adjacency[node]) {
    Vertex w = f(v);
    if (w >= 0) {
      images.push_back(w);
      if (images.size() == 2)
        break;
    }
  }
  if (images.size() < 2)
    return std::nullopt;
  const auto &a = tree.adjacency[images[0]];
  const auto &b = tree.adjacency[images[1]];
  std::vector<int> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(common));
  if (common.size() != 1)
    return std::nullopt;
  return common.front();
}

template <class Image>
std::optional<std::vector<int>> tuple_image(const TreeLikeTruncation &trunc,
                                            const Image &f,
                                            std::span<const int> nodes) {
  std::vector<int> out;
  out.reserve(nodes.size());
  for (int node : nodes) {
    auto w = node_image(trunc, f, node);
    if (!w)
      return std::nullopt;
    out.push_back(*w);
  }
  return out;
}

void check_growth_request(const TreeLikeTruncation &trunc, const EndHandle &e,
                          int depth_max) {
  if (e.kind != EndKind::thin_ray)
    throw input_error("prefix growth needs a thin ray handle");
  validate_handle(trunc, e);
  if (depth_max < 1)
    throw input_error("prefix growth depth must be at least 1");
  if (depth_max > e.depth)
    throw scale_error("prefix depth " + std::to_string(depth_max) +
                      " exceeds the ray depth " + std::to_string(e.depth));
}

template <class Image>
std::size_t orbit_size(const TreeLikeTruncation &trunc,
                       const std::vector<Image> &gens, std::span<const int> start) {
  std::set<std::vector<int>> seen{std::vector<int>(start.begin(), start.end())};
  std::deque<std::vector<int>> queue{std::vector<int>(start.begin(), start.end())};
  while (!queue.empty()) {
    auto t = std::move(queue.front());
    queue.pop_front();
    for (const auto &f : gens) {
      auto image = tuple_image(trunc, f, t);
      if (!image)
        throw input_error("generator leaves the truncation");
      if (seen.insert(*image).second)
        queue.push_back(std::move(*image));
    }
  }
  return seen.size();
}

} // namespace

PrefixGrowth end_orbit_prefix_growth(const TreeLikeTruncation &trunc,
                                     const EndHandle &e,
                                     std::span<const VertexMap> elements,
                                     int depth_max) {
  check_growth_request(trunc, e, depth_max);
  for (const auto &f : elements)
    validate_vertex_map(trunc.graph, f);
  PrefixGrowth growth;
  growth.mode = GrowthMode::listed;
  growth.list_limited = true;
  for (int d = 1; d <= depth_max; ++d) {
    std::span<const int> prefix(e.ray.data(), static_cast<std::size_t>(2 * d + 1));
    std::set<std::vector<int>> images;
    GrowthRow row{d, 0, 0};
    for (const auto &f : elements) {
      auto image = tuple_image(trunc, [&](Vertex v) { return f[v]; }, prefix);
      if (image)
        images.insert(std::move(*image));
      else
        ++row.escaped;
    }
    row.images = images.size();
    growth.rows.push_back(row);
  }
  return growth;
}

PrefixGrowth end_orbit_prefix_growth(const TreeLikeTruncation &trunc,
                                     const EndHandle &e,
                                     std::span<const SparseMap> generators,
                                     int depth_max) {
  check_growth_request(trunc, e, depth_max);
  std::vector<std::function<Vertex(Vertex)>> gens;
  for (const auto &f : generators) {
    for (auto [v, w] : f)
      if (!trunc.graph.valid_vertex(v) || !trunc.graph.valid_vertex(w))
        throw input_error("generator moves a vertex outside the truncation");
    gens.emplace_back([&f](Vertex v) { return apply(f, v); });
  }
  PrefixGrowth growth;
  growth.mode = GrowthMode::generated;
  for (int d = 1; d <= depth_max; ++d) {
    std::span<const int> prefix(e.ray.data(), static_cast<std::size_t>(2 * d + 1));
    growth.rows.push_back({d, orbit_size(trunc, gens, prefix), 0});
  }
  return growth;
}

EndOrbitVerdict end_orbit_trichotomy(const TreeLikeTruncation &trunc,
                                     const EndHandle &e, GroupContext context,
                                     int growth_depth,
                                     const std::vector<SparseMap> *generators) {
  auto type = classify_end(trunc, e);
  if (context == GroupContext::one_ended)
    throw input_error("one-ended context is inconsistent with a tree-like "
                      "truncation, which has more than one end");
  EndOrbitVerdict verdict;
  if (type == EndType::thick) {
    verdict.orbit_class = EndOrbitClass::countably_infinite;
    verdict.reason = "ends_biject_lobes";
    return verdict;
  }
  verdict.orbit_class = EndOrbitClass::continuum;
  verdict.reason = "thin_end_closed_primitive";
  int d = std::min(growth_depth, e.depth);
  if (d >= 1) {
    std::vector<SparseMap> own;
    if (!generators) {
      own = truncation_automorphisms(trunc, true);
      generators = &own;
    }
    verdict.growth = end_orbit_prefix_growth(
        trunc, e, std::span<const SparseMap>(*generators), d);
  }
  return verdict;
}

EndOrbitVerdict one_ended_trichotomy(const Digraph &g, Vertex center) {
  int radius = interior_radius(g, center);
  if (radius < 1)
    throw input_error("no admissible radius around the centre");
  for (int r = 1; r <= radius; ++r) {
    auto count = count_ends_at_radius(g, center, r);
    if (count != 1)
      throw input_error("one-ended context but " + std::to_string(count) +
                        " frontier components at radius " + std::to_string(r));
  }
  EndOrbitVerdict verdict;
  verdict.orbit_class = EndOrbitClass::single;
  verdict.reason = "one_end";
  return verdict;
}

} // namespace orbends
