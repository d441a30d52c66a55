#include "orbends/treelike.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <iterator>
#include <limits>
#include <map>
#include <sstream>

#include "orbends/errors.hpp"
#include "text_lines.hpp"

namespace orbends {

Digraph ladder_window(int rungs) {
  if (rungs < 2)
    throw input_error("ladder window needs at least two rungs");
  std::vector<Arc> arcs;
  auto both = [&](Vertex u, Vertex v) {
    arcs.emplace_back(u, v);
    arcs.emplace_back(v, u);
  };
  for (int i = 0; i < rungs; ++i) {
    both(2 * i, 2 * i + 1);
    if (i + 1 < rungs) {
      both(2 * i, 2 * i + 2);
      both(2 * i + 1, 2 * i + 3);
    }
  }
  std::sort(arcs.begin(), arcs.end());
  std::vector<Vertex> frontier{2 * rungs - 2, 2 * rungs - 1};
  return Digraph(2 * rungs, arcs, frontier);
}

LobeTemplate make_template(Digraph lobe, int declared_end_count,
                           std::vector<Permutation> automorphisms,
                           std::optional<int> ladder_rungs) {
  if (declared_end_count != 0 && declared_end_count != 1)
    throw input_error("declared end count must be 0 or 1");
  if (declared_end_count == 1 && !ladder_rungs)
    throw input_error("a one-ended lobe needs a family generator");
  if (ladder_rungs && lobe.vertex_count() == 0)
    lobe = ladder_window(*ladder_rungs);
  if (ladder_rungs && !(lobe == ladder_window(*ladder_rungs)))
    throw input_error("lobe digraph differs from its ladder family window");
  if (lobe.vertex_count() < 2)
    throw input_error("lobe needs at least two vertices");
  if (!is_connected(lobe))
    throw input_error("lobe is disconnected");
  if (!cut_vertices_and_lobes(lobe).cut_vertices.empty())
    throw input_error("lobe has a cut vertex");
  for (const auto &p : automorphisms) {
    if (p.degree() != lobe.vertex_count())
      throw input_error("automorphism degree differs from the lobe size");
    std::vector<Vertex> map(p.images().begin(), p.images().end());
    if (!is_automorphism(lobe, map))
      throw input_error("listed map " + p.to_cycle_string() +
                        " is not a lobe automorphism");
  }
  return LobeTemplate{std::move(lobe), declared_end_count,
                      std::move(automorphisms), ladder_rungs};
}

TemplateFile parse_template(std::istream &in) {
  std::vector<std::string> raw;
  for (std::string line; std::getline(in, line);)
    raw.push_back(line);

  // Template directives are blanked out so the digraph parser keeps the
  // original line numbers.
  std::ostringstream digraph_text;
  std::vector<detail::TextLine> directives;
  bool has_digraph = false;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    std::istringstream one(raw[i]);
    auto parsed = detail::read_lines(one);
    if (!parsed.empty()) {
      parsed[0].number = static_cast<int>(i + 1);
      const auto &head = parsed[0].tokens[0];
      if (head == "m" || head == "ends" || head == "auto" || head == "family") {
        directives.push_back(parsed[0]);
        digraph_text << '\n';
        continue;
      }
      if (head == "digraph")
        has_digraph = true;
    }
    digraph_text << raw[i] << '\n';
  }

  TemplateFile file;
  int ends = 0;
  std::optional<int> rungs;
  std::vector<std::string> auto_lines;
  std::vector<int> auto_numbers;
  bool has_m = false;
  for (const auto &d : directives) {
    const auto &tok = d.tokens;
    if (tok[0] == "m" && tok.size() == 2) {
      file.m = static_cast<int>(detail::parse_integer(tok[1], d.number));
      has_m = true;
    } else if (tok[0] == "ends" && tok.size() == 2) {
      ends = static_cast<int>(detail::parse_integer(tok[1], d.number));
    } else if (tok[0] == "family" && tok.size() == 3 && tok[1] == "ladder") {
      rungs = static_cast<int>(detail::parse_integer(tok[2], d.number));
    } else if (tok[0] == "auto") {
      auto_lines.push_back(detail::rest_of_line(d));
      auto_numbers.push_back(d.number);
    } else {
      throw parse_error(d.number, "malformed template directive");
    }
  }
  if (!has_m)
    throw parse_error(0, "template lacks 'm <int>'");
  if (file.m < 2)
    throw parse_error(0, "m must be at least 2");

  Digraph lobe;
  if (has_digraph) {
    std::istringstream text(digraph_text.str());
    lobe = parse_digraph(text);
  } else if (!rungs) {
    throw parse_error(0, "template has neither a digraph block nor a family");
  }
  int n = has_digraph ? lobe.vertex_count() : 2 * rungs.value_or(0);
  std::vector<Permutation> autos;
  for (std::size_t i = 0; i < auto_lines.size(); ++i) {
    try {
      autos.push_back(parse_permutation(auto_lines[i], n));
    } catch (const input_error &e) {
      throw parse_error(auto_numbers[i], e.what());
    }
  }
  file.lobe_template = make_template(std::move(lobe), ends, std::move(autos), rungs);
  return file;
}

TemplateFile parse_template(const std::string &text) {
  std::istringstream in(text);
  return parse_template(in);
}

PermGroup automorphism_group(const LobeTemplate &t) {
  const int n = t.lobe.vertex_count();
  if (!t.automorphisms.empty())
    return PermGroup(n, t.automorphisms);
  std::vector<Permutation> gens;
  for (auto &map : all_automorphisms(t.lobe))
    gens.push_back(to_permutation(map));
  return PermGroup(n, std::move(gens));
}

std::size_t truncation_vertex_count(std::size_t lobe_size, int m, int depth) {
  constexpr auto top = std::numeric_limits<std::size_t>::max();
  auto mul = [&](std::size_t a, std::size_t b) {
    return (b != 0 && a > top / b) ? top : a * b;
  };
  std::size_t total = 1;
  std::size_t boundary = 1;
  for (int d = 1; d <= depth; ++d) {
    std::size_t lobes = static_cast<std::size_t>(d == 1 ? m : m - 1);
    boundary = mul(mul(boundary, lobes), lobe_size - 1);
    total = total > top - boundary ? top : total + boundary;
  }
  return total;
}

namespace {

std::vector<LobeInstance>
match_instances(const std::vector<Lobe> &lobes,
                const std::vector<LobeInstance> &copies) {
  std::map<std::vector<Vertex>, int> by_vertices;
  for (std::size_t i = 0; i < lobes.size(); ++i)
    by_vertices.emplace(lobes[i].vertices, static_cast<int>(i));
  std::vector<LobeInstance> result(lobes.size());
  for (const auto &copy : copies) {
    auto key = copy.map;
    std::sort(key.begin(), key.end());
    auto it = by_vertices.find(key);
    if (it == by_vertices.end())
      throw error("lobe copy is not a block of the glued digraph");
    result[it->second] = copy;
  }
  return result;
}

std::vector<int> halved_depths(const BlockCutVertexTree &tree, Vertex root) {
  auto dist = tree_distances(tree, root);
  std::vector<int> depth(tree.violet_count);
  for (int v = 0; v < tree.violet_count; ++v)
    depth[v] = dist[v] < 0 ? -1 : dist[v] / 2;
  return depth;
}

} // namespace

TreeLikeTruncation build_truncation(const LobeTemplate &t, int m, int depth,
                                    std::size_t vertex_cap) {
  if (m < 2)
    throw input_error("m must be at least 2");
  if (depth < 0)
    throw input_error("negative truncation depth");
  const int k = t.lobe.vertex_count();
  if (k < 3)
    throw input_error("lobe has fewer than three vertices");
  auto projected = truncation_vertex_count(static_cast<std::size_t>(k), m, depth);
  if (projected > vertex_cap)
    throw capacity_error("truncation vertices", vertex_cap, projected);

  const auto template_arcs = t.lobe.arcs();
  std::vector<Arc> arcs;
  std::vector<Vertex> frontier;
  std::vector<int> vertex_depth{0};
  std::vector<LobeInstance> copies;
  std::vector<Vertex> layer{0};
  int next = 1;
  for (int d = 1; d <= depth; ++d) {
    std::vector<Vertex> new_layer;
    const int lobes = d == 1 ? m : m - 1;
    for (Vertex parent : layer)
      for (int j = 0; j < lobes; ++j) {
        LobeInstance copy;
        copy.parent = parent;
        copy.map.assign(static_cast<std::size_t>(k), parent);
        for (int tv = 1; tv < k; ++tv) {
          copy.map[tv] = next++;
          vertex_depth.push_back(d);
          new_layer.push_back(copy.map[tv]);
          if (t.lobe.is_frontier(tv))
            frontier.push_back(copy.map[tv]);
        }
        for (auto [u, v] : template_arcs)
          arcs.emplace_back(copy.map[u], copy.map[v]);
        copies.push_back(std::move(copy));
      }
    layer = std::move(new_layer);
  }
  frontier.insert(frontier.end(), layer.begin(), layer.end());
  std::sort(frontier.begin(), frontier.end());
  frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
  std::sort(arcs.begin(), arcs.end());

  TreeLikeTruncation trunc;
  trunc.graph = Digraph(next, arcs, frontier);
  auto decomposition = cut_vertices_and_lobes(trunc.graph);
  trunc.tree = block_cut_vertex_tree(next, decomposition.lobes);
  trunc.lobe_instances = match_instances(decomposition.lobes, copies);
  for (std::size_t i = 0; i < decomposition.lobes.size(); ++i) {
    const auto &vs = decomposition.lobes[i].vertices;
    trunc.lobe_instances[i].complete = std::none_of(
        vs.begin(), vs.end(), [&](Vertex v) { return trunc.graph.is_frontier(v); });
  }
  trunc.m = m;
  trunc.root = 0;
  trunc.depth = depth;
  trunc.lobe_template = t;
  trunc.vertex_depth = std::move(vertex_depth);
  return trunc;
}

TreeLikeTruncation adopt_truncation(Digraph graph, const LobeTemplate &t, int m,
                                    Vertex root) {
  if (m < 2)
    throw input_error("m must be at least 2");
  graph.check_vertex(root);
  auto decomposition = cut_vertices_and_lobes(graph);
  TreeLikeTruncation trunc;
  trunc.tree = block_cut_vertex_tree(graph.vertex_count(), decomposition.lobes);
  trunc.vertex_depth = halved_depths(trunc.tree, root);
  auto dist = tree_distances(trunc.tree, root);
  for (const auto &lobe : decomposition.lobes) {
    LobeInstance inst;
    inst.complete = std::none_of(lobe.vertices.begin(), lobe.vertices.end(),
                                 [&](Vertex v) { return graph.is_frontier(v); });
    inst.parent = *std::min_element(
        lobe.vertices.begin(), lobe.vertices.end(),
        [&](Vertex a, Vertex b) { return dist[a] < dist[b]; });
    if (inst.complete && lobe.vertices.size() == t.size()) {
      auto sub = graph.induced(lobe.vertices);
      if (auto iso = digraph_isomorphic(t.lobe, sub)) {
        inst.map.resize(iso->size());
        for (std::size_t i = 0; i < iso->size(); ++i)
          inst.map[i] = lobe.vertices[(*iso)[i]];
      }
    }
    trunc.lobe_instances.push_back(std::move(inst));
  }
  trunc.depth = trunc.vertex_depth.empty()
                    ? 0
                    : *std::max_element(trunc.vertex_depth.begin(),
                                        trunc.vertex_depth.end());
  trunc.graph = std::move(graph);
  trunc.m = m;
  trunc.root = root;
  trunc.lobe_template = t;
  return trunc;
}

TruncationCheck check_truncation(const TreeLikeTruncation &trunc) {
  TruncationCheck check;
  const auto &g = trunc.graph;
  const auto &tree = trunc.tree;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.is_frontier(v))
      continue;
    auto degree = tree.adjacency[v].size();
    if (degree != static_cast<std::size_t>(trunc.m)) {
      check.interior_degree = false;
      check.problems.push_back("interior vertex " + std::to_string(v) + " lies in " +
                               std::to_string(degree) + " lobes");
    }
  }
  const auto template_arcs = trunc.lobe_template.lobe.arcs();
  for (int b = 0; b < tree.blue_count; ++b) {
    const auto &inst = trunc.lobe_instances[b];
    if (!inst.complete)
      continue;
    ++check.complete_lobes;
    const auto &members = tree.adjacency[tree.blue_node(b)];
    bool iso = inst.map.size() == trunc.lobe_template.size() &&
               members.size() == inst.map.size();
    if (iso) {
      std::vector<Arc> mapped;
      for (auto [u, v] : template_arcs)
        mapped.emplace_back(inst.map[u], inst.map[v]);
      std::sort(mapped.begin(), mapped.end());
      std::vector<Arc> actual;
      for (Vertex u : members)
        for (Vertex v : g.out_neighbors(u))
          if (std::binary_search(members.begin(), members.end(), v))
            actual.emplace_back(u, v);
      std::sort(actual.begin(), actual.end());
      iso = mapped == actual;
    }
    if (!iso) {
      check.lobes_isomorphic = false;
      check.problems.push_back("complete lobe " + std::to_string(b) +
                               " is not a template copy");
    }
  }
  if (!(block_cut_vertex_tree(g) == tree)) {
    check.tree_matches = false;
    check.problems.push_back("stored tree differs from a fresh decomposition");
  }
  return check;
}

std::string to_string(PrimitivityVerdict v) {
  return v == PrimitivityVerdict::primitive ? "PRIMITIVE" : "IMPRIMITIVE";
}

std::string to_string(CriterionReason r) {
  switch (r) {
  case CriterionReason::lobe_not_primitive:
    return "lobe_not_primitive";
  case CriterionReason::lobe_is_odd_prime_directed_cycle:
    return "lobe_is_odd_prime_directed_cycle";
  case CriterionReason::lobe_too_small:
    return "lobe_too_small";
  }
  return "unknown";
}

bool is_odd_prime_directed_cycle(const Digraph &g) {
  const int n = g.vertex_count();
  if (n < 3 || n % 2 == 0)
    return false;
  for (int d = 3; d * d <= n; d += 2)
    if (n % d == 0)
      return false;
  if (g.arc_count() != static_cast<std::size_t>(n) || !is_connected(g))
    return false;
  for (Vertex v = 0; v < n; ++v)
    if (g.out_neighbors(v).size() != 1 || g.in_neighbors(v).size() != 1)
      return false;
  return true;
}

CriterionResult connectivity_one_primitivity_criterion(const LobeTemplate &t,
                                                       int m) {
  if (m < 2)
    throw input_error("m must be at least 2");
  CriterionResult result;
  auto group = automorphism_group(t);
  auto listing = enumerate_elements(group);
  result.lobe_group_order = listing.elements.size();
  result.lobe_group_primitive = is_transitive(group) && higman_primitivity(group);
  if (t.lobe.vertex_count() < 3)
    result.reasons.push_back(CriterionReason::lobe_too_small);
  if (!result.lobe_group_primitive)
    result.reasons.push_back(CriterionReason::lobe_not_primitive);
  if (is_odd_prime_directed_cycle(t.lobe))
    result.reasons.push_back(CriterionReason::lobe_is_odd_prime_directed_cycle);
  std::sort(result.reasons.begin(), result.reasons.end());
  result.verdict = result.reasons.empty() ? PrimitivityVerdict::primitive
                                          : PrimitivityVerdict::imprimitive;
  return result;
}

void validate_vertex_map(const Digraph &g, std::span<const Vertex> map) {
  const int n = g.vertex_count();
  if (static_cast<int>(map.size()) != n)
    throw input_error("vertex map has " + std::to_string(map.size()) +
                      " entries for " + std::to_string(n) + " vertices");
  std::vector<char> hit(static_cast<std::size_t>(n), 0);
  std::vector<Vertex> defined;
  for (Vertex v = 0; v < n; ++v) {
    Vertex w = map[v];
    if (w == -1)
      continue;
    if (w < 0 || w >= n)
      throw input_error("vertex map image out of range");
    if (hit[w])
      throw input_error("vertex map is not injective");
    hit[w] = 1;
    defined.push_back(v);
  }
  for (Vertex u : defined)
    for (Vertex v : defined)
      if (u != v && g.has_arc(u, v) != g.has_arc(map[u], map[v]))
        throw input_error("vertex map does not preserve the arc " +
                          std::to_string(u) + " " + std::to_string(v));
}

std::optional<int> tree_node_image(const TreeLikeTruncation &trunc,
                                   std::span<const Vertex> map, int node) {
  const auto &tree = trunc.tree;
  if (node < 0 || node >= tree.node_count())
    throw input_error("tree node out of range");
  if (tree.is_violet(node)) {
    if (map[node] < 0)
      return std::nullopt;
    return map[node];
  }
  // Lobes share at most one vertex, so two images pin the image lobe.
  std::vector<Vertex> images;
  for (Vertex v : tree.adjacency[node])
    if (map[v] >= 0 && images.size() < 2)
      images.push_back(map[v]);
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

std::string to_string(WitnessStatus s) {
  switch (s) {
  case WitnessStatus::found:
    return "found";
  case WitnessStatus::not_found:
    return "not_found";
  case WitnessStatus::inconclusive:
    return "inconclusive";
  }
  return "unknown";
}

WitnessSearchResult imprimitivity_witness_search(const TreeLikeTruncation &trunc,
                                                 std::span<const VertexMap> elements) {
  WitnessSearchResult result;
  result.element_count = elements.size();
  for (const auto &f : elements)
    validate_vertex_map(trunc.graph, f);
  if (elements.size() < 2)
    return result;

  const Vertex alpha = trunc.root;
  auto fixing = [&](Vertex point) {
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < elements.size(); ++i)
      if (elements[i][point] == point)
        ids.push_back(i);
    return ids;
  };
  auto restrict = [&](const std::vector<std::size_t> &ids, int x) {
    std::vector<std::size_t> kept;
    for (auto i : ids)
      if (tree_node_image(trunc, elements[i], x) == x)
        kept.push_back(i);
    return kept;
  };

  const auto alpha_fixers = fixing(alpha);
  for (Vertex beta = 0; beta < trunc.graph.vertex_count(); ++beta) {
    if (beta == alpha)
      continue;
    auto path = tree_path(trunc.tree, alpha, beta);
    std::vector<int> inner(path.begin() + 1, path.end() - 1);
    std::sort(inner.begin(), inner.end());
    const auto beta_fixers = fixing(beta);
    for (int x : inner) {
      ++result.triples_scanned;
      auto sa = restrict(alpha_fixers, x);
      if (sa == restrict(beta_fixers, x)) {
        result.status = WitnessStatus::found;
        result.witness = Witness{alpha, beta, x, trunc.tree.is_violet(x), sa.size()};
        return result;
      }
    }
  }
  result.status = WitnessStatus::not_found;
  return result;
}

Vertex apply(const SparseMap &f, Vertex v) {
  auto it = std::lower_bound(f.begin(), f.end(), std::pair<Vertex, Vertex>{v, -1});
  return (it != f.end() && it->first == v) ? it->second : v;
}

VertexMap to_vertex_map(const SparseMap &f, int vertex_count) {
  VertexMap map(static_cast<std::size_t>(vertex_count));
  for (Vertex v = 0; v < vertex_count; ++v)
    map[v] = v;
  for (auto [v, w] : f)
    map[v] = w;
  return map;
}

namespace {

constexpr std::size_t lobe_ordering_cap = 1000000;

// Rooted canonical forms over T. Violet forms list the sorted forms of the
// child lobes; lobe forms are the lexicographically least colour-sorted
// adjacency string over orderings of the non-parent vertices.
class RootedCanon {
public:
  RootedCanon(const TreeLikeTruncation &trunc, bool fix_frontier)
      : trunc_(trunc), tree_(trunc.tree), fix_frontier_(fix_frontier) {
    const int nodes = tree_.node_count();
    parent_.assign(nodes, -1);
    children_.assign(nodes, {});
    canon_.assign(nodes, {});
    best_.assign(nodes, {});
    alternatives_.assign(nodes, {});
    std::vector<int> order{trunc.root};
    std::vector<char> seen(nodes, 0);
    seen[trunc.root] = 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
      int u = order[i];
      for (int w : tree_.adjacency[u])
        if (!seen[w]) {
          seen[w] = 1;
          parent_[w] = u;
          children_[u].push_back(w);
          order.push_back(w);
        }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it)
      tree_.is_violet(*it) ? canon_violet(*it) : canon_lobe(*it);
    for (int u : order)
      std::stable_sort(children_[u].begin(), children_[u].end(),
                       [&](int a, int b) { return canon_[a] < canon_[b]; });
    order_ = std::move(order);
  }

  const std::vector<int> &order() const { return order_; }
  const std::vector<int> &children(int node) const { return children_[node]; }
  const std::string &canon(int node) const { return canon_[node]; }
  const std::vector<std::vector<Vertex>> &alternatives(int lobe) const {
    return alternatives_[lobe];
  }
  const std::vector<Vertex> &best(int lobe) const { return best_[lobe]; }

  // Canonical isomorphism subtree(u) -> subtree(w) for equal forms.
  void map_violet(int u, int w, SparseMap &out) const {
    if (u != w)
      out.emplace_back(u, w);
    const auto &cu = children_[u];
    const auto &cw = children_[w];
    for (std::size_t i = 0; i < cu.size(); ++i)
      map_lobe(cu[i], cw[i], out);
  }

  void map_lobe(int a, int b, SparseMap &out) const {
    const auto &oa = best_[a];
    const auto &ob = best_[b];
    for (std::size_t i = 1; i < oa.size(); ++i)
      map_violet(oa[i], ob[i], out);
  }

private:
  void canon_violet(int v) {
    std::string form = "(";
    if (fix_frontier_ && trunc_.graph.is_frontier(v))
      form += 'f';
    std::vector<const std::string *> parts;
    for (int c : children_[v])
      parts.push_back(&canon_[c]);
    std::sort(parts.begin(), parts.end(),
              [](auto *a, auto *b) { return *a < *b; });
    for (auto *p : parts)
      form += *p;
    form += ')';
    canon_[v] = std::move(form);
  }

  void canon_lobe(int node) {
    const auto &g = trunc_.graph;
    std::vector<Vertex> rest = children_[node];
    std::stable_sort(rest.begin(), rest.end(), [&](Vertex a, Vertex b) {
      return canon_[a] < canon_[b];
    });
    // Equal-colour runs are permuted independently.
    std::vector<std::pair<std::size_t, std::size_t>> runs;
    std::size_t combos = 1;
    for (std::size_t i = 0; i < rest.size();) {
      std::size_t j = i;
      while (j < rest.size() && canon_[rest[j]] == canon_[rest[i]])
        ++j;
      runs.emplace_back(i, j);
      for (std::size_t f = 2; f <= j - i; ++f) {
        combos *= f;
        if (combos > lobe_ordering_cap)
          throw capacity_error("lobe orderings", lobe_ordering_cap, combos);
      }
      i = j;
    }
    for (auto [i, j] : runs)
      std::sort(rest.begin() + i, rest.begin() + j);

    std::vector<Vertex> ordering;
    ordering.push_back(parent_[node]);
    ordering.insert(ordering.end(), rest.begin(), rest.end());
    const std::size_t k = ordering.size();
    auto encode = [&](const std::vector<Vertex> &o) {
      std::string bits(k * k, '0');
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
          if (i != j && g.has_arc(o[i], o[j]))
            bits[i * k + j] = '1';
      return bits;
    };

    std::string best_bits;
    std::vector<std::vector<Vertex>> ties;
    while (true) {
      std::copy(rest.begin(), rest.end(), ordering.begin() + 1);
      auto bits = encode(ordering);
      if (ties.empty() || bits < best_bits) {
        best_bits = std::move(bits);
        ties.assign(1, ordering);
      } else if (bits == best_bits) {
        ties.push_back(ordering);
      }
      std::size_t r = runs.size();
      while (r > 0) {
        auto [i, j] = runs[r - 1];
        if (std::next_permutation(rest.begin() + i, rest.begin() + j))
          break;
        --r;
      }
      if (r == 0)
        break;
    }

    std::string form = "[";
    for (Vertex v : rest)
      form += canon_[v];
    form += '|';
    form += best_bits;
    form += ']';
    canon_[node] = std::move(form);
    best_[node] = ties.front();
    ties.erase(ties.begin());
    alternatives_[node] = std::move(ties);
  }

  const TreeLikeTruncation &trunc_;
  const BlockCutVertexTree &tree_;
  bool fix_frontier_;
  std::vector<int> parent_;
  std::vector<std::vector<int>> children_;
  std::vector<std::string> canon_;
  std::vector<std::vector<Vertex>> best_;
  std::vector<std::vector<std::vector<Vertex>>> alternatives_;
  std::vector<int> order_;
};

bool root_is_unique_centre(const TreeLikeTruncation &trunc) {
  const auto &tree = trunc.tree;
  if (tree.node_count() == 1)
    return true;
  auto dist = tree_distances(tree, trunc.root);
  if (std::any_of(dist.begin(), dist.end(), [](int d) { return d < 0; }))
    return false;
  int deepest = *std::max_element(dist.begin(), dist.end());
  // Depth reached through each neighbour of the root.
  int branches_at_max = 0;
  for (int first : tree.adjacency[trunc.root]) {
    int reach = 0;
    std::vector<int> stack{first};
    std::vector<char> seen(static_cast<std::size_t>(tree.node_count()), 0);
    seen[trunc.root] = 1;
    seen[first] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      reach = std::max(reach, dist[u]);
      for (int w : tree.adjacency[u])
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    if (reach == deepest)
      ++branches_at_max;
  }
  return branches_at_max >= 2;
}

SparseMap finish(SparseMap f) {
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  return f;
}

} // namespace

std::vector<SparseMap> truncation_automorphisms(const TreeLikeTruncation &trunc,
                                                bool fix_frontier) {
  if (!root_is_unique_centre(trunc))
    throw precondition_error("truncation root is not the unique centre of its tree");
  RootedCanon canon(trunc, fix_frontier);
  const auto &tree = trunc.tree;
  std::vector<SparseMap> gens;
  for (int node : canon.order()) {
    const auto &kids = canon.children(node);
    if (tree.is_violet(node)) {
      for (std::size_t i = 0; i + 1 < kids.size(); ++i) {
        if (canon.canon(kids[i]) != canon.canon(kids[i + 1]))
          continue;
        SparseMap forward;
        canon.map_lobe(kids[i], kids[i + 1], forward);
        SparseMap swap = forward;
        for (auto [v, w] : forward)
          swap.emplace_back(w, v);
        gens.push_back(finish(std::move(swap)));
      }
    } else {
      const auto &best = canon.best(node);
      for (const auto &alt : canon.alternatives(node)) {
        SparseMap f;
        for (std::size_t i = 1; i < best.size(); ++i)
          canon.map_violet(best[i], alt[i], f);
        gens.push_back(finish(std::move(f)));
      }
    }
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return gens;
}

std::vector<VertexMap> enumerate_automorphisms(std::span<const SparseMap> gens,
                                               int vertex_count, std::size_t cap) {
  std::vector<Permutation> perms;
  for (const auto &f : gens)
    perms.push_back(to_permutation(to_vertex_map(f, vertex_count)));
  if (perms.empty())
    perms.push_back(Permutation::identity(vertex_count));
  auto listing = enumerate_elements(PermGroup(vertex_count, std::move(perms)), cap);
  if (!listing.complete)
    throw capacity_error("automorphism enumeration", cap, listing.elements.size());
  std::vector<VertexMap> maps;
  maps.reserve(listing.elements.size());
  for (const auto &p : listing.elements)
    maps.emplace_back(p.images().begin(), p.images().end());
  return maps;
}

} // namespace orbends
