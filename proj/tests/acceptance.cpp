#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "orbends/amalgam.hpp"
#include "orbends/ends.hpp"
#include "orbends/errors.hpp"
#include "orbends/examples.hpp"
#include "orbends/permgroup.hpp"
#include "orbends/treelike.hpp"

using namespace orbends;

namespace {

struct Result {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int number;
  std::string name;
  double seconds_limit; // 0: no limit
  std::function<Result()> body;
};

const Check *find_check(const std::vector<Section> &sections, const std::string &name) {
  for (const auto &s : sections)
    for (const auto &c : s.checks)
      if (c.name == name)
        return &c;
  return nullptr;
}

std::vector<std::vector<int>> generator_images(const PermGroup &g) {
  std::vector<std::vector<int>> out;
  for (const auto &p : g.generators())
    out.push_back(oracle::images(p));
  return out;
}

// Random generators that permute consecutive blocks of size degree / blocks.
PermGroup random_group(std::mt19937 &rng, int degree, int blocks) {
  int count = std::uniform_int_distribution<int>(1, 3)(rng);
  int size = degree / blocks;
  std::vector<Permutation> gens;
  for (int i = 0; i < count; ++i) {
    std::vector<Point> outer(blocks);
    std::iota(outer.begin(), outer.end(), 0);
    std::shuffle(outer.begin(), outer.end(), rng);
    std::vector<Point> img(degree);
    for (int b = 0; b < blocks; ++b) {
      std::vector<Point> inner(size);
      std::iota(inner.begin(), inner.end(), 0);
      std::shuffle(inner.begin(), inner.end(), rng);
      for (int k = 0; k < size; ++k)
        img[b * size + k] = outer[b] * size + inner[k];
    }
    gens.emplace_back(img);
  }
  return PermGroup(degree, gens);
}

PermGroup random_transitive(std::mt19937 &rng, int max_degree, bool prefer_blocks) {
  for (;;) {
    int degree = std::uniform_int_distribution<int>(2, max_degree)(rng);
    int blocks = 1;
    if (prefer_blocks) {
      std::vector<int> divisors;
      for (int d = 2; d < degree; ++d)
        if (degree % d == 0)
          divisors.push_back(d);
      if (!divisors.empty())
        blocks = divisors[rng() % divisors.size()];
    }
    auto g = random_group(rng, degree, blocks);
    if (is_transitive(g))
      return g;
  }
}

Result example_two() {
  auto sections = verify_examples(bundled_fixtures(), ExampleOptions{});
  Result out;
  for (const auto *name : {"bass_serre_biregular", "distance_two_orbital", "connectivity_one",
                           "lobe_isomorphism", "imprimitivity_witness",
                           "full_automorphism_criterion"}) {
    const auto *c = find_check(sections, name);
    bool ok = c && c->outcome == orbends::Outcome::pass;
    out.ok = out.ok && ok;
    if (!ok)
      out.detail += std::string(name) + " failed; ";
  }
  const auto *w = find_check(sections, "imprimitivity_witness");
  if (out.ok && w)
    out.detail = "all stages pass, " + w->evidence.front().second;
  return out;
}

Result example_three() {
  auto c5 = c5_template();
  auto criterion = connectivity_one_primitivity_criterion(c5, 3);
  Result out;
  out.ok = criterion.verdict == PrimitivityVerdict::imprimitive &&
           criterion.reasons ==
               std::vector<CriterionReason>{CriterionReason::lobe_is_odd_prime_directed_cycle};
  auto trunc = build_truncation(c5, 3, 3);
  auto gens = truncation_automorphisms(trunc, true);
  std::size_t handles = 0;
  for (const auto &h : thin_handles(trunc, 3)) {
    auto v = end_orbit_trichotomy(trunc, h, GroupContext::closed_primitive_tree_like, 3, &gens);
    out.ok = out.ok && v.orbit_class == EndOrbitClass::continuum;
    ++handles;
  }
  out.ok = out.ok && handles > 0;
  out.detail = "IMPRIMITIVE/" + to_string(criterion.reasons.front()) + ", " +
               std::to_string(handles) + " thin handles continuum";
  return out;
}

Result higman_agreement() {
  std::mt19937 rng(20261017);
  int groups = 0, agree = 0, primitive = 0;
  while (groups < 150) {
    auto g = random_transitive(rng, 10, groups % 2 == 1);
    bool expected = !oracle::has_invariant_partition(generator_images(g), g.degree());
    bool higman = higman_primitivity(g);
    bool blocks = block_system_search(g).has_value();
    ++groups;
    if (higman == expected && blocks == !expected)
      ++agree;
    primitive += expected;
  }
  return {agree == groups, std::to_string(agree) + "/" + std::to_string(groups) +
                               " agree (" + std::to_string(primitive) + " primitive)"};
}

Result paired_suborbits() {
  std::mt19937 rng(4);
  int groups = 0, pairs = 0;
  bool ok = true;
  while (groups < 20) {
    auto g = random_transitive(rng, 7, groups % 2 == 0);
    ++groups;
    auto sub = paired_subdegrees(g, 0);
    // Suborbit sizes by brute force over the element list: Delta(0) is the
    // image set of b under the stabiliser of 0, Delta*(0) the set of 0^x
    // for x mapping b to 0.
    auto all = oracle::group_closure(generator_images(g), g.degree());
    for (const auto &orb : orbitals_at(g, 0)) {
      const int b = orb.base_pair.second;
      std::set<int> forward, backward;
      for (const auto &x : all) {
        if (x[0] == 0)
          forward.insert(x[b]);
        if (x[b] == 0)
          backward.insert(x[0]);
      }
      ok = ok && forward.size() == backward.size();
      ++pairs;
    }
    for (auto [out, in] : sub)
      ok = ok && out == in;
  }
  return {ok, std::to_string(groups) + " groups, " + std::to_string(pairs) + " suborbit pairs"};
}

Result amalgam_algebra() {
  Result out;
  std::ostringstream detail;
  for (const auto &spec : {free_product_s2_s3(), valency_two_three_amalgam()}) {
    auto elements = enumerate_elements(spec, 3);
    // Brute-force closure: multiply by single factor elements, keep short words.
    std::set<AmalgamElement> closure{identity_element()};
    std::vector<AmalgamElement> frontier{identity_element()};
    while (!frontier.empty()) {
      std::vector<AmalgamElement> next;
      for (const auto &x : frontier)
        for (Side s : {Side::a, Side::b})
          for (std::size_t i = 0; i < spec.factor_order(s); ++i) {
            std::vector<Letter> letter{{s, spec.element(s, static_cast<int>(i))}};
            auto y = multiply(spec, x, normalize(spec, letter));
            if (y.syllables.size() <= 3 && closure.insert(y).second)
              next.push_back(y);
          }
      frontier = std::move(next);
    }
    out.ok = out.ok && closure.size() == elements.size() &&
             elements.size() == normal_form_count(spec, 3);
    out.ok = out.ok && std::set<AmalgamElement>(elements.begin(), elements.end()) == closure;

    // Group axioms over every triple.
    for (const auto &x : elements) {
      out.ok = out.ok && multiply(spec, x, identity_element()) == x &&
               multiply(spec, x, inverse(spec, x)).is_identity();
      auto word = to_word(spec, x);
      out.ok = out.ok && normalize(spec, word) == x;
      for (const auto &y : elements) {
        auto xy = multiply(spec, x, y);
        for (const auto &z : elements)
          if (multiply(spec, xy, z) != multiply(spec, x, multiply(spec, y, z)))
            out.ok = false;
      }
    }
    // Uniqueness: distinct normal forms move the coset tree differently.
    auto tree = bass_serre_tree(spec, 8);
    std::set<std::vector<int>> actions;
    for (const auto &x : elements) {
      std::vector<int> images;
      for (std::size_t i = 0; i < tree.nodes.size(); ++i)
        if (tree.depth[i] <= 4)
          images.push_back(act_on_tree(spec, tree, x, static_cast<int>(i)).value_or(-1));
      actions.insert(images);
    }
    out.ok = out.ok && actions.size() == elements.size();
    detail << "|C|=" << spec.common_order() << ": " << elements.size() << " forms; ";
  }
  auto two = enumerate_elements(free_product_s2_s3(), 2).size();
  out.ok = out.ok && two == 17;
  detail << two << " elements at <= 2 syllables";
  out.detail = detail.str();
  return out;
}

struct Corpus {
  std::string name;
  LobeTemplate lobe;
};

std::vector<Corpus> corpus() {
  return {{"K3", k3_template()}, {"C5", c5_template()}, {"K4", k4_template()}};
}

std::size_t bfs_vertex_oracle(std::size_t k, int m, int depth) {
  // Queue of (vertex depth); each vertex shallower than `depth` sprouts lobes.
  std::size_t count = 0;
  std::vector<int> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    ++count;
    int d = queue[i];
    if (d == depth)
      continue;
    int lobes = d == 0 ? m : m - 1;
    for (int l = 0; l < lobes; ++l)
      for (std::size_t v = 1; v < k; ++v)
        queue.push_back(d + 1);
  }
  return count;
}

Result truncation_structure() {
  int cases = 0;
  bool ok = true;
  for (const auto &c : corpus())
    for (int m : {2, 3})
      for (int depth = 1; depth <= 3; ++depth) {
        ++cases;
        auto trunc = build_truncation(c.lobe, m, depth);
        const auto n = static_cast<std::size_t>(trunc.graph.vertex_count());
        ok = ok && n == bfs_vertex_oracle(c.lobe.size(), m, depth);
        auto dist = oracle::distances(trunc.graph, trunc.root);
        ok = ok && std::none_of(dist.begin(), dist.end(), [](int x) { return x < 0; });
        auto check = check_truncation(trunc);
        ok = ok && check.ok();
        ok = ok && block_cut_vertex_tree(trunc.graph) == trunc.tree;
        auto decomposition = cut_vertices_and_lobes(trunc.graph);
        std::vector<int> lobes_at(n, 0);
        for (const auto &lobe : decomposition.lobes) {
          ok = ok && lobe.vertices.size() == c.lobe.size();
          for (Vertex v : lobe.vertices)
            ++lobes_at[v];
        }
        for (Vertex v = 0; v < static_cast<Vertex>(n); ++v)
          if (!trunc.graph.is_frontier(v))
            ok = ok && lobes_at[v] == m;
      }
  return {ok, std::to_string(cases) + " truncations"};
}

Result end_counting() {
  bool ok = true;
  int sequences = 0;
  for (const auto &c : corpus())
    for (int m : {2, 3})
      for (int depth = 2; depth <= 4; ++depth) {
        if (truncation_vertex_count(c.lobe.size(), m, depth) > 20000)
          continue;
        auto trunc = build_truncation(c.lobe, m, depth);
        int r = interior_radius(trunc.graph, trunc.root);
        if (r < 1)
          continue;
        ok = ok && is_non_decreasing(end_sequence(trunc.graph, trunc.root, r));
        ++sequences;
      }
  auto k3 = build_truncation(k3_template(), 2, 6);
  auto seq = end_sequence(k3.graph, k3.root, 3);
  for (int r = 1; r <= 3; ++r)
    ok = ok && seq[r - 1] == oracle::frontier_components(k3.graph, k3.root, r);
  ok = ok && seq == std::vector<std::size_t>{4, 8, 16};

  std::string growth_text;
  for (const auto &[t, m] : {std::pair{k3_template(), 2}, std::pair{c5_template(), 3}}) {
    auto trunc = build_truncation(t, m, 5);
    auto gens = truncation_automorphisms(trunc, true);
    auto growth = end_orbit_prefix_growth(trunc, canonical_ray(trunc, 5),
                                          std::span<const SparseMap>(gens), 5);
    for (int d = 1; d <= 4; ++d)
      ok = ok && growth.rows[d].images >= 2 * growth.rows[d - 1].images;
    growth_text += " " + std::to_string(growth.rows[0].images) + ".." +
                   std::to_string(growth.rows[4].images);
  }
  return {ok, std::to_string(sequences) + " monotone sequences, counts 4,8,16, growth" +
                  growth_text};
}

Result trichotomy_fuzz() {
  std::mt19937 rng(500);
  struct Config {
    LobeTemplate lobe;
    int m;
    int depth;
  };
  std::vector<Config> configs;
  for (int m : {2, 3})
    for (int depth = 1; depth <= 3; ++depth) {
      configs.push_back({k3_template(), m, depth});
      configs.push_back({c5_template(), m, depth});
      configs.push_back({k4_template(), m, depth});
    }
  for (int rungs = 3; rungs <= 5; ++rungs)
    for (int m : {2, 3})
      configs.push_back({make_template(ladder_window(rungs), 1, {}, rungs), m, 1});

  std::map<std::size_t, std::pair<TreeLikeTruncation, std::vector<SparseMap>>> built;
  int triples = 0, violations = 0, rejected = 0;
  std::map<std::string, int> tally;
  while (triples < 500) {
    ++triples;
    if (rng() % 10 == 0) {
      auto v = one_ended_trichotomy(ladder_window(4 + static_cast<int>(rng() % 8)), 0);
      violations += v.orbit_class != EndOrbitClass::single;
      ++tally["one-ended/single"];
      continue;
    }
    std::size_t idx = rng() % configs.size();
    auto it = built.find(idx);
    if (it == built.end()) {
      auto trunc = build_truncation(configs[idx].lobe, configs[idx].m, configs[idx].depth);
      auto gens = truncation_automorphisms(trunc, true);
      it = built.emplace(idx, std::make_pair(std::move(trunc), std::move(gens))).first;
    }
    const auto &[trunc, gens] = it->second;
    std::vector<EndHandle> handles;
    for (int d = 1; d <= trunc.depth; ++d)
      for (auto &h : thin_handles(trunc, d))
        handles.push_back(std::move(h));
    if (trunc.lobe_template.declared_end_count == 1)
      for (auto &h : thick_handles(trunc))
        handles.push_back(std::move(h));
    const auto &h = handles[rng() % handles.size()];
    auto context = rng() % 5 == 0 ? GroupContext::one_ended
                                  : GroupContext::closed_primitive_tree_like;
    try {
      auto v = end_orbit_trichotomy(trunc, h, context, std::max(1, h.depth), &gens);
      if (context == GroupContext::one_ended)
        ++violations;
      EndOrbitClass expected = classify_end(trunc, h) == EndType::thick
                                   ? EndOrbitClass::countably_infinite
                                   : EndOrbitClass::continuum;
      violations += v.orbit_class != expected;
      ++tally[to_string(classify_end(trunc, h)) + "/" + to_string(v.orbit_class)];
    } catch (const input_error &) {
      violations += context != GroupContext::one_ended;
      ++rejected;
    }
  }
  std::string detail = std::to_string(triples) + " triples, " + std::to_string(violations) +
                       " violations, " + std::to_string(rejected) + " inconsistent contexts";
  for (const auto &[k, n] : tally)
    detail += ", " + k + "=" + std::to_string(n);
  return {violations == 0, detail};
}

Result z_grading_law() {
  bool ok = true;
  int graphs = 0, graded = 0;
  for (int n = 1; n <= 4; ++n) {
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        pairs.emplace_back(u, v);
    int states = 1;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      states *= 4;
    for (int code = 0; code < states; ++code) {
      std::vector<Arc> arcs;
      int c = code;
      for (auto [u, v] : pairs) {
        int s = c % 4;
        c /= 4;
        if (s & 1)
          arcs.emplace_back(u, v);
        if (s & 2)
          arcs.emplace_back(v, u);
      }
      std::sort(arcs.begin(), arcs.end());
      Digraph g(n, arcs);
      if (!oracle::connected(g))
        continue;
      ++graphs;
      auto levels = z_grading(g);
      // Brute force over level assignments in 0..n-1.
      bool exists = false;
      std::vector<int> lv(n, 0);
      for (int assign = 0, total = static_cast<int>(std::pow(n, n)); assign < total && !exists;
           ++assign) {
        int a = assign;
        for (int v = 0; v < n; ++v) {
          lv[v] = a % n;
          a /= n;
        }
        exists = std::all_of(arcs.begin(), arcs.end(),
                             [&](const Arc &e) { return lv[e.second] == lv[e.first] + 1; });
      }
      ok = ok && levels.has_value() == exists;
      if (levels) {
        ++graded;
        for (auto [u, v] : arcs)
          ok = ok && (*levels)[v] == (*levels)[u] + 1;
      }
    }
  }
  for (int p = 3; p <= 31; p += 2)
    ok = ok && !z_grading(directed_cycle(p)).has_value();
  return {ok, std::to_string(graphs) + " connected digraphs (" + std::to_string(graded) +
                  " graded), odd cycles 3..31 ungraded"};
}

} // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "example-2 reproduction", 10, example_two},
      {2, "example-3 reproduction", 5, example_three},
      {3, "higman and block oracle agreement", 60, higman_agreement},
      {4, "paired suborbit law", 0, paired_suborbits},
      {5, "amalgam algebra", 0, amalgam_algebra},
      {6, "truncation structure", 0, truncation_structure},
      {7, "end counting", 0, end_counting},
      {8, "trichotomy totality and exclusivity", 0, trichotomy_fuzz},
      {9, "z-grading", 0, z_grading_law},
  };
  int failed = 0;
  for (const auto &c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Result out;
    try {
      out = c.body();
    } catch (const std::exception &e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.seconds_limit > 0 && seconds > c.seconds_limit) {
      out.ok = false;
      out.detail += "; over the time limit";
    }
    failed += !out.ok;
    std::printf("%s criterion %d: %s (%s; %.2f s)\n", out.ok ? "PASS" : "FAIL", c.number,
                c.name.c_str(), out.detail.c_str(), seconds);
  }
  return failed == 0 ? 0 : 1;
}
