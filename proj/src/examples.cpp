#include "orbends/examples.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "orbends/ends.hpp"
#include "orbends/errors.hpp"

namespace orbends {

namespace {

Permutation cycles(int degree, std::vector<std::vector<Point>> cs) {
  return Permutation::from_cycles(degree, cs);
}

PermGroup symmetric_three() {
  return PermGroup(3, {cycles(3, {{0, 1, 2}}), cycles(3, {{0, 1}})});
}

std::string join(const std::vector<std::size_t> &values) {
  std::ostringstream out;
  for (std::size_t i = 0; i < values.size(); ++i)
    out << (i ? "," : "") << values[i];
  return out.str();
}

} // namespace

AmalgamSpec free_product_s2_s3() {
  return AmalgamSpec(PermGroup(2, {cycles(2, {{0, 1}})}), symmetric_three(), {});
}

AmalgamSpec valency_two_three_amalgam() {
  PermGroup a(4, {cycles(4, {{0, 1}}), cycles(4, {{2, 3}})});
  return AmalgamSpec(std::move(a), symmetric_three(),
                     {{cycles(4, {{0, 1}}), cycles(3, {{0, 1}})}});
}

LobeTemplate k3_template() { return make_template(complete_digraph(3)); }
LobeTemplate k4_template() { return make_template(complete_digraph(4)); }
LobeTemplate c5_template() { return make_template(directed_cycle(5)); }

DistanceTwoWindow distance_two_window(const AmalgamSpec &spec, int radius) {
  if (radius < 2 || radius % 2 != 0)
    throw input_error("distance-two window needs an even radius >= 2");
  DistanceTwoWindow w;
  w.tree = bass_serre_tree(spec, radius);
  const auto &tree = w.tree;
  std::vector<int> vertex_of(tree.nodes.size(), -1);
  std::vector<Vertex> frontier;
  for (std::size_t i = 0; i < tree.nodes.size(); ++i)
    if (tree.nodes[i].side == Side::a) {
      vertex_of[i] = static_cast<int>(w.vertex_node.size());
      if (tree.depth[i] == radius)
        frontier.push_back(vertex_of[i]);
      w.vertex_node.push_back(static_cast<int>(i));
    }
  const int n = static_cast<int>(w.vertex_node.size());

  int beta0 = -1;
  for (std::size_t i = 0; i < tree.nodes.size() && beta0 < 0; ++i)
    if (tree.depth[i] == 2)
      beta0 = static_cast<int>(i);

  // An element taking the root to a node at distance 2k can be written with
  // at most 2k + 1 syllables, so radius + 1 syllables reach every pair.
  const int syllables = radius + 1;
  std::set<Arc> orbital;
  for (const auto &g : enumerate_elements(spec, syllables, syllables,
                                          static_cast<std::size_t>(-1))) {
    auto u = tree.find(act_on_coset(spec, g, tree.nodes[tree.root]));
    auto v = tree.find(act_on_coset(spec, g, tree.nodes[beta0]));
    if (u && v)
      orbital.emplace(vertex_of[*u], vertex_of[*v]);
  }

  std::set<Arc> distance_two;
  for (Vertex u = 0; u < n; ++u) {
    int node = w.vertex_node[u];
    for (int blue : tree.adjacency[node])
      for (int other : tree.adjacency[blue])
        if (other != node)
          distance_two.emplace(u, vertex_of[other]);
  }
  w.matches_distance_two = orbital == distance_two;
  std::vector<Arc> arcs(orbital.begin(), orbital.end());
  w.graph = Digraph(n, arcs, frontier);
  return w;
}

std::vector<VertexMap> window_vertex_maps(const AmalgamSpec &spec,
                                          const DistanceTwoWindow &window,
                                          const std::vector<AmalgamElement> &elements) {
  const auto &tree = window.tree;
  std::vector<int> vertex_of(tree.nodes.size(), -1);
  for (std::size_t v = 0; v < window.vertex_node.size(); ++v)
    vertex_of[window.vertex_node[v]] = static_cast<int>(v);
  std::vector<VertexMap> maps;
  maps.reserve(elements.size());
  for (const auto &g : elements) {
    VertexMap map(window.vertex_node.size(), -1);
    for (std::size_t v = 0; v < map.size(); ++v)
      if (auto image = tree.find(act_on_coset(spec, g, tree.nodes[window.vertex_node[v]])))
        map[v] = vertex_of[*image];
    maps.push_back(std::move(map));
  }
  return maps;
}

ExampleFixtures bundled_fixtures() {
  return ExampleFixtures{valency_two_three_amalgam(), k3_template(), c5_template()};
}

namespace {

Section example_one() {
  Section s{"example-1", {}};
  s.checks.push_back(Check{"countable_dense_subgroup_construction",
                           Outcome::skipped,
                           ReasonCode::out_of_scope,
                           Severity::info,
                           {{"note", "closure construction of an infinite topological group"}}});
  return s;
}

Check criterion_check(const std::string &name, const LobeTemplate &t, int m,
                      PrimitivityVerdict expected,
                      std::optional<CriterionReason> expected_reason) {
  auto result = connectivity_one_primitivity_criterion(t, m);
  bool ok = result.verdict == expected;
  if (expected_reason)
    ok = ok && std::find(result.reasons.begin(), result.reasons.end(),
                         *expected_reason) != result.reasons.end();
  std::string reasons;
  for (auto r : result.reasons)
    reasons += (reasons.empty() ? "" : ",") + to_string(r);
  Evidence ev{{"m", std::to_string(m)},
              {"verdict", to_string(result.verdict)},
              {"reasons", reasons.empty() ? "none" : reasons},
              {"lobe_group_order", std::to_string(result.lobe_group_order)}};
  ReasonCode observed = ReasonCode::primitive;
  if (!result.reasons.empty()) {
    switch (expected_reason.value_or(result.reasons.front())) {
    case CriterionReason::lobe_not_primitive:
      observed = ReasonCode::lobe_not_primitive;
      break;
    case CriterionReason::lobe_is_odd_prime_directed_cycle:
      observed = ReasonCode::lobe_is_odd_prime_directed_cycle;
      break;
    case CriterionReason::lobe_too_small:
      observed = ReasonCode::lobe_too_small;
      break;
    }
  }
  return Check{name, ok ? Outcome::pass : Outcome::fail,
               ok ? observed : ReasonCode::mismatch, Severity::assert_level,
               std::move(ev)};
}

Section example_two(const ExampleFixtures &fx, const ExampleOptions &opt) {
  Section s{"example-2", {}};
  const auto &spec = fx.amalgam;
  const int m = 2;
  const int radius = 2 * opt.depth;

  s.checks.push_back(make_check(
      "amalgam_indices",
      spec.index(Side::a) == 2 && spec.index(Side::b) == 3, ReasonCode::ok,
      ReasonCode::mismatch,
      {{"index_a", std::to_string(spec.index(Side::a))},
       {"index_b", std::to_string(spec.index(Side::b))},
       {"common_order", std::to_string(spec.common_order())}}));

  bool maximal = common_is_maximal(spec, Side::a) && common_is_maximal(spec, Side::b);
  s.checks.push_back(make_check("common_subgroup_maximal", maximal, ReasonCode::ok,
                                ReasonCode::mismatch));

  const int tree_radius = std::max(4, radius);
  auto tree = bass_serre_tree(spec, tree_radius);
  bool biregular = true;
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    if (tree.frontier[i])
      continue;
    auto want = tree.nodes[i].side == Side::a ? 2u : 3u;
    biregular = biregular && tree.adjacency[i].size() == want;
  }
  s.checks.push_back(make_check("bass_serre_biregular", biregular, ReasonCode::ok,
                                ReasonCode::tree_not_biregular,
                                {{"radius", std::to_string(tree_radius)},
                                 {"nodes", std::to_string(tree.nodes.size())},
                                 {"valencies", "2,3"}}));

  auto window = distance_two_window(spec, radius);
  s.checks.push_back(make_check(
      "distance_two_orbital", window.matches_distance_two, ReasonCode::ok,
      ReasonCode::orbital_mismatch,
      {{"window_radius", std::to_string(radius)},
       {"vertices", std::to_string(window.graph.vertex_count())},
       {"arcs", std::to_string(window.graph.arc_count())}}));

  auto trunc = adopt_truncation(window.graph, fx.example_two_lobe, m, 0);
  auto structure = check_truncation(trunc);
  s.checks.push_back(make_check(
      "connectivity_one", structure.interior_degree && structure.tree_matches,
      ReasonCode::ok, ReasonCode::not_connectivity_one,
      {{"m", std::to_string(m)},
       {"lobes", std::to_string(trunc.tree.blue_count)}}));
  s.checks.push_back(make_check(
      "lobe_isomorphism",
      structure.lobes_isomorphic && structure.complete_lobes > 0, ReasonCode::ok,
      ReasonCode::lobe_isomorphism_failed,
      {{"complete_lobes", std::to_string(structure.complete_lobes)},
       {"template_vertices", std::to_string(fx.example_two_lobe.size())}}));

  auto elements = enumerate_elements(spec, opt.witness_syllables);
  auto maps = window_vertex_maps(spec, window, elements);
  auto search = imprimitivity_witness_search(trunc, maps);
  Evidence wev{{"scale", "witness at scale " + std::to_string(opt.witness_syllables)},
               {"elements", std::to_string(search.element_count)},
               {"status", to_string(search.status)}};
  if (search.witness) {
    const auto &w = *search.witness;
    wev.emplace_back("alpha", std::to_string(w.alpha));
    wev.emplace_back("beta", std::to_string(w.beta));
    wev.emplace_back("x", std::to_string(w.x));
    wev.emplace_back("x_kind", w.x_is_violet ? "violet" : "blue");
    wev.emplace_back("stabilizer_size", std::to_string(w.stabilizer_size));
  }
  s.checks.push_back(make_check("imprimitivity_witness",
                                search.status == WitnessStatus::found,
                                ReasonCode::witness_found,
                                search.status == WitnessStatus::inconclusive
                                    ? ReasonCode::witness_inconclusive
                                    : ReasonCode::witness_not_found,
                                std::move(wev)));

  s.checks.push_back(criterion_check("full_automorphism_criterion",
                                     fx.example_two_lobe, m,
                                     PrimitivityVerdict::primitive, std::nullopt));
  return s;
}

Section example_three(const ExampleFixtures &fx, const ExampleOptions &opt) {
  Section s{"example-3", {}};
  const int m = 3;
  s.checks.push_back(criterion_check("connectivity_one_criterion",
                                     fx.example_three_lobe, m,
                                     PrimitivityVerdict::imprimitive,
                                     CriterionReason::lobe_is_odd_prime_directed_cycle));

  const int depth = std::clamp(opt.depth, 1, 3);
  auto trunc = build_truncation(fx.example_three_lobe, m, depth);
  auto gens = truncation_automorphisms(trunc, true);
  auto handles = thin_handles(trunc, depth);
  bool all_continuum = !handles.empty();
  for (const auto &e : handles) {
    auto v = end_orbit_trichotomy(trunc, e, GroupContext::closed_primitive_tree_like,
                                  depth, &gens);
    all_continuum = all_continuum && v.orbit_class == EndOrbitClass::continuum;
  }
  auto sample = end_orbit_trichotomy(trunc, canonical_ray(trunc, depth),
                                     GroupContext::closed_primitive_tree_like,
                                     depth, &gens);
  std::vector<std::size_t> growth;
  for (const auto &row : sample.growth->rows)
    growth.push_back(row.images);
  s.checks.push_back(make_check(
      "end_orbit_trichotomy", all_continuum, ReasonCode::end_orbit_continuum,
      ReasonCode::mismatch,
      {{"context", to_string(GroupContext::closed_primitive_tree_like)},
       {"truncation_depth", std::to_string(depth)},
       {"thin_handles", std::to_string(handles.size())},
       {"class", to_string(sample.orbit_class)},
       {"prefix_growth", join(growth)}}));
  return s;
}

} // namespace

std::vector<Section> verify_examples(const ExampleFixtures &fixtures,
                                     const ExampleOptions &options) {
  if (options.depth < 1)
    throw input_error("example depth must be at least 1");
  std::vector<Section> sections;
  sections.push_back(example_two(fixtures, options));
  sections.push_back(example_three(fixtures, options));
  sections.push_back(example_one());
  return sections;
}

} // namespace orbends
