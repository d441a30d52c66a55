#include "orbends/analysis.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "orbends/amalgam.hpp"
#include "orbends/digraph.hpp"
#include "orbends/ends.hpp"
#include "orbends/errors.hpp"
#include "orbends/examples.hpp"
#include "orbends/permgroup.hpp"
#include "orbends/treelike.hpp"

namespace orbends {

std::string to_string(Command c) {
  switch (c) {
  case Command::group_analyze: return "group analyze";
  case Command::treelike_build: return "treelike build";
  case Command::treelike_criterion: return "treelike criterion";
  case Command::treelike_witness: return "treelike witness";
  case Command::amalgam_tree: return "amalgam tree";
  case Command::amalgam_elements: return "amalgam elements";
  case Command::ends_count: return "ends count";
  case Command::ends_classify: return "ends classify";
  case Command::ends_trichotomy: return "ends trichotomy";
  case Command::verify_examples: return "verify-examples";
  }
  return "unknown";
}

std::string render(const Report &report, OutputFormat format) {
  return format == OutputFormat::kv ? render_kv(report) : render_text(report);
}

namespace {

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw input_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <class T> std::string list(const std::vector<T> &values) {
  std::ostringstream out;
  for (std::size_t i = 0; i < values.size(); ++i)
    out << (i ? "," : "") << values[i];
  return out.str();
}

std::string nodes(const std::vector<int> &values) {
  return values.empty() ? "none" : list(values);
}

class Runner {
public:
  explicit Runner(const AnalysisRequest &req) : req_(req) {
    report_.command = to_string(req.command);
    report_.provenance.emplace_back("version", library_version);
  }

  Report run() {
    switch (req_.command) {
    case Command::group_analyze: group_analyze(); break;
    case Command::treelike_build: treelike_build(); break;
    case Command::treelike_criterion: treelike_criterion(); break;
    case Command::treelike_witness: treelike_witness(); break;
    case Command::amalgam_tree: amalgam_tree(); break;
    case Command::amalgam_elements: amalgam_elements(); break;
    case Command::ends_count: ends_count(); break;
    case Command::ends_classify: ends_classify(); break;
    case Command::ends_trichotomy: ends_trichotomy(); break;
    case Command::verify_examples: verify(); break;
    }
    return std::move(report_);
  }

private:
  std::string input(std::size_t i) {
    if (i >= req_.input_paths.size())
      throw input_error("missing input file");
    return load(req_.input_paths[i]);
  }

  std::string load(const std::string &path) {
    auto text = read_file(path);
    auto idx = std::to_string(inputs_++);
    report_.provenance.emplace_back("input." + idx + ".path", path);
    report_.provenance.emplace_back("input." + idx + ".digest", fnv1a_digest(text));
    return text;
  }

  int param(const char *name, std::optional<int> value, int fallback) {
    int v = value.value_or(fallback);
    report_.provenance.emplace_back(std::string("param.") + name, std::to_string(v));
    return v;
  }

  int depth_param(int fallback) {
    int d = param("depth", req_.parameters.depth, fallback);
    if (d < 0)
      throw input_error("depth must be non-negative");
    if (d > req_.caps.depth)
      throw capacity_error("depth", static_cast<std::size_t>(req_.caps.depth),
                           static_cast<std::size_t>(d));
    return d;
  }

  Section &section(std::string name) {
    report_.sections.push_back(Section{std::move(name), {}});
    return report_.sections.back();
  }

  TemplateFile template_input() {
    auto file = parse_template(input(0));
    report_.provenance.emplace_back("param.m", std::to_string(file.m));
    return file;
  }

  TreeLikeTruncation build(const TemplateFile &file, int depth) {
    return build_truncation(file.lobe_template, file.m, depth, req_.caps.vertices);
  }

  void group_analyze() {
    auto g = parse_permgroup(input(0));
    auto &s = section("group");
    auto listing = enumerate_elements(g, req_.caps.group);
    bool transitive = is_transitive(g);
    s.checks.push_back(make_check(
        "transitive", transitive, ReasonCode::ok, ReasonCode::intransitive,
        {{"degree", std::to_string(g.degree())},
         {"orbits", std::to_string(orbits(g).size())},
         {"order", (listing.complete ? "" : ">=") + std::to_string(listing.elements.size())}},
        Severity::info));
    if (!transitive || g.degree() < 2) {
      for (const char *name : {"higman_primitivity", "block_system",
                               "primitivity_tests_agree", "paired_subdegrees_equal"})
        s.checks.push_back(Check{name, Outcome::skipped, ReasonCode::intransitive,
                                 Severity::info, {}});
      return;
    }
    bool higman = higman_primitivity(g);
    s.checks.push_back(Check{"higman_primitivity", Outcome::pass,
                             higman ? ReasonCode::primitive : ReasonCode::imprimitive,
                             Severity::info, {}});
    auto blocks = block_system_search(g);
    Evidence bev;
    if (blocks) {
      std::string text;
      for (const auto &b : *blocks)
        text += "{" + list(b) + "}";
      bev.emplace_back("blocks", text);
    }
    s.checks.push_back(Check{"block_system", Outcome::pass,
                             blocks ? ReasonCode::block_system_found
                                    : ReasonCode::no_block_system,
                             Severity::info, std::move(bev)});
    s.checks.push_back(make_check("primitivity_tests_agree", higman == !blocks,
                                  ReasonCode::ok, ReasonCode::mismatch));
    auto pairs = paired_subdegrees(g, 0);
    bool equal = std::all_of(pairs.begin(), pairs.end(),
                             [](auto &p) { return p.first == p.second; });
    std::string text;
    for (auto [a, b] : pairs)
      text += (text.empty() ? "" : ",") + std::to_string(a) + ":" + std::to_string(b);
    s.checks.push_back(make_check("paired_subdegrees_equal", equal, ReasonCode::ok,
                                  ReasonCode::mismatch, {{"subdegrees", text}}));
  }

  void treelike_build() {
    auto file = template_input();
    int depth = depth_param(2);
    auto trunc = build(file, depth);
    auto check = check_truncation(trunc);
    auto &s = section("truncation");
    Evidence ev{{"vertices", std::to_string(trunc.graph.vertex_count())},
                {"arcs", std::to_string(trunc.graph.arc_count())},
                {"lobes", std::to_string(trunc.tree.blue_count)},
                {"complete_lobes", std::to_string(check.complete_lobes)},
                {"frontier", std::to_string(trunc.graph.frontier().size())}};
    for (std::size_t i = 0; i < check.problems.size(); ++i)
      ev.emplace_back("problem." + std::to_string(i), check.problems[i]);
    ReasonCode fail = !check.interior_degree || !check.tree_matches
                          ? ReasonCode::not_connectivity_one
                          : ReasonCode::lobe_isomorphism_failed;
    s.checks.push_back(make_check("structure", check.ok(), ReasonCode::ok, fail,
                                  std::move(ev)));
    auto expected = truncation_vertex_count(file.lobe_template.size(), file.m, depth);
    s.checks.push_back(make_check(
        "vertex_count_formula",
        expected == static_cast<std::size_t>(trunc.graph.vertex_count()),
        ReasonCode::ok, ReasonCode::mismatch, {{"expected", std::to_string(expected)}}));
  }

  void treelike_criterion() {
    auto file = template_input();
    auto result = connectivity_one_primitivity_criterion(file.lobe_template, file.m);
    std::vector<std::string> reasons;
    for (auto r : result.reasons)
      reasons.push_back(to_string(r));
    ReasonCode code = ReasonCode::primitive;
    if (!result.reasons.empty()) {
      switch (result.reasons.front()) {
      case CriterionReason::lobe_not_primitive:
        code = ReasonCode::lobe_not_primitive;
        break;
      case CriterionReason::lobe_is_odd_prime_directed_cycle:
        code = ReasonCode::lobe_is_odd_prime_directed_cycle;
        break;
      case CriterionReason::lobe_too_small:
        code = ReasonCode::lobe_too_small;
        break;
      }
    }
    auto &s = section("criterion");
    s.checks.push_back(Check{
        "connectivity_one_criterion", Outcome::pass, code, Severity::info,
        {{"verdict", to_string(result.verdict)},
         {"reasons", reasons.empty() ? "none" : list(reasons)},
         {"lobe_vertices", std::to_string(file.lobe_template.size())},
         {"lobe_group_order", std::to_string(result.lobe_group_order)},
         {"lobe_group_primitive", result.lobe_group_primitive ? "true" : "false"}}});
  }

  void treelike_witness() {
    auto file = template_input();
    int depth = depth_param(2);
    std::optional<TreeLikeTruncation> trunc;
    std::vector<VertexMap> maps;
    std::string source;
    if (req_.parameters.amalgam_path) {
      auto spec = parse_amalgam(load(*req_.parameters.amalgam_path));
      int k = param("max_syllables", req_.parameters.max_syllables, 4);
      auto window = distance_two_window(spec, 2 * std::max(depth, 1));
      trunc = adopt_truncation(window.graph, file.lobe_template, file.m, 0);
      maps = window_vertex_maps(spec, window,
                                enumerate_elements(spec, k, req_.caps.syllables));
      source = "amalgam elements, at most " + std::to_string(k) + " syllables";
    } else {
      trunc = build(file, depth);
      auto gens = truncation_automorphisms(*trunc, true);
      maps = enumerate_automorphisms(gens, trunc->graph.vertex_count(), req_.caps.group);
      source = "truncation automorphism group";
    }
    auto result = imprimitivity_witness_search(*trunc, maps);
    Evidence ev{{"elements", std::to_string(result.element_count)},
                {"source", source},
                {"triples_scanned", std::to_string(result.triples_scanned)}};
    if (result.witness) {
      const auto &w = *result.witness;
      ev.emplace_back("alpha", std::to_string(w.alpha));
      ev.emplace_back("beta", std::to_string(w.beta));
      ev.emplace_back("x", std::to_string(w.x));
      ev.emplace_back("x_kind", w.x_is_violet ? "violet" : "blue");
      ev.emplace_back("stabilizer_size", std::to_string(w.stabilizer_size));
    }
    ReasonCode code = result.status == WitnessStatus::found ? ReasonCode::witness_found
                      : result.status == WitnessStatus::not_found
                          ? ReasonCode::witness_not_found
                          : ReasonCode::witness_inconclusive;
    auto &s = section("witness");
    s.checks.push_back(
        Check{"imprimitivity_witness", Outcome::pass, code, Severity::info, std::move(ev)});
  }

  void amalgam_tree() {
    auto spec = parse_amalgam(input(0));
    int radius = param("radius", req_.parameters.radius, 2);
    auto tree = bass_serre_tree(spec, radius, req_.caps.vertices);
    std::size_t a_nodes = 0, frontier = 0;
    bool degrees = true;
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
      a_nodes += tree.nodes[i].side == Side::a;
      frontier += tree.frontier[i] != 0;
      if (!tree.frontier[i])
        degrees = degrees && tree.adjacency[i].size() == spec.index(tree.nodes[i].side);
    }
    auto &s = section("coset_tree");
    s.checks.push_back(make_check(
        "degree_law", degrees, ReasonCode::ok, ReasonCode::tree_not_biregular,
        {{"nodes", std::to_string(tree.nodes.size())},
         {"a_nodes", std::to_string(a_nodes)},
         {"b_nodes", std::to_string(tree.nodes.size() - a_nodes)},
         {"frontier", std::to_string(frontier)},
         {"index_a", std::to_string(spec.index(Side::a))},
         {"index_b", std::to_string(spec.index(Side::b))},
         {"common_order", std::to_string(spec.common_order())}}));
    for (Side side : {Side::a, Side::b})
      s.checks.push_back(make_check(std::string("common_maximal_in_") + side_name(side),
                                    common_is_maximal(spec, side), ReasonCode::ok,
                                    ReasonCode::mismatch, {}, Severity::info));
  }

  void amalgam_elements() {
    auto spec = parse_amalgam(input(0));
    int k = param("max_syllables", req_.parameters.max_syllables, 2);
    auto elements = enumerate_elements(spec, k, req_.caps.syllables);
    auto expected = normal_form_count(spec, k);
    Evidence ev{{"count", std::to_string(elements.size())},
                {"expected", std::to_string(expected)}};
    constexpr std::size_t listed = 64;
    for (std::size_t i = 0; i < elements.size() && i < listed; ++i)
      ev.emplace_back("element." + std::to_string(i), format_element(spec, elements[i]));
    auto &s = section("elements");
    s.checks.push_back(make_check("normal_form_count", elements.size() == expected,
                                  ReasonCode::ok, ReasonCode::mismatch, std::move(ev)));
  }

  void ends_count() {
    auto g = parse_digraph(input(0));
    int radius = param("radius", req_.parameters.radius, 1);
    int center = param("center", req_.parameters.center, 0);
    auto counts = end_sequence(g, center, radius);
    auto &s = section("ends");
    s.checks.push_back(Check{"end_counts", Outcome::pass, ReasonCode::ends_counted,
                             Severity::info,
                             {{"counts", counts.empty() ? "none" : list(counts)}}});
    s.checks.push_back(make_check("monotone", is_non_decreasing(counts),
                                  ReasonCode::ok, ReasonCode::not_monotone, {},
                                  Severity::info));
  }

  void ends_classify() {
    auto file = template_input();
    int depth = depth_param(2);
    auto trunc = build(file, depth);
    auto &s = section("classify");
    auto ray = canonical_ray(trunc, depth);
    s.checks.push_back(Check{"canonical_ray", Outcome::pass,
                             classify_end(trunc, ray) == EndType::thin
                                 ? ReasonCode::thin_end
                                 : ReasonCode::thick_end,
                             Severity::info,
                             {{"ray", nodes(ray.ray)}, {"depth", std::to_string(depth)}}});
    if (file.lobe_template.declared_end_count == 1) {
      auto lobe = thick_handles(trunc).front();
      s.checks.push_back(Check{"first_lobe", Outcome::pass,
                               classify_end(trunc, lobe) == EndType::thick
                                   ? ReasonCode::thick_end
                                   : ReasonCode::thin_end,
                               Severity::info,
                               {{"lobe", std::to_string(lobe.lobe)}}});
    }
  }

  void ends_trichotomy() {
    auto context = req_.parameters.context.value_or("closed-primitive");
    report_.provenance.emplace_back("param.context", context);
    auto &s = section("trichotomy");
    if (context == "one-ended") {
      auto g = parse_digraph(input(0));
      int center = param("center", req_.parameters.center, 0);
      auto v = one_ended_trichotomy(g, center);
      s.checks.push_back(Check{"end_orbit_class", Outcome::pass,
                               ReasonCode::end_orbit_single, Severity::assert_level,
                               {{"class", to_string(v.orbit_class)}, {"reason", v.reason}}});
      return;
    }
    if (context != "closed-primitive")
      throw input_error("unknown context '" + context + "'");
    auto file = template_input();
    int depth = depth_param(2);
    auto trunc = build(file, depth);
    auto gens = truncation_automorphisms(trunc, true);
    std::vector<EndHandle> handles = thin_handles(trunc, depth);
    const auto thin_count = handles.size();
    if (file.lobe_template.declared_end_count == 1) {
      auto thick = thick_handles(trunc);
      handles.insert(handles.end(), thick.begin(), thick.end());
    }
    std::size_t continuum = 0, countable = 0, single = 0;
    bool compatible = true;
    for (const auto &e : handles) {
      auto v = end_orbit_trichotomy(trunc, e, GroupContext::closed_primitive_tree_like,
                                    std::min(depth, 3), &gens);
      continuum += v.orbit_class == EndOrbitClass::continuum;
      countable += v.orbit_class == EndOrbitClass::countably_infinite;
      single += v.orbit_class == EndOrbitClass::single;
      auto want = e.kind == EndKind::thin_ray ? EndOrbitClass::continuum
                                              : EndOrbitClass::countably_infinite;
      compatible = compatible && v.orbit_class == want;
    }
    Evidence ev{{"thin_handles", std::to_string(thin_count)},
                {"thick_handles", std::to_string(handles.size() - thin_count)},
                {"continuum", std::to_string(continuum)},
                {"countably_infinite", std::to_string(countable)},
                {"single", std::to_string(single)}};
    if (depth >= 1) {
      auto growth = end_orbit_prefix_growth(trunc, canonical_ray(trunc, depth),
                                            std::span<const SparseMap>(gens), depth);
      std::vector<std::size_t> images;
      for (const auto &row : growth.rows)
        images.push_back(row.images);
      ev.emplace_back("prefix_growth", list(images));
    }
    ReasonCode pass_code = thin_count > 0 ? ReasonCode::end_orbit_continuum
                                          : ReasonCode::end_orbit_countably_infinite;
    s.checks.push_back(make_check("class_kind_compatibility", compatible, pass_code,
                                  ReasonCode::mismatch, std::move(ev)));
  }

  void verify() {
    auto fixtures = bundled_fixtures();
    if (req_.parameters.lobe_path) {
      auto file = parse_template(load(*req_.parameters.lobe_path));
      fixtures.example_two_lobe = file.lobe_template;
    }
    ExampleOptions options;
    options.depth = depth_param(2);
    options.witness_syllables = param("max_syllables", req_.parameters.max_syllables, 4);
    if (options.witness_syllables > req_.caps.syllables)
      throw capacity_error("syllables", static_cast<std::size_t>(req_.caps.syllables),
                           static_cast<std::size_t>(options.witness_syllables));
    report_.sections = verify_examples(fixtures, options);
  }

  const AnalysisRequest &req_;
  Report report_;
  int inputs_ = 0;
};

} // namespace

Report run(const AnalysisRequest &request) { return Runner(request).run(); }

} // namespace orbends
