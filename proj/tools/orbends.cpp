#include <CLI11.hpp>

#include <iostream>

#include "orbends/analysis.hpp"
#include "orbends/errors.hpp"

namespace {

constexpr int exit_failed = 1;
constexpr int exit_error = 2;

struct Options {
  orbends::AnalysisRequest request;
  std::string format = "text";
  std::string input;
};

CLI::App *add_input(CLI::App *cmd, Options &o, const std::string &what) {
  cmd->add_option("input", o.input, what)->required()->check(CLI::ExistingFile);
  return cmd;
}

void add_depth(CLI::App *cmd, Options &o) {
  cmd->add_option("--depth", o.request.parameters.depth, "lobe layers around the root");
}

} // namespace

int main(int argc, char **argv) {
  using orbends::Command;
  Options o;
  auto &params = o.request.parameters;
  auto &caps = o.request.caps;

  CLI::App app{"Orbital digraphs, tree-like truncations and end orbits"};
  app.require_subcommand(1);
  app.add_option("--output", o.format, "report format")
      ->check(CLI::IsMember({"text", "kv"}));
  app.add_option("--cap-vertices", caps.vertices, "vertex cap")->capture_default_str();
  app.add_option("--cap-group", caps.group, "group enumeration cap")->capture_default_str();
  app.add_option("--cap-syllables", caps.syllables, "syllable cap")->capture_default_str();
  app.add_option("--cap-depth", caps.depth, "depth cap")->capture_default_str();
  app.fallthrough();

  std::vector<std::pair<CLI::App *, Command>> leaves;

  auto *group = app.add_subcommand("group", "permutation groups");
  group->require_subcommand(1);
  auto *analyze = add_input(group->add_subcommand("analyze", "primitivity, blocks, subdegrees"),
                            o, "permutation group file");
  leaves.emplace_back(analyze, Command::group_analyze);

  auto *treelike = app.add_subcommand("treelike", "connectivity-one digraphs");
  treelike->require_subcommand(1);
  auto *build = add_input(treelike->add_subcommand("build", "build a truncation"), o,
                          "lobe template file");
  add_depth(build, o);
  leaves.emplace_back(build, Command::treelike_build);
  auto *criterion = add_input(
      treelike->add_subcommand("criterion", "primitivity criterion"), o, "lobe template file");
  leaves.emplace_back(criterion, Command::treelike_criterion);
  auto *witness = add_input(
      treelike->add_subcommand("witness", "imprimitivity witness search"), o,
      "lobe template file");
  add_depth(witness, o);
  witness->add_option("--amalgam", params.amalgam_path, "act with amalgam elements")
      ->check(CLI::ExistingFile);
  witness->add_option("--max-syllables", params.max_syllables, "amalgam element bound");
  leaves.emplace_back(witness, Command::treelike_witness);

  auto *amalgam = app.add_subcommand("amalgam", "free products with amalgamation");
  amalgam->require_subcommand(1);
  auto *tree = add_input(amalgam->add_subcommand("tree", "Bass-Serre tree ball"), o,
                         "amalgam file");
  tree->add_option("--radius", params.radius, "tree radius");
  leaves.emplace_back(tree, Command::amalgam_tree);
  auto *elements = add_input(amalgam->add_subcommand("elements", "normal forms"), o,
                             "amalgam file");
  elements->add_option("--max-syllables", params.max_syllables, "syllable bound");
  leaves.emplace_back(elements, Command::amalgam_elements);

  auto *ends = app.add_subcommand("ends", "ends of truncations");
  ends->require_subcommand(1);
  auto *count = add_input(ends->add_subcommand("count", "frontier components"), o,
                          "digraph file");
  count->add_option("--radius", params.radius, "largest ball radius");
  count->add_option("--center", params.center, "ball centre");
  leaves.emplace_back(count, Command::ends_count);
  auto *classify = add_input(ends->add_subcommand("classify", "thin or thick"), o,
                             "lobe template file");
  add_depth(classify, o);
  leaves.emplace_back(classify, Command::ends_classify);
  auto *trichotomy = add_input(
      ends->add_subcommand("trichotomy", "end orbit class"), o,
      "lobe template file (digraph file for --context one-ended)");
  add_depth(trichotomy, o);
  trichotomy->add_option("--context", params.context, "group context")
      ->check(CLI::IsMember({"closed-primitive", "one-ended"}));
  trichotomy->add_option("--center", params.center, "centre for one-ended digraphs");
  leaves.emplace_back(trichotomy, Command::ends_trichotomy);

  auto *verify = app.add_subcommand("verify-examples", "run the worked examples");
  add_depth(verify, o);
  verify->add_option("--max-syllables", params.max_syllables, "witness element bound");
  verify->add_option("--lobe", params.lobe_path, "replace the Example 2 lobe template")
      ->check(CLI::ExistingFile);
  leaves.emplace_back(verify, Command::verify_examples);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? 0 : exit_error;
  }

  for (auto [cmd, command] : leaves)
    if (cmd->parsed())
      o.request.command = command;
  if (!o.input.empty())
    o.request.input_paths.push_back(o.input);
  o.request.format =
      o.format == "kv" ? orbends::OutputFormat::kv : orbends::OutputFormat::text;

  try {
    auto report = orbends::run(o.request);
    std::cout << orbends::render(report, o.request.format);
    return report.passed() ? 0 : exit_failed;
  } catch (const orbends::error &e) {
    std::cerr << "orbends: " << e.what() << '\n';
    return exit_error;
  }
}
