#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "orbends/report.hpp"

namespace orbends {

enum class Command {
  group_analyze,
  treelike_build,
  treelike_criterion,
  treelike_witness,
  amalgam_tree,
  amalgam_elements,
  ends_count,
  ends_classify,
  ends_trichotomy,
  verify_examples,
};

std::string to_string(Command c);

enum class OutputFormat { text, kv };

struct Caps {
  std::size_t vertices = 100000;
  std::size_t group = 100000;
  int syllables = 8;
  int depth = 8;
};

struct Parameters {
  std::optional<int> radius;
  std::optional<int> depth;
  std::optional<int> max_syllables;
  std::optional<int> center;
  std::optional<std::string> context; // "closed-primitive" or "one-ended"
  std::optional<std::string> amalgam_path;
  std::optional<std::string> lobe_path; // verify-examples Example 2 lobe override
};

struct AnalysisRequest {
  Command command = Command::verify_examples;
  std::vector<std::string> input_paths;
  Parameters parameters;
  OutputFormat format = OutputFormat::text;
  Caps caps;
};

/// Reads the inputs, dispatches to the library and collects verdicts.
/// Library errors propagate (parse, capacity, scale, input).
Report run(const AnalysisRequest &request);

std::string render(const Report &report, OutputFormat format);

} // namespace orbends
