#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace orbends {

inline constexpr const char *library_version = "0.1.0";

enum class Outcome { pass, fail, skipped };

/// Only assert-level failures make a report fail.
enum class Severity { assert_level, info };

enum class ReasonCode {
  ok,
  mismatch,
  primitive,
  imprimitive,
  lobe_not_primitive,
  lobe_is_odd_prime_directed_cycle,
  lobe_too_small,
  intransitive,
  block_system_found,
  no_block_system,
  witness_found,
  witness_not_found,
  witness_inconclusive,
  tree_not_biregular,
  orbital_mismatch,
  not_connectivity_one,
  lobe_isomorphism_failed,
  ends_counted,
  not_monotone,
  thin_end,
  thick_end,
  end_orbit_single,
  end_orbit_countably_infinite,
  end_orbit_continuum,
  out_of_scope,
};

std::string_view to_string(ReasonCode r);
std::string_view to_string(Outcome o);

using Evidence = std::vector<std::pair<std::string, std::string>>;

struct Check {
  std::string name;
  Outcome outcome = Outcome::pass;
  ReasonCode reason = ReasonCode::ok;
  Severity severity = Severity::assert_level;
  Evidence evidence;
};

struct Section {
  std::string name;
  std::vector<Check> checks;

  /// skipped when every check is skipped, fail on any assert-level failure.
  Outcome outcome() const;
};

struct Report {
  std::string command;
  Evidence provenance; // version, input digests, parameter echo
  std::vector<Section> sections;

  bool passed() const;
};

/// Convenience for checks whose outcome is a boolean.
Check make_check(std::string name, bool ok, ReasonCode pass_reason,
                 ReasonCode fail_reason, Evidence evidence = {},
                 Severity severity = Severity::assert_level);

std::string render_text(const Report &r);
/// Line-oriented `key = value` in a fixed key order.
std::string render_kv(const Report &r);

/// 64-bit FNV-1a digest as "fnv1a64:<16 hex digits>".
std::string fnv1a_digest(std::string_view bytes);

} // namespace orbends
