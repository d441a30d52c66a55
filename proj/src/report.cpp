#include "orbends/report.hpp"

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <sstream>

namespace orbends {

std::string_view to_string(ReasonCode r) {
  switch (r) {
  case ReasonCode::ok: return "ok";
  case ReasonCode::mismatch: return "mismatch";
  case ReasonCode::primitive: return "primitive";
  case ReasonCode::imprimitive: return "imprimitive";
  case ReasonCode::lobe_not_primitive: return "lobe_not_primitive";
  case ReasonCode::lobe_is_odd_prime_directed_cycle:
    return "lobe_is_odd_prime_directed_cycle";
  case ReasonCode::lobe_too_small: return "lobe_too_small";
  case ReasonCode::intransitive: return "intransitive";
  case ReasonCode::block_system_found: return "block_system_found";
  case ReasonCode::no_block_system: return "no_block_system";
  case ReasonCode::witness_found: return "witness_found";
  case ReasonCode::witness_not_found: return "witness_not_found";
  case ReasonCode::witness_inconclusive: return "witness_inconclusive";
  case ReasonCode::tree_not_biregular: return "tree_not_biregular";
  case ReasonCode::orbital_mismatch: return "orbital_mismatch";
  case ReasonCode::not_connectivity_one: return "not_connectivity_one";
  case ReasonCode::lobe_isomorphism_failed: return "lobe_isomorphism_failed";
  case ReasonCode::ends_counted: return "ends_counted";
  case ReasonCode::not_monotone: return "not_monotone";
  case ReasonCode::thin_end: return "thin_end";
  case ReasonCode::thick_end: return "thick_end";
  case ReasonCode::end_orbit_single: return "end_orbit_single";
  case ReasonCode::end_orbit_countably_infinite:
    return "end_orbit_countably_infinite";
  case ReasonCode::end_orbit_continuum: return "end_orbit_continuum";
  case ReasonCode::out_of_scope: return "out_of_scope";
  }
  return "unknown";
}

std::string_view to_string(Outcome o) {
  switch (o) {
  case Outcome::pass: return "PASS";
  case Outcome::fail: return "FAIL";
  case Outcome::skipped: return "SKIPPED";
  }
  return "UNKNOWN";
}

Outcome Section::outcome() const {
  bool all_skipped = !checks.empty();
  for (const auto &c : checks) {
    if (c.outcome == Outcome::fail && c.severity == Severity::assert_level)
      return Outcome::fail;
    all_skipped = all_skipped && c.outcome == Outcome::skipped;
  }
  return all_skipped ? Outcome::skipped : Outcome::pass;
}

bool Report::passed() const {
  return std::none_of(sections.begin(), sections.end(), [](const Section &s) {
    return s.outcome() == Outcome::fail;
  });
}

Check make_check(std::string name, bool ok, ReasonCode pass_reason,
                 ReasonCode fail_reason, Evidence evidence, Severity severity) {
  return Check{std::move(name), ok ? Outcome::pass : Outcome::fail,
               ok ? pass_reason : fail_reason, severity, std::move(evidence)};
}

std::string render_text(const Report &r) {
  std::ostringstream out;
  out << "orbends " << r.command << '\n';
  for (const auto &[k, v] : r.provenance)
    out << "  " << k << ": " << v << '\n';
  for (const auto &s : r.sections) {
    out << '\n' << '[' << s.name << "] " << to_string(s.outcome()) << '\n';
    for (const auto &c : s.checks) {
      out << "  " << std::left << std::setw(8) << to_string(c.outcome) << c.name
          << " (" << to_string(c.reason)
          << (c.severity == Severity::info ? ", info" : "") << ")\n";
      for (const auto &[k, v] : c.evidence)
        out << "          " << k << " = " << v << '\n';
    }
  }
  out << "\nresult: " << (r.passed() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

std::string render_kv(const Report &r) {
  std::ostringstream out;
  out << "report.command = " << r.command << '\n';
  for (const auto &[k, v] : r.provenance)
    out << "provenance." << k << " = " << v << '\n';
  for (std::size_t i = 0; i < r.sections.size(); ++i) {
    const auto &s = r.sections[i];
    const std::string sp = "section." + std::to_string(i) + '.';
    out << sp << "name = " << s.name << '\n';
    out << sp << "outcome = " << to_string(s.outcome()) << '\n';
    for (std::size_t j = 0; j < s.checks.size(); ++j) {
      const auto &c = s.checks[j];
      const std::string cp = sp + "check." + std::to_string(j) + '.';
      out << cp << "name = " << c.name << '\n';
      out << cp << "outcome = " << to_string(c.outcome) << '\n';
      out << cp << "reason = " << to_string(c.reason) << '\n';
      out << cp << "level = "
          << (c.severity == Severity::assert_level ? "assert" : "info") << '\n';
      for (const auto &[k, v] : c.evidence)
        out << cp << "evidence." << k << " = " << v << '\n';
    }
  }
  out << "summary.outcome = " << (r.passed() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

std::string fnv1a_digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

} // namespace orbends
