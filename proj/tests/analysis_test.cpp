#include <array>
#include <cstdio>
#include <map>
#include <memory>
#include <sstream>
#include <sys/wait.h>

#include <gtest/gtest.h>

#include "orbends/analysis.hpp"
#include "orbends/errors.hpp"
#include "orbends/examples.hpp"

namespace orbends {
namespace {

std::string data(const std::string &name) { return std::string(ORBENDS_DATA_DIR) + "/" + name; }

struct Run {
  int status = -1;
  std::string out;
};

Run cli(const std::string &args) {
  std::string cmd = std::string(ORBENDS_CLI) + " " + args + " 2>/dev/null";
  Run r;
  std::unique_ptr<FILE, int (*)(FILE *)> pipe(popen(cmd.c_str(), "r"), pclose);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0)
    r.out.append(buf.data(), n);
  int raw = pclose(pipe.release());
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::map<std::string, std::string> parse_kv(const std::string &text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    auto eq = line.find(" = ");
    EXPECT_NE(eq, std::string::npos) << line;
    if (eq != std::string::npos)
      kv[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return kv;
}

AnalysisRequest request(Command c, std::vector<std::string> inputs = {}) {
  AnalysisRequest r;
  r.command = c;
  r.input_paths = std::move(inputs);
  return r;
}

const Check *find_check(const Report &r, const std::string &name) {
  for (const auto &s : r.sections)
    for (const auto &c : s.checks)
      if (c.name == name)
        return &c;
  return nullptr;
}

std::string evidence(const Check &c, const std::string &key) {
  for (const auto &[k, v] : c.evidence)
    if (k == key)
      return v;
  return {};
}

TEST(Report, OutcomeRules) {
  Section s{"s", {}};
  s.checks.push_back(make_check("a", false, ReasonCode::ok, ReasonCode::mismatch, {},
                                Severity::info));
  EXPECT_EQ(s.outcome(), Outcome::pass);
  s.checks.push_back(make_check("b", false, ReasonCode::ok, ReasonCode::mismatch));
  EXPECT_EQ(s.outcome(), Outcome::fail);
  Section skipped{"t", {Check{"c", Outcome::skipped, ReasonCode::out_of_scope,
                              Severity::info, {}}}};
  EXPECT_EQ(skipped.outcome(), Outcome::skipped);
  Report r{"x", {}, {skipped}};
  EXPECT_TRUE(r.passed());
  r.sections.push_back(s);
  EXPECT_FALSE(r.passed());
}

TEST(Report, Digest) {
  EXPECT_EQ(fnv1a_digest(""), "fnv1a64:cbf29ce484222325");
  EXPECT_EQ(fnv1a_digest("a"), "fnv1a64:af63dc4c8601ec8c");
}

TEST(Analysis, VerifyExamples) {
  auto report = run(request(Command::verify_examples));
  ASSERT_EQ(report.sections.size(), 3u);
  EXPECT_EQ(report.sections[0].name, "example-2");
  EXPECT_EQ(report.sections[0].outcome(), Outcome::pass);
  EXPECT_EQ(report.sections[1].name, "example-3");
  EXPECT_EQ(report.sections[1].outcome(), Outcome::pass);
  EXPECT_EQ(report.sections[2].name, "example-1");
  EXPECT_EQ(report.sections[2].outcome(), Outcome::skipped);
  EXPECT_TRUE(report.passed());
  const auto *w = find_check(report, "imprimitivity_witness");
  ASSERT_NE(w, nullptr);
  EXPECT_EQ(evidence(*w, "scale"), "witness at scale 4");
}

TEST(Analysis, CorruptedLobeFailsAtIsomorphism) {
  auto r = request(Command::verify_examples);
  r.parameters.lobe_path = data("k3_missing_arc.template");
  auto report = run(r);
  EXPECT_FALSE(report.passed());
  const auto *iso = find_check(report, "lobe_isomorphism");
  ASSERT_NE(iso, nullptr);
  EXPECT_EQ(iso->outcome, Outcome::fail);
  EXPECT_EQ(iso->reason, ReasonCode::lobe_isomorphism_failed);
  for (const auto *name : {"amalgam_indices", "bass_serre_biregular", "distance_two_orbital",
                           "connectivity_one"})
    EXPECT_EQ(find_check(report, name)->outcome, Outcome::pass) << name;
}

TEST(Analysis, DepthRaiseKeepsVerdicts) {
  auto verdicts = [](int depth) {
    auto r = request(Command::verify_examples);
    r.parameters.depth = depth;
    std::vector<std::pair<std::string, Outcome>> out;
    for (const auto &s : run(r).sections)
      for (const auto &c : s.checks)
        out.emplace_back(c.name, c.outcome);
    return out;
  };
  auto base = verdicts(4);
  EXPECT_EQ(verdicts(5), base);
  EXPECT_EQ(verdicts(6), base);
}

TEST(Analysis, GroupAnalyze) {
  auto report = run(request(Command::group_analyze, {data("c4_rotation.group")}));
  const auto *h = find_check(report, "higman_primitivity");
  ASSERT_NE(h, nullptr);
  EXPECT_EQ(h->reason, ReasonCode::imprimitive);
  const auto *b = find_check(report, "block_system");
  ASSERT_NE(b, nullptr);
  EXPECT_EQ(b->reason, ReasonCode::block_system_found);
  EXPECT_EQ(evidence(*b, "blocks"), "{0,2}{1,3}");
  auto s4 = run(request(Command::group_analyze, {data("s4.group")}));
  EXPECT_EQ(find_check(s4, "higman_primitivity")->reason, ReasonCode::primitive);
}

TEST(Analysis, TreelikeCriterion) {
  auto report = run(request(Command::treelike_criterion, {data("c5.template")}));
  const auto *c = find_check(report, "connectivity_one_criterion");
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->reason, ReasonCode::lobe_is_odd_prime_directed_cycle);
  EXPECT_EQ(evidence(*c, "verdict"), "IMPRIMITIVE");
}

TEST(Analysis, CapsAreEnforced) {
  auto r = request(Command::treelike_build, {data("k3.template")});
  r.parameters.depth = 9;
  EXPECT_THROW(run(r), capacity_error);
  r.parameters.depth = 7;
  r.caps.vertices = 100;
  try {
    run(r);
    FAIL();
  } catch (const capacity_error &e) {
    EXPECT_NE(std::string(e.what()).find("cap 100"), std::string::npos);
  }
  auto elements = request(Command::amalgam_elements, {data("s2_s3.amalgam")});
  elements.parameters.max_syllables = 9;
  EXPECT_THROW(run(elements), capacity_error);
}

TEST(Analysis, BadInputsAreErrors) {
  EXPECT_THROW(run(request(Command::group_analyze, {data("k3.template")})), parse_error);
  EXPECT_THROW(run(request(Command::group_analyze, {data("missing.group")})), input_error);
}

TEST(Analysis, KvIsLineOrientedAndStable) {
  auto report = run(request(Command::verify_examples));
  auto kv = render(report, OutputFormat::kv);
  auto parsed = parse_kv(kv);
  EXPECT_EQ(parsed["report.command"], "verify-examples");
  EXPECT_EQ(parsed["provenance.version"], "0.1.0");
  EXPECT_EQ(parsed["section.0.name"], "example-2");
  EXPECT_EQ(parsed["section.2.outcome"], "SKIPPED");
  EXPECT_EQ(parsed["summary.outcome"], "PASS");
  EXPECT_EQ(kv, render(run(request(Command::verify_examples)), OutputFormat::kv));
}

TEST(Cli, DeterministicOutput) {
  for (const auto *args : {"verify-examples", "--output kv verify-examples",
                           "--output kv ends trichotomy " ORBENDS_DATA_DIR "/c5.template"}) {
    auto a = cli(args);
    auto b = cli(args);
    EXPECT_EQ(a.status, 0) << args;
    EXPECT_FALSE(a.out.empty());
    EXPECT_EQ(a.out, b.out) << args;
  }
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli("verify-examples").status, 0);
  EXPECT_EQ(cli("verify-examples --lobe " + data("k3_missing_arc.template")).status, 1);
  EXPECT_EQ(cli("treelike build " + data("k3.template") + " --depth 30").status, 2);
  EXPECT_EQ(cli("group analyze " + data("k3.template")).status, 2);
  EXPECT_EQ(cli("no-such-command").status, 2);
}

TEST(Cli, Subcommands) {
  auto elements = parse_kv(cli("--output kv amalgam elements " + data("s2_s3.amalgam") +
                               " --max-syllables 2").out);
  EXPECT_EQ(elements["section.0.check.0.evidence.count"], "17");

  auto count = cli("--output kv ends count " + data("path21.digraph") +
                   " --radius 3 --center 10");
  EXPECT_EQ(count.status, 0);
  EXPECT_EQ(parse_kv(count.out)["section.0.check.0.evidence.counts"], "2,2,2");

  auto one = parse_kv(cli("--output kv ends trichotomy " + data("ladder10.digraph") +
                          " --context one-ended --center 0").out);
  EXPECT_EQ(one["section.0.check.0.evidence.class"], "single");

  auto thick = cli("ends trichotomy " + data("ladder.template"));
  EXPECT_EQ(thick.status, 0);
  EXPECT_NE(thick.out.find("countably_infinite"), std::string::npos);

  auto witness = parse_kv(cli("--output kv treelike witness " + data("k3.template") +
                              " --amalgam " + data("valency23.amalgam")).out);
  EXPECT_EQ(witness["section.0.check.0.reason"], "witness_found");

  auto tree = cli("amalgam tree " + data("valency23.amalgam") + " --radius 4");
  EXPECT_EQ(tree.status, 0);
  auto build = cli("treelike build " + data("k4.template") + " --depth 2");
  EXPECT_EQ(build.status, 0);
  auto classify = cli("ends classify " + data("k3.template"));
  EXPECT_EQ(classify.status, 0);
}

} // namespace
} // namespace orbends
