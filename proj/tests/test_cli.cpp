/* End-to-end tests of the command-line binary: exit codes, verdict JSON,
 * boundedness queries, enumeration output and ordering, DOT export, input
 * error handling, and reproducibility of seeded random suites.
 *
 * SPDX-License-Identifier: MIT
 */

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "catch2/catch_amalgamated.hpp"
#include <nlohmann/json.hpp>

using nlohmann::json;

namespace {

#ifndef ORIGIN_CLI_PATH
#define ORIGIN_CLI_PATH "./origin"
#endif
#ifndef ORIGIN_FIXTURE_DIR
#define ORIGIN_FIXTURE_DIR "../fixtures"
#endif

std::string fixture(const std::string& name) {
  return std::string(ORIGIN_FIXTURE_DIR) + "/" + name;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string tmp = std::string("/tmp/origin_cli_out_") + std::to_string(::getpid());
  std::string cmd = std::string(ORIGIN_CLI_PATH) + " " + args + " > " + tmp + " 2>/dev/null";
  int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  std::ifstream in(tmp);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  std::remove(tmp.c_str());
  return r;
}

}  // namespace

TEST_CASE("containment verdicts and exit codes") {
  auto same = run("check-containment " + fixture("copier.json") + " " + fixture("copier.json"));
  CHECK(same.exit_code == 0);
  CHECK(json::parse(same.out)["verdict"] == "contained");

  auto diff = run("check-containment " + fixture("copier.json") + " " +
                  fixture("shifted_copier.json"));
  REQUIRE(diff.exit_code == 1);
  json v = json::parse(diff.out);
  CHECK(v["verdict"] == "not-contained");
  CHECK(v["confirmed"] == true);
  REQUIRE(v["counterexample"].contains("output"));

  // The counterexample replays through enumeration: the reported pair is
  // produced by the left transducer on the reported input.
  std::string word;
  for (const auto& s : v["counterexample"]["input"]) word += s.get<std::string>();
  auto en = run("enumerate " + fixture("copier.json") + " --input " + word + " --max-out 8");
  REQUIRE(en.exit_code == 0);
  bool found = false;
  for (const auto& p : json::parse(en.out))
    if (p["output"] == v["counterexample"]["output"]) found = true;
  CHECK(found);
}

TEST_CASE("equivalence verdict carries the failing direction") {
  auto r = run("check-equivalence " + fixture("copier.json") + " " +
               fixture("shifted_copier.json"));
  REQUIRE(r.exit_code == 1);
  json v = json::parse(r.out);
  CHECK(v["verdict"] == "not-equivalent");
  CHECK(v["failing_direction"] == 1);
  CHECK(v["confirmed"] == true);
}

TEST_CASE("containment modulo a resynchronizer") {
  auto ok = run("check-containment-modulo " + fixture("copier.json") + " " +
                fixture("copier.json") + " --resync " + fixture("r_identity.json"));
  CHECK(ok.exit_code == 0);

  // Adjacent shifts absorb the one-position origin move of the shifted copier
  // only on direction checks where every origin lands next to its source;
  // the reverse-order copier moves origins arbitrarily far, so this fails.
  auto far = run("check-containment-modulo " + fixture("copier.json") + " " +
                 fixture("shifted_copier.json") + " --resync " + fixture("r_adjacent.json"));
  REQUIRE(far.exit_code == 1);
  CHECK(json::parse(far.out)["confirmed"] == true);

  auto unb = run("check-containment-modulo " + fixture("copier.json") + " " +
                 fixture("copier.json") + " --resync " + fixture("r_universal.json"));
  CHECK(unb.exit_code == 2);
}

TEST_CASE("boundedness queries") {
  CHECK(run("resync-bounded " + fixture("r_identity.json")).exit_code == 0);
  CHECK(run("resync-bounded " + fixture("r_adjacent.json")).exit_code == 0);
  CHECK(run("resync-bounded " + fixture("r_first_to_last.json")).exit_code == 0);
  CHECK(run("resync-bounded " + fixture("r_parity.json")).exit_code == 0);
  auto u = run("resync-bounded " + fixture("r_universal.json"));
  CHECK(u.exit_code == 1);
  CHECK(json::parse(u.out)["bounded"] == false);
}

TEST_CASE("enumeration reproduces the reference run with DOT export") {
  std::string dot = "/tmp/origin_cli_fig.dot";
  auto r = run("enumerate " + fixture("figure_run.json") +
               " --input a1a2a3 --max-out 8 --dot " + dot);
  REQUIRE(r.exit_code == 0);
  json pairs = json::parse(r.out);
  REQUIRE(pairs.size() == 1);
  json expect = json::array({json::array({"a1", 1}), json::array({"a2", 2}),
                             json::array({"a3", 3}), json::array({"a2", 2}),
                             json::array({"a1", 1}), json::array({"a1", 1}),
                             json::array({"a2", 2}), json::array({"a3", 3})});
  CHECK(pairs[0]["output"] == expect);

  // DOT: one origin edge per output letter, both ranked rows present.
  std::ifstream in(dot);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string d = ss.str();
  int origin_edges = 0;
  for (std::size_t pos = 0; (pos = d.find("-> i", pos)) != std::string::npos; ++pos)
    ++origin_edges;
  CHECK(origin_edges == 8 + 2);  // 8 origin edges + 2 invisible row edges
  CHECK(d.find("rank=same") != std::string::npos);
  std::remove(dot.c_str());
}

TEST_CASE("normalize --busy emits a well-formed transducer document") {
  auto r = run("normalize --busy " + fixture("copier.json") + " --input aa");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["pad"] == "#");
  CHECK(j["annotated_input"].size() == 2);
  CHECK(j["transducer"].contains("transitions"));
}

TEST_CASE("malformed or missing input exits 2") {
  std::string bad = "/tmp/origin_cli_bad.json";
  { std::ofstream(bad) << "{not json"; }
  CHECK(run("check-containment " + bad + " " + bad).exit_code == 2);
  CHECK(run("check-containment /tmp/no_such_file_origin.json " + bad).exit_code == 2);
  CHECK(run("frobnicate").exit_code == 2);
  CHECK(run("check-containment " + fixture("copier.json")).exit_code == 2);
  std::remove(bad.c_str());
}

TEST_CASE("seeded random suites are byte-identical and clean") {
  auto a = run("random-suite --seed 7 --count 6");
  auto b = run("random-suite --seed 7 --count 6");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  json rep = json::parse(a.out);
  CHECK(rep["count"] == 6);
  CHECK(rep["disagreements"] == 0);
  CHECK(rep["cases"].size() == 6);

  auto empty = run("random-suite --seed 7 --count 0");
  CHECK(empty.exit_code == 0);
  CHECK(json::parse(empty.out)["cases"].empty());

  auto c = run("random-suite --seed 8 --count 6");
  CHECK(c.out != a.out);
}
