#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "metageo/cli.hpp"
#include "metageo/json_io.hpp"

using namespace metageo;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = 0;
  std::vector<json> records;
  std::string err;
};

RunResult run_lines(const RunConfig& config, const std::string& input) {
  std::istringstream in(input);
  std::ostringstream out, err;
  RunResult r;
  r.exit_code = run_command(config, in, out, err);
  r.err = err.str();
  std::istringstream lines(out.str());
  std::string line;
  while (std::getline(lines, line)) r.records.push_back(json::parse(line));
  return r;
}

json strip_ms(json j) {
  j.erase("ms");
  return j;
}

}  // namespace

TEST_CASE("geodesic-metabelian streams one record per word") {
  RunConfig config;
  config.command = Command::geodesic_metabelian;
  config.rank = 2;
  config.solver = "exact";
  const RunResult r = run_lines(config, "x1 x2 x1^-1 x2^-1\nx1 x1^-1\n");
  CHECK(r.exit_code == 0);
  REQUIRE(r.records.size() == 2);
  CHECK(r.records[0]["length"] == 4);
  CHECK(r.records[0]["method"] == "metabelian-exact");
  CHECK(r.records[1]["length"] == 0);
  CHECK(r.records[1]["word"] == "");
}

TEST_CASE("normal-form emits the support/cursor record") {
  RunConfig config;
  config.command = Command::normal_form;
  config.group = GroupSpec::parse("Z2 wr Z^2");
  const RunResult r = run_lines(config, "b1 a1 b1^-1\n");
  REQUIRE(r.records.size() == 1);
  const json element = r.records[0]["element"];
  CHECK(element["cursor"] == json::array({0, 0}));
  REQUIRE(element["support"].size() == 1);
  CHECK(element["support"][0]["position"] == json::array({1, 0}));
  CHECK(element["support"][0]["lamps"] == json::array({1}));
}

TEST_CASE("empty input, comments and blank identity lines") {
  RunConfig config;
  config.command = Command::geodesic_metabelian;
  config.solver = "exact";

  CHECK(run_lines(config, "").exit_code == 0);
  CHECK(run_lines(config, "").records.empty());

  const RunResult r = run_lines(config, "# comment\n\nx1\n");
  CHECK(r.exit_code == 0);
  REQUIRE(r.records.size() == 2);  // blank line = identity word, comment skipped
  CHECK(r.records[0]["length"] == 0);
  CHECK(r.records[1]["length"] == 1);
}

TEST_CASE("per-word errors are inline and set exit code 1") {
  RunConfig config;
  config.command = Command::geodesic_metabelian;
  config.rank = 2;
  config.solver = "exact";
  const RunResult r = run_lines(config, "x9\nx1\n");
  CHECK(r.exit_code == 1);
  REQUIRE(r.records.size() == 2);
  CHECK(r.records[0].contains("error"));
  CHECK(r.records[1]["length"] == 1);  // the stream continues
}

TEST_CASE("wreath geodesic with heuristic solver reports exact value and ratio") {
  RunConfig config;
  config.command = Command::geodesic_wreath;
  config.group = GroupSpec::parse("Z2 wr Z^2");
  config.solver = "heuristic";
  const RunResult r = run_lines(config, "b1 a1 b1^-1 b2 a1\n");
  REQUIRE(r.records.size() == 1);
  REQUIRE(r.records[0].contains("exact"));
  REQUIRE(r.records[0].contains("ratio"));
  CHECK(r.records[0]["length"].get<std::int64_t>() >= r.records[0]["exact"].get<std::int64_t>());
  CHECK(r.records[0]["ratio"].get<double>() >= 1.0);
}

TEST_CASE("tsp and steiner accept JSON instance lines") {
  RunConfig config;
  config.command = Command::tsp;
  config.solver = "exact";
  const RunResult tsp =
      run_lines(config, R"({"start":[0,0],"targets":[[1,0],[0,1]],"end":[0,0]})" "\n");
  REQUIRE(tsp.records.size() == 1);
  CHECK(tsp.records[0]["length"] == 4);
  CHECK(tsp.records[0]["result"]["order"].size() == 2);

  config.command = Command::steiner;
  const RunResult rsmt = run_lines(config, R"({"terminals":[[0,0],[2,0],[1,2]]})" "\n");
  REQUIRE(rsmt.records.size() == 1);
  CHECK(rsmt.records[0]["length"] == 4);

  config.solver = "mst";
  const RunResult mst = run_lines(config, R"({"terminals":[[0,0],[2,0],[1,2]]})" "\n");
  CHECK(mst.records[0]["length"] == 5);

  config.solver = "exact";
  const RunResult groups =
      run_lines(config, R"({"groups":[[[0,0]],[[5,0],[6,0],[5,1],[6,1]]]})" "\n");
  CHECK(groups.records[0]["length"] == 5);

  const RunResult bad = run_lines(config, "{\"nope\":1}\nnot json\n");
  CHECK(bad.exit_code == 1);
  CHECK(bad.records.size() == 2);
}

TEST_CASE("JSON schemas round-trip") {
  const json inst = json::parse(R"({"start":[0,0],"targets":[[1,0],[0,1]],"end":[0,0]})");
  CHECK(json(inst.get<WalkInstance>()) == inst);
  const json flow = json::parse(
      R"({"rank":2,"endpoint":[0,0],"edges":[{"base":[0,0],"axis":1,"value":1}]})");
  CHECK(json(flow.get<Flow>()) == flow);
  const json groups = json::parse(R"({"groups":[[[0,0]],[[5,0],[6,0]]]})");
  CHECK(json(groups.get<GroupSteinerInstance>()) == groups);
}

TEST_CASE("deterministic output for fixed config, seed and input") {
  RunConfig config;
  config.command = Command::geodesic_metabelian;
  config.solver = "heuristic";
  config.rank = 2;
  const std::string input = "x1 x2 x1^-1 x2^-1\nx1 x1 x2 x1^-1 x1^-1 x2^-1\n";
  const RunResult a = run_lines(config, input);
  const RunResult b = run_lines(config, input);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(strip_ms(a.records[i]) == strip_ms(b.records[i]));
  }
}

TEST_CASE("oracle-check: exact solvers report zero mismatches") {
  RunConfig config;
  config.command = Command::oracle_check;
  config.group = GroupSpec::parse("Z2 wr Z^2");
  config.solver = "exact";
  config.radius = 3;
  RunResult wreath = run_lines(config, "");
  CHECK(wreath.exit_code == 0);
  REQUIRE(wreath.records.size() == 1);
  CHECK(wreath.records[0]["mismatches"] == 0);
  CHECK(wreath.records[0]["words"] == 1 + 6 + 6 * 5 + 6 * 5 * 5);

  RunConfig meta;
  meta.command = Command::oracle_check;
  meta.rank = 2;
  meta.solver = "exact";
  meta.radius = 4;
  RunResult metabelian = run_lines(meta, "");
  CHECK(metabelian.exit_code == 0);
  CHECK(metabelian.records[0]["mismatches"] == 0);

  meta.solver = "heuristic";
  meta.sample = 200;
  meta.seed = 7;
  RunResult sampled = run_lines(meta, "");
  CHECK(sampled.exit_code == 0);
  CHECK(sampled.records[0]["max_excess"].get<double>() <= 2.0);
  CHECK(run_lines(meta, "").records[0] == sampled.records[0]);  // seeded determinism
}

TEST_CASE("bench: seeded instances are reproducible and scale sanely") {
  RunConfig config;
  config.command = Command::bench;
  config.seed = 42;
  config.bench_min_size = 10;
  config.bench_max_size = 14;
  config.bench_trials = 3;
  const RunResult a = run_lines(config, "");
  const RunResult b = run_lines(config, "");
  REQUIRE(a.records.size() == 6);  // five sizes + crossover summary
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    if (a.records[i].contains("digest")) {
      CHECK(a.records[i]["digest"] == b.records[i]["digest"]);
      CHECK(a.records[i]["size"] == b.records[i]["size"]);
    }
  }
  CHECK(a.records.back().contains("crossover_size"));
  // Held-Karp work grows ~2^size: the largest size cannot undercut the smallest.
  const double t10 = a.records.front()["held_karp_ms"].get<double>();
  const double t14 = a.records[4]["held_karp_ms"].get<double>();
  CHECK(t14 >= t10);
}

TEST_CASE("config validation") {
  RunConfig config;
  config.command = Command::normal_form;  // requires a group
  std::istringstream in;
  std::ostringstream out, err;
  CHECK_THROWS_AS(run_command(config, in, out, err), ConfigError);

  config.command = Command::geodesic_wreath;
  config.group = GroupSpec::parse("Z2 wr Z^2");
  config.solver = "line-exact";  // needs base rank 1
  CHECK_THROWS_AS(run_command(config, in, out, err), ConfigError);

  config.command = Command::geodesic_metabelian;
  config.solver = "bogus";
  CHECK_THROWS_AS(run_command(config, in, out, err), ConfigError);
}

TEST_CASE("binary exit codes: bad flags 2, unreadable input 3") {
  const std::string bin = METAGEO_BIN_PATH;
  auto exit_code = [&](const std::string& args) {
    const std::string cmd = bin + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
  };
  CHECK(exit_code("definitely-not-a-command") == 2);
  CHECK(exit_code("geodesic-metabelian --rank 2 --input /nonexistent/words.txt") == 3);
  CHECK(exit_code("geodesic-metabelian --rank 2 --solver bogus --input /dev/null") == 2);
  CHECK(exit_code("geodesic-metabelian --rank 2 --input /dev/null") == 0);
}

TEST_CASE("METAGEO_MAX_EXACT tightens the caps; flags override the environment") {
  const std::string bin = METAGEO_BIN_PATH;
  // Three lamps: beyond a cap of 2 exact targets, the exact solver falls
  // back to the heuristic with a warning.
  const std::string word = "a1 b1 a1 b1 a1 b1^-1 b1^-1";
  auto run = [&](const std::string& env, const std::string& extra) {
    const std::string cmd = "echo \"" + word + "\" | " + env + " " + bin +
                            " geodesic-wreath --group \"Z2 wr Z^2\" --solver exact " + extra +
                            " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[512];
    while (fgets(buf, sizeof buf, pipe)) out += buf;
    pclose(pipe);
    return json::parse(out);
  };
  CHECK(run("", "")["method"] == "wreath-exact");
  CHECK(run("METAGEO_MAX_EXACT=2", "")["method"] == "wreath-heuristic(fallback)");
  CHECK(run("METAGEO_MAX_EXACT=2", "--max-exact 18")["method"] == "wreath-exact");
  // The fallback still reports a valid length for the same element.
  CHECK(run("METAGEO_MAX_EXACT=2", "")["length"].get<std::int64_t>() >=
        run("", "")["length"].get<std::int64_t>());
}
