// metageo: geodesic lengths and geodesic words in A wr Z^r and in free
// metabelian groups, with exact desk-scale solvers, certified heuristics,
// and brute-force oracles.

#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "metageo/cli.hpp"
#include "metageo/errors.hpp"

namespace {

struct CliOptions {
  std::string group_text;
  int rank = 2;
  std::string solver = "exact";
  std::string format = "json";
  std::uint64_t seed = 1;
  int max_exact = 0;  // 0 = keep default/env
  int radius = 4;
  int sample = 0;
  int box_margin = 1;
  std::string input = "-";
  int bench_min = 5;
  int bench_max = 12;
  int bench_trials = 3;
};

void add_common_options(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--group", opt.group_text, "wreath group spec, e.g. \"Z2 wr Z^2\"");
  cmd->add_option("--rank", opt.rank, "free metabelian rank");
  cmd->add_option("--solver", opt.solver, "solver name (see README)");
  cmd->add_option("--format", opt.format, "output format: json or text");
  cmd->add_option("--seed", opt.seed, "seed for instance generation");
  cmd->add_option("--max-exact", opt.max_exact,
                  "cap for the exact solvers (overrides METAGEO_MAX_EXACT)");
  cmd->add_option("--radius", opt.radius, "oracle-check word-length bound");
  cmd->add_option("--sample", opt.sample, "oracle-check: sample N words instead of enumerating");
  cmd->add_option("--margin", opt.box_margin, "group Steiner bounding-box margin");
  cmd->add_option("--input", opt.input, "input path or - for stdin");
  cmd->add_option("--bench-min", opt.bench_min, "bench: smallest instance size");
  cmd->add_option("--bench-max", opt.bench_max, "bench: largest instance size");
  cmd->add_option("--bench-trials", opt.bench_trials, "bench: instances per size");
}

int run(metageo::Command command, const CliOptions& opt) {
  metageo::RunConfig config;
  config.command = command;
  if (!opt.group_text.empty()) config.group = metageo::GroupSpec::parse(opt.group_text);
  config.rank = opt.rank;
  config.solver = opt.solver;
  config.format = opt.format;
  config.seed = opt.seed;
  config.caps = metageo::caps_from_env(metageo::SolverCaps{});
  if (opt.max_exact > 0) {
    config.caps.tsp_exact_max_targets = opt.max_exact;
    config.caps.steiner_exact_max_terminals = opt.max_exact;
  }
  config.radius = opt.radius;
  config.sample = opt.sample;
  config.box_margin = opt.box_margin;
  config.bench_min_size = opt.bench_min;
  config.bench_max_size = opt.bench_max;
  config.bench_trials = opt.bench_trials;

  std::ifstream file;
  std::istream* in = &std::cin;
  if (opt.input != "-") {
    file.open(opt.input);
    if (!file) {
      std::cerr << "error: cannot open input file '" << opt.input << "'\n";
      return 3;
    }
    in = &file;
  }
  return metageo::run_command(config, *in, std::cout, std::cerr);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geodesic words in wreath products and free metabelian groups"};
  app.require_subcommand(1);

  CliOptions opt;
  struct Sub {
    const char* name;
    const char* help;
    metageo::Command command;
  };
  const Sub subs[] = {
      {"normal-form", "wreath normal form of each input word", metageo::Command::normal_form},
      {"geodesic-wreath", "geodesic length/word in A wr Z^r", metageo::Command::geodesic_wreath},
      {"geodesic-metabelian", "geodesic length/word in the free metabelian group",
       metageo::Command::geodesic_metabelian},
      {"flow", "edge flow of each input word", metageo::Command::flow},
      {"steiner", "solve Steiner instances (JSON lines)", metageo::Command::steiner},
      {"tsp", "solve walk instances (JSON lines)", metageo::Command::tsp},
      {"oracle-check", "compare a solver against the BFS oracle",
       metageo::Command::oracle_check},
      {"bench", "walk-solver timing table", metageo::Command::bench},
  };
  for (const Sub& s : subs) {
    CLI::App* cmd = app.add_subcommand(s.name, s.help);
    add_common_options(cmd, opt);
    cmd->callback([]() {});
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    for (const Sub& s : subs) {
      if (app.got_subcommand(s.name)) return run(s.command, opt);
    }
    std::cerr << "error: no command selected\n";
    return 2;
  } catch (const metageo::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
