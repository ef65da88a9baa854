#include "metageo/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "metageo/errors.hpp"
#include "metageo/json_io.hpp"
#include "metageo/lattice_tsp.hpp"
#include "metageo/metabelian.hpp"
#include "metageo/sampling.hpp"
#include "metageo/steiner.hpp"
#include "metageo/words.hpp"

namespace metageo {

using nlohmann::json;

SolverCaps caps_from_env(SolverCaps base) {
  if (const char* env = std::getenv("METAGEO_MAX_EXACT")) {
    try {
      const int cap = std::stoi(env);
      if (cap < 1) throw std::invalid_argument("nonpositive");
      base.tsp_exact_max_targets = cap;
      base.steiner_exact_max_terminals = cap;
    } catch (const std::exception&) {
      throw ConfigError(std::string("METAGEO_MAX_EXACT is not a positive integer: ") + env);
    }
  }
  return base;
}

namespace {

struct ResultRecord {
  std::string input;
  std::optional<std::int64_t> length;
  std::string method;
  std::optional<std::int64_t> exact;
  std::optional<double> ratio;
  double ms = 0.0;
  std::optional<std::string> word;
  std::optional<std::string> error;
  json extra = json::object();
};

json record_to_json(const ResultRecord& r) {
  json j{{"input", r.input}, {"method", r.method}, {"ms", r.ms}};
  if (r.length) j["length"] = *r.length;
  if (r.exact) j["exact"] = *r.exact;
  if (r.ratio) j["ratio"] = *r.ratio;
  if (r.word) j["word"] = *r.word;
  if (r.error) j["error"] = *r.error;
  for (auto& [k, v] : r.extra.items()) j[k] = v;
  return j;
}

void emit(const ResultRecord& r, const RunConfig& config, std::ostream& out) {
  if (config.format == "json") {
    out << record_to_json(r).dump() << '\n';
    return;
  }
  out << "input=\"" << r.input << "\"";
  if (r.length) out << "\tlength=" << *r.length;
  if (r.exact) out << "\texact=" << *r.exact;
  if (r.ratio) out << "\tratio=" << *r.ratio;
  if (r.word) out << "\tword=\"" << *r.word << "\"";
  for (auto& [k, v] : r.extra.items()) out << '\t' << k << '=' << v.dump();
  if (r.error) out << "\terror=\"" << *r.error << "\"";
  out << "\tmethod=" << r.method << "\tms=" << r.ms << '\n';
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

bool is_comment(const std::string& line) {
  const std::size_t at = line.find_first_not_of(" \t");
  return at != std::string::npos && line[at] == '#';
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

WalkSolver wreath_solver_of(const std::string& name) {
  if (name == "exact") return WalkSolver::exact;
  if (name == "line-exact") return WalkSolver::line_exact;
  if (name == "heuristic") return WalkSolver::heuristic;
  throw ConfigError("unknown wreath solver '" + name + "'");
}

// ---- word-stream commands ---------------------------------------------

ResultRecord do_normal_form(const std::string& text, const RunConfig& config) {
  ResultRecord r;
  r.input = text;
  r.method = "normal-form";
  const Word w = parse_word(text, config.group->alphabet());
  const WreathElement g = normal_form(w, *config.group);
  r.extra["element"] = wreath_element_to_json(g);
  return r;
}

ResultRecord do_geodesic_wreath(const std::string& text, const RunConfig& config,
                                std::ostream& err) {
  ResultRecord r;
  r.input = text;
  const GroupSpec& spec = *config.group;
  const Word w = parse_word(text, spec.alphabet());
  const WreathElement g = evaluate(w, spec);

  WalkSolver solver = wreath_solver_of(config.solver);
  r.method = "wreath-" + config.solver;
  std::optional<std::int64_t> length;
  try {
    length = geodesic_length_wreath(g, spec, solver, config.caps);
  } catch (const CapExceeded& e) {
    if (solver != WalkSolver::exact) throw;
    err << "warning: " << e.what() << "; routing to the heuristic solver\n";
    solver = WalkSolver::heuristic;
    r.method = "wreath-heuristic(fallback)";
    length = geodesic_length_wreath(g, spec, solver, config.caps);
  }
  r.length = *length;
  r.word = format_word(geodesic_word_wreath(g, spec, solver, config.caps));
  if (solver == WalkSolver::heuristic && config.solver == "heuristic") {
    try {
      r.exact = geodesic_length_wreath(g, spec, WalkSolver::exact, config.caps);
      r.ratio = *r.exact == 0 ? 1.0
                              : static_cast<double>(*r.length) / static_cast<double>(*r.exact);
    } catch (const CapExceeded&) {
    }
  }
  return r;
}

ResultRecord do_geodesic_metabelian(const std::string& text, const RunConfig& config) {
  ResultRecord r;
  r.input = text;
  r.method = "metabelian-" + config.solver;
  const Word w = parse_word(text, Alphabet::metabelian(config.rank));
  if (config.solver == "exact") {
    r.length = geodesic_length_exact(w, config.rank, config.box_margin, config.caps);
    r.word = format_word(geodesic_word_metabelian_exact(w, config.rank, config.box_margin,
                                                        config.caps));
    return r;
  }
  const SteinerSolver inner =
      config.solver == "heuristic" ? SteinerSolver::exact : SteinerSolver::mst;
  const ApproxGeodesicResult approx =
      geodesic_length_2approx(w, config.rank, inner, config.caps);
  r.length = approx.estimate;
  r.extra["flow_term"] = approx.exact_flow_term;
  r.extra["tree_length"] = approx.tree_length;
  r.word = format_word(geodesic_word_metabelian(w, config.rank, inner, config.caps));
  try {
    r.exact = geodesic_length_exact(w, config.rank, config.box_margin, config.caps);
    r.ratio =
        *r.exact == 0 ? 1.0 : static_cast<double>(*r.length) / static_cast<double>(*r.exact);
  } catch (const CapExceeded&) {
  }
  return r;
}

ResultRecord do_flow(const std::string& text, const RunConfig& config) {
  ResultRecord r;
  r.input = text;
  r.method = "flow";
  const Word w = parse_word(text, Alphabet::metabelian(config.rank));
  const Flow f = compute_flow(w, config.rank);
  r.extra["flow"] = json(f);
  return r;
}

// ---- JSON-instance commands -------------------------------------------

ResultRecord do_steiner(const std::string& line, const RunConfig& config) {
  ResultRecord r;
  r.input = line;
  const json j = json::parse(line);
  TreeResult tree;
  if (j.contains("terminals")) {
    const SteinerInstance inst = j.get<SteinerInstance>();
    if (config.solver == "exact") {
      tree = rsmt_exact(inst, config.caps);
      r.method = "rsmt-exact";
    } else if (config.solver == "mst") {
      tree = mst_terminals_approx(inst);
      r.method = "rsmt-mst";
    } else {
      throw std::invalid_argument("steiner terminals accept solver exact or mst");
    }
  } else if (j.contains("groups")) {
    const GroupSteinerInstance inst = j.get<GroupSteinerInstance>();
    if (config.solver == "exact") {
      tree = group_steiner_exact(inst, config.box_margin, config.caps);
      r.method = "group-steiner-exact";
    } else if (config.solver == "heuristic") {
      tree = group_steiner_via_representatives(inst, SteinerSolver::exact, config.caps);
      r.method = "group-steiner-representatives-exact";
    } else if (config.solver == "mst") {
      tree = group_steiner_via_representatives(inst, SteinerSolver::mst, config.caps);
      r.method = "group-steiner-representatives-mst";
    } else {
      throw std::invalid_argument("steiner groups accept solver exact, heuristic or mst");
    }
  } else {
    throw std::invalid_argument("steiner instance needs a 'terminals' or 'groups' key");
  }
  r.length = tree.total_length;
  r.extra["result"] = json(tree);
  return r;
}

ResultRecord do_tsp(const std::string& line, const RunConfig& config) {
  ResultRecord r;
  r.input = line;
  const WalkInstance inst = json::parse(line).get<WalkInstance>();
  WalkSolution sol;
  if (config.solver == "exact") {
    sol = exact_walk_held_karp(inst, config.caps);
  } else if (config.solver == "line-exact") {
    sol = exact_walk_line(inst);
  } else if (config.solver == "heuristic") {
    sol = approx_walk(inst, ApproxWalkVariant::nn_two_opt);
  } else if (config.solver == "mst") {
    sol = approx_walk(inst, ApproxWalkVariant::mst_shortcut);
  } else if (config.solver == "bruteforce") {
    sol = permutation_bruteforce(inst, config.caps);
  } else {
    throw ConfigError("unknown tsp solver '" + config.solver + "'");
  }
  r.method = "tsp-" + config.solver;
  r.length = sol.length;
  r.extra["result"] = json(sol);
  return r;
}

// ---- oracle-check -------------------------------------------------------

struct OracleStats {
  long long words = 0;
  long long mismatches = 0;
  long long violations = 0;
  double max_ratio = 1.0;
  double sum_ratio = 0.0;
  double max_excess = 0.0;
  std::string worst_word;

  void account(std::int64_t estimate, int oracle_dist, const std::string& word_text,
               bool exact_solver) {
    ++words;
    const double ratio = oracle_dist == 0 ? (estimate == 0 ? 1.0 : 0.0)
                                          : static_cast<double>(estimate) / oracle_dist;
    const double excess = oracle_dist == 0
                              ? (estimate == 0 ? 0.0 : 3.0)
                              : static_cast<double>(estimate - oracle_dist) / oracle_dist;
    sum_ratio += ratio;
    if (ratio > max_ratio || (estimate != oracle_dist && worst_word.empty())) {
      worst_word = word_text;
    }
    max_ratio = std::max(max_ratio, ratio);
    max_excess = std::max(max_excess, excess);
    if (estimate != oracle_dist && exact_solver) ++mismatches;
    if (!exact_solver && excess > 2.0) ++violations;
  }

  json summary() const {
    return json{{"words", words},
                {"mismatches", mismatches},
                {"violations", violations},
                {"max_ratio", max_ratio},
                {"mean_ratio", words == 0 ? 1.0 : sum_ratio / static_cast<double>(words)},
                {"max_excess", max_excess},
                {"worst_word", worst_word}};
  }
};

int oracle_check(const RunConfig& config, std::ostream& out) {
  OracleStats stats;
  json summary;

  const bool wreath_mode = config.group.has_value();
  std::vector<Word> words;
  const Alphabet alphabet =
      wreath_mode ? config.group->alphabet() : Alphabet::metabelian(config.rank);
  if (config.sample > 0) {
    std::mt19937_64 rng(config.seed);
    for (int i = 0; i < config.sample; ++i) {
      const int len = std::uniform_int_distribution<int>(0, config.radius)(rng);
      words.push_back(random_reduced_word(rng, alphabet, len));
    }
  } else {
    enumerate_reduced_words(alphabet, config.radius,
                            [&](const Word& w) { words.push_back(w); });
  }

  if (wreath_mode) {
    const GroupSpec& spec = *config.group;
    const bool exact_solver = config.solver == "exact" || config.solver == "line-exact";
    const WalkSolver solver = wreath_solver_of(config.solver);
    const WreathBall ball(spec, config.radius, config.caps);
    for (const Word& w : words) {
      const WreathElement g = evaluate(w, spec);
      const auto d = ball.distance(g);
      if (!d) throw std::logic_error("oracle-check: element escaped the ball");
      stats.account(geodesic_length_wreath(g, spec, solver, config.caps), *d, format_word(w),
                    exact_solver);
    }
    summary = stats.summary();
    summary["mode"] = "wreath";
    summary["group"] = spec.to_string();
  } else {
    const bool exact_solver = config.solver == "exact";
    const FlowBall ball(config.rank, config.radius, config.caps);
    for (const Word& w : words) {
      const auto d = ball.distance(compute_flow(w, config.rank));
      if (!d) throw std::logic_error("oracle-check: element escaped the ball");
      std::int64_t est;
      if (config.solver == "exact") {
        est = geodesic_length_exact(w, config.rank, config.box_margin, config.caps);
      } else if (config.solver == "heuristic") {
        est = geodesic_length_2approx(w, config.rank, SteinerSolver::exact, config.caps).estimate;
      } else if (config.solver == "mst") {
        est = geodesic_length_2approx(w, config.rank, SteinerSolver::mst, config.caps).estimate;
      } else {
        throw ConfigError("unknown metabelian solver '" + config.solver + "'");
      }
      stats.account(est, *d, format_word(w), exact_solver);
    }
    summary = stats.summary();
    summary["mode"] = "metabelian";
    summary["rank"] = config.rank;
  }
  summary["radius"] = config.radius;
  summary["solver"] = config.solver;
  summary["sampled"] = config.sample > 0;

  if (config.format == "json") {
    out << summary.dump() << '\n';
  } else {
    out << "oracle-check " << summary["mode"].get<std::string>() << " solver=" << config.solver
        << " radius=" << config.radius << " words=" << stats.words
        << " mismatches=" << stats.mismatches << " violations=" << stats.violations
        << " max_ratio=" << stats.max_ratio << " mean_ratio="
        << (stats.words == 0 ? 1.0 : stats.sum_ratio / static_cast<double>(stats.words))
        << " max_excess=" << stats.max_excess << " worst=\"" << stats.worst_word << "\"\n";
  }
  return (stats.mismatches > 0 || stats.violations > 0) ? 1 : 0;
}

// ---- bench --------------------------------------------------------------

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : (xs[n / 2 - 1] + xs[n / 2]) / 2.0;
}

int bench(const RunConfig& config, std::ostream& out) {
  std::optional<int> crossover;
  for (int size = config.bench_min_size; size <= config.bench_max_size; ++size) {
    std::mt19937_64 rng(config.seed ^ (0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(size)));
    std::vector<WalkInstance> instances;
    for (int t = 0; t < config.bench_trials; ++t) {
      instances.push_back(random_walk_instance(rng, 2, size, 0, 50));
    }
    std::vector<std::int64_t> digest_data;
    for (const auto& inst : instances) {
      digest_data.insert(digest_data.end(), inst.start.begin(), inst.start.end());
      for (const auto& t : inst.targets) digest_data.insert(digest_data.end(), t.begin(), t.end());
      digest_data.insert(digest_data.end(), inst.end.begin(), inst.end.end());
    }
    const std::uint64_t digest = VecHash{}(digest_data);

    std::vector<double> hk_ms, nn_ms, mst_ms;
    const bool hk_ok = size <= config.caps.tsp_exact_max_targets;
    for (const auto& inst : instances) {
      if (hk_ok) {
        Stopwatch sw;
        exact_walk_held_karp(inst, config.caps);
        hk_ms.push_back(sw.ms());
      }
      {
        Stopwatch sw;
        approx_walk(inst, ApproxWalkVariant::nn_two_opt);
        nn_ms.push_back(sw.ms());
      }
      {
        Stopwatch sw;
        approx_walk(inst, ApproxWalkVariant::mst_shortcut);
        mst_ms.push_back(sw.ms());
      }
    }
    json row{{"size", size},
             {"digest", digest},
             {"trials", config.bench_trials},
             {"nn2opt_ms", median(nn_ms)},
             {"mst_ms", median(mst_ms)}};
    if (hk_ok) {
      row["held_karp_ms"] = median(hk_ms);
      if (!crossover && median(hk_ms) > median(nn_ms)) crossover = size;
    }
    if (config.format == "json") {
      out << row.dump() << '\n';
    } else {
      out << "size=" << size << "\tdigest=" << digest;
      if (hk_ok) out << "\theld_karp_ms=" << median(hk_ms);
      out << "\tnn2opt_ms=" << median(nn_ms) << "\tmst_ms=" << median(mst_ms) << '\n';
    }
  }
  json tail{{"crossover_size", crossover ? json(*crossover) : json(nullptr)}};
  if (config.format == "json") {
    out << tail.dump() << '\n';
  } else {
    out << "crossover_size=" << (crossover ? std::to_string(*crossover) : "none") << '\n';
  }
  return 0;
}

// ---- dispatch -----------------------------------------------------------

void validate_config(const RunConfig& config) {
  if (config.format != "json" && config.format != "text") {
    throw ConfigError("unknown output format '" + config.format + "'");
  }
  switch (config.command) {
    case Command::normal_form:
      if (!config.group) throw ConfigError("normal-form requires --group");
      break;
    case Command::geodesic_wreath: {
      if (!config.group) throw ConfigError("geodesic-wreath requires --group");
      wreath_solver_of(config.solver);
      if (config.solver == "line-exact" && config.group->base_rank != 1) {
        throw ConfigError("line-exact requires a rank-1 base group");
      }
      break;
    }
    case Command::geodesic_metabelian:
      if (config.rank < 1) throw ConfigError("geodesic-metabelian requires --rank >= 1");
      if (config.solver != "exact" && config.solver != "heuristic" && config.solver != "mst") {
        throw ConfigError("geodesic-metabelian accepts solver exact, heuristic or mst");
      }
      break;
    case Command::flow:
      if (config.rank < 1) throw ConfigError("flow requires --rank >= 1");
      break;
    case Command::steiner:
      if (config.solver != "exact" && config.solver != "heuristic" && config.solver != "mst") {
        throw ConfigError("steiner accepts solver exact, heuristic or mst");
      }
      break;
    case Command::tsp:
      if (config.solver != "exact" && config.solver != "line-exact" &&
          config.solver != "heuristic" && config.solver != "mst" &&
          config.solver != "bruteforce") {
        throw ConfigError("unknown tsp solver '" + config.solver + "'");
      }
      break;
    case Command::oracle_check:
      if (config.radius < 0) throw ConfigError("oracle-check requires --radius >= 0");
      if (config.group) {
        wreath_solver_of(config.solver);
        if (config.solver == "line-exact" && config.group->base_rank != 1) {
          throw ConfigError("line-exact requires a rank-1 base group");
        }
      } else if (config.solver != "exact" && config.solver != "heuristic" &&
                 config.solver != "mst") {
        throw ConfigError("metabelian oracle-check accepts solver exact, heuristic or mst");
      }
      break;
    case Command::bench:
      if (config.bench_min_size < 1 || config.bench_max_size < config.bench_min_size) {
        throw ConfigError("bench sizes must satisfy 1 <= min <= max");
      }
      break;
  }
}

}  // namespace

int run_command(const RunConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
  validate_config(config);
  if (config.command == Command::oracle_check) return oracle_check(config, out);
  if (config.command == Command::bench) return bench(config, out);

  bool any_error = false;
  std::string raw;
  while (std::getline(in, raw)) {
    const std::string line = strip_cr(raw);
    if (is_comment(line)) continue;
    ResultRecord record;
    record.input = line;
    Stopwatch sw;
    try {
      switch (config.command) {
        case Command::normal_form:
          record = do_normal_form(line, config);
          break;
        case Command::geodesic_wreath:
          record = do_geodesic_wreath(line, config, err);
          break;
        case Command::geodesic_metabelian:
          record = do_geodesic_metabelian(line, config);
          break;
        case Command::flow:
          record = do_flow(line, config);
          break;
        case Command::steiner:
          record = do_steiner(line, config);
          break;
        case Command::tsp:
          record = do_tsp(line, config);
          break;
        default:
          throw std::logic_error("unreachable command");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      record.error = e.what();
      record.method = "error";
      any_error = true;
    }
    record.ms = sw.ms();
    emit(record, config, out);
  }
  return any_error ? 1 : 0;
}

}  // namespace metageo
