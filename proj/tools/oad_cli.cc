// oad: propagate, solve, benchmark and generate overlapping AllDifferent
// instances. Exit codes: 0 success (fixpoint / SAT), 1 failure (failure at
// root / UNSAT), 2 usage, parse or size-guard error, 3 TIMEOUT.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "oad/bench.h"
#include "oad/decomp.h"
#include "oad/gen.h"
#include "oad/io.h"
#include "oad/oracle.h"
#include "oad/rules.h"
#include "oad/solver.h"

namespace {

using nlohmann::json;
using namespace oad;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitTimeout = 3;
constexpr int kSchemaVersion = 1;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

PropagationMode SearchMode(const std::string& name) {
  if (name == "obc") return PropagationMode::kObc;
  if (name == "decomp-bc") return PropagationMode::kDecompBc;
  if (name == "decomp-dc") return PropagationMode::kDecompDc;
  throw UsageError("unknown search mode '" + name + "'");
}

std::vector<std::string> SplitCommas(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// "4", "3..6" or "4,8,16".
std::vector<int> IntList(const std::string& text) {
  std::vector<int> out;
  for (const std::string& item : SplitCommas(text)) {
    const size_t dots = item.find("..");
    try {
      if (dots == std::string::npos) {
        out.push_back(std::stoi(item));
      } else {
        const int lo = std::stoi(item.substr(0, dots));
        const int hi = std::stoi(item.substr(dots + 2));
        for (int v = lo; v <= hi; ++v) out.push_back(v);
      }
    } catch (const std::logic_error&) {
      throw UsageError("bad integer list '" + text + "'");
    }
  }
  return out;
}

const char* PruneName(PruneKind kind) {
  switch (kind) {
    case PruneKind::kRemoveValue:
      return "remove";
    case PruneKind::kRaiseLowerBound:
      return "lb";
    case PruneKind::kLowerUpperBound:
      return "ub";
    case PruneKind::kInteriorValue:
      return "interior";
  }
  return "?";
}

struct PropagateArgs {
  std::string file;
  std::string mode = "obc";
  bool json = false;
  int size_guard = kDefaultSubsetGuard;
};

int RunPropagate(const PropagateArgs& args) {
  const InstanceFile file = ReadInstanceFile(args.file);
  const Problem& problem = file.problem;
  problem.Validate();
  const bool bounds_mode =
      args.mode == "obc" || args.mode == "obc-base" || args.mode == "decomp-bc";

  PropagationOutcome out;
  if (args.mode == "obc-base" || args.mode == "rules-dc") {
    const auto inst = AsOverlapInstance(problem);
    if (!inst.has_value()) {
      throw UsageError("mode " + args.mode +
                       " needs exactly one overlapping pair covering every variable");
    }
    if (args.mode == "obc-base") {
      out = PropagateBase(*inst);
    } else {
      RulesOptions options;
      options.size_guard = args.size_guard;
      out = DcByRules(*inst, options);
    }
  } else {
    out = PropagateProblem(problem, SearchMode(args.mode));
  }

  std::vector<Domain> shown;
  std::vector<PruneEvent> log = out.prune_log;
  if (!out.failed()) {
    log.clear();
    for (int i = 0; i < problem.num_vars(); ++i) {
      Domain dom = (*out.domains)[i];
      if (bounds_mode) {
        const auto iv = AsInterval(ToValueSet(dom, problem.max_value));
        if (iv.has_value()) dom = *iv;
      } else {
        dom = ToValueSet(dom, problem.max_value);
      }
      AppendDomainDiff(MakeVarId(i), problem.domains[i], dom, log);
      shown.push_back(std::move(dom));
    }
    for (const PruneEvent& e : out.prune_log) {
      if (e.kind == PruneKind::kInteriorValue) log.push_back(e);
    }
  }
  const std::string message =
      bounds_mode ? "bound disentailed at root" : "domain wiped out at root";

  if (args.json) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "propagate";
    j["mode"] = args.mode;
    j["status"] = out.failed() ? "failure" : "fixpoint";
    if (out.failed()) j["message"] = message;
    j["domains"] = json::array();
    for (size_t i = 0; i < shown.size(); ++i) {
      j["domains"].push_back({{"var", problem.names[i]},
                              {"domain", FormatDomain(shown[i], file.offset)}});
    }
    j["prunes"] = json::array();
    for (const PruneEvent& e : log) {
      j["prunes"].push_back({{"var", problem.names[Index(e.var)]},
                             {"kind", PruneName(e.kind)},
                             {"value", file.ToFileValue(e.value)}});
    }
    std::cout << j.dump(2) << "\n";
  } else if (out.failed()) {
    std::cout << "failure: " << message << "\n";
  } else {
    std::cout << "fixpoint\n";
    for (size_t i = 0; i < shown.size(); ++i) {
      std::cout << problem.names[i] << " " << FormatDomain(shown[i], file.offset) << "\n";
    }
    std::cout << "prunes " << log.size() << "\n";
    for (const PruneEvent& e : log) {
      std::cout << "  " << problem.names[Index(e.var)] << " " << PruneName(e.kind) << " "
                << file.ToFileValue(e.value) << "\n";
    }
  }
  return out.failed() ? kExitFailure : kExitOk;
}

struct SolveArgs {
  std::string file;
  std::string mode = "obc";
  uint64_t seed = 1;
  double timeout_s = 60;
  bool json = false;
};

int RunSolve(const SolveArgs& args) {
  const InstanceFile file = ReadInstanceFile(args.file);
  const SolveResult r = Solve(file.problem, {SearchMode(args.mode), args.seed, args.timeout_s});
  const SearchStats& s = r.stats;
  const char* verdict = s.status == SearchStatus::kSolved  ? "SAT"
                        : s.status == SearchStatus::kUnsat ? "UNSAT"
                                                           : "TIMEOUT";
  if (args.json) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "solve";
    j["mode"] = args.mode;
    j["seed"] = args.seed;
    j["result"] = verdict;
    if (r.solution.has_value()) {
      json assignment = json::object();
      for (int i = 0; i < file.problem.num_vars(); ++i) {
        assignment[file.problem.names[i]] = file.ToFileValue((*r.solution)[i]);
      }
      j["assignment"] = assignment;
    }
    j["stats"] = {{"status", StatusName(s.status)},
                  {"nodes", s.nodes},
                  {"backtracks", s.backtracks},
                  {"time_s", s.wall_time}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << verdict << "\n";
    if (r.solution.has_value()) {
      for (int i = 0; i < file.problem.num_vars(); ++i) {
        std::cout << file.problem.names[i] << " = " << file.ToFileValue((*r.solution)[i]) << "\n";
      }
    }
    std::cout << "status=" << StatusName(s.status) << " nodes=" << s.nodes
              << " backtracks=" << s.backtracks << " time_s=" << s.wall_time << "\n";
  }
  switch (s.status) {
    case SearchStatus::kSolved:
      return kExitOk;
    case SearchStatus::kUnsat:
      return kExitFailure;
    case SearchStatus::kTimeout:
      break;
  }
  return kExitTimeout;
}

struct BenchArgs {
  std::string family = "random";
  std::string n = "4";
  std::string d = "15";
  std::string o = "10";
  int seeds = 20;
  uint64_t first_seed = 1;
  std::string modes = "decomp-bc,decomp-dc,obc";
  double timeout_s = 60;
  int workers = 1;
  std::string out;
  bool json = false;
};

int RunBenchCommand(const BenchArgs& args) {
  BenchConfig config;
  if (args.family == "random") {
    config.family = BenchFamily::kRandom;
  } else if (args.family == "pathological") {
    config.family = BenchFamily::kPathological;
  } else if (args.family == "scaling") {
    config.family = BenchFamily::kScaling;
  } else {
    throw UsageError("unknown family '" + args.family + "'");
  }
  config.n = IntList(args.n);
  config.d = IntList(args.d);
  config.o = IntList(args.o);
  if (args.seeds < 0) throw UsageError("--seeds must be >= 0");
  config.num_seeds = args.seeds;
  config.first_seed = args.first_seed;
  for (const std::string& m : SplitCommas(args.modes)) config.modes.push_back(SearchMode(m));
  config.timeout_s = args.timeout_s;
  config.workers = args.workers;

  const std::vector<BenchRow> rows = RunBench(config);
  std::ofstream file_out;
  if (!args.out.empty()) {
    file_out.open(args.out);
    if (!file_out) throw UsageError("cannot write " + args.out);
  }
  std::ostream& csv = args.out.empty() ? std::cout : file_out;
  std::ostream& report = args.out.empty() ? std::cerr : std::cout;
  csv << kCsvHeader << "\n";
  for (const BenchRow& r : rows) csv << CsvRow(r) << "\n";
  csv.flush();

  const std::vector<BenchSummary> summary = Summarize(rows);
  const std::optional<double> slope =
      config.family == BenchFamily::kScaling ? ScalingSlope(rows) : std::nullopt;
  if (args.json) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "bench";
    j["family"] = args.family;
    j["summary"] = json::array();
    for (const BenchSummary& s : summary) {
      j["summary"].push_back({{"params", s.params},
                              {"mode", s.mode},
                              {"solved", s.solved},
                              {"total", s.total},
                              {"common", s.common},
                              {"mean_time_s", s.mean_time},
                              {"mean_backtracks", s.mean_backtracks}});
    }
    if (slope.has_value()) j["loglog_slope"] = *slope;
    report << j.dump(2) << "\n";
  } else if (!rows.empty()) {
    report << FormatSummary(summary);
    if (slope.has_value()) report << "loglog_slope " << *slope << "\n";
  }
  return kExitOk;
}

struct GenArgs {
  std::string family = "pathological";
  int n = 4;
  int d = 15;
  int o = 10;
  uint64_t seed = 1;
};

int RunGen(const GenArgs& args) {
  Problem p;
  if (args.family == "pathological") {
    p = GenPathological(args.n);
  } else if (args.family == "random") {
    p = GenRandom({args.n, args.d, args.o, args.seed});
  } else {
    throw UsageError("unknown family '" + args.family + "'");
  }
  std::cout << SerializeProblem(p);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Overlapping AllDifferent propagation, search and benchmarks"};
  app.require_subcommand(1);

  PropagateArgs prop;
  auto* cmd_prop = app.add_subcommand("propagate", "Propagate at the root and print domains");
  cmd_prop->add_option("file", prop.file, "Instance file")->required();
  cmd_prop->add_option("--mode", prop.mode, "obc | obc-base | rules-dc | decomp-bc | decomp-dc")
      ->check(CLI::IsMember({"obc", "obc-base", "rules-dc", "decomp-bc", "decomp-dc"}));
  cmd_prop->add_flag("--json", prop.json, "JSON output");
  cmd_prop->add_option("--size-guard", prop.size_guard, "Variable limit for rules-dc");

  SolveArgs solve;
  auto* cmd_solve = app.add_subcommand("solve", "Search for a solution");
  cmd_solve->add_option("file", solve.file, "Instance file")->required();
  cmd_solve->add_option("--mode", solve.mode, "obc | decomp-bc | decomp-dc")
      ->check(CLI::IsMember({"obc", "decomp-bc", "decomp-dc"}));
  cmd_solve->add_option("--seed", solve.seed, "Variable order seed");
  cmd_solve->add_option("--timeout-s", solve.timeout_s, "Time limit in seconds");
  cmd_solve->add_flag("--json", solve.json, "JSON output");

  BenchArgs bench;
  auto* cmd_bench = app.add_subcommand("bench", "Run a benchmark grid and write CSV");
  cmd_bench->add_option("--family", bench.family, "random | pathological | scaling");
  cmd_bench->add_option("--n", bench.n, "List or range, e.g. 4 or 3..6");
  cmd_bench->add_option("--d", bench.d, "List or range");
  cmd_bench->add_option("--o", bench.o, "List or range");
  cmd_bench->add_option("--seeds", bench.seeds, "Number of seeds");
  cmd_bench->add_option("--seed", bench.first_seed, "First seed");
  cmd_bench->add_option("--mode", bench.modes, "Comma-separated search modes");
  cmd_bench->add_option("--timeout-s", bench.timeout_s, "Per-run time limit");
  cmd_bench->add_option("--workers", bench.workers, "Parallel runs")->check(CLI::PositiveNumber);
  cmd_bench->add_option("--out", bench.out, "CSV path (default: stdout)");
  cmd_bench->add_flag("--json", bench.json, "JSON summary");

  GenArgs gen;
  auto* cmd_gen = app.add_subcommand("gen", "Print a generated instance");
  cmd_gen->add_option("family", gen.family, "pathological | random")->required();
  cmd_gen->add_option("--n", gen.n, "Block size");
  cmd_gen->add_option("--d", gen.d, "Value range (random)");
  cmd_gen->add_option("--o", gen.o, "Shared block size (random)");
  cmd_gen->add_option("--seed", gen.seed, "Seed (random)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*cmd_prop) return RunPropagate(prop);
    if (*cmd_solve) return RunSolve(solve);
    if (*cmd_bench) return RunBenchCommand(bench);
    return RunGen(gen);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const SizeGuardExceeded& e) {
    std::cerr << "size guard: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}
