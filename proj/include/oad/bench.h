#ifndef OAD_BENCH_H_
#define OAD_BENCH_H_

// Benchmark harness behind `oad bench`: one row per (instance, seed, mode),
// rows in a fixed order whatever the worker count.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oad/solver.h"

namespace oad {

enum class BenchFamily {
  kRandom,        // GenRandom over the n, d, o grid; seed drives instance and order
  kPathological,  // GenPathological over n; seed drives the variable order
  kScaling,       // PropagateFull wall time on GenScalingInstance over n, d
};

struct BenchConfig {
  BenchFamily family = BenchFamily::kRandom;
  std::vector<int> n;
  std::vector<int> d;
  std::vector<int> o;
  int num_seeds = 1;
  uint64_t first_seed = 1;
  std::vector<PropagationMode> modes;  // ignored by kScaling
  double timeout_s = 60;
  int workers = 1;
};

struct BenchRow {
  std::string family;
  std::string params;  // "n=4;d=15;o=10"
  uint64_t seed = 0;
  std::string mode;
  std::string status;  // Solved, Unsat, Timeout, Error; Fixpoint/Failure for scaling
  int64_t nodes = 0;
  int64_t backtracks = 0;
  double time_s = 0;
};

// Rows ordered by params (grid order), then seed, then mode.
std::vector<BenchRow> RunBench(const BenchConfig& config);

inline constexpr const char* kCsvHeader =
    "family,params,seed,mode,status,nodes,backtracks,time_s";
std::string CsvRow(const BenchRow& row);

struct BenchSummary {
  std::string params;
  std::string mode;
  int solved = 0;  // finished: Solved, Unsat, or a scaling Fixpoint/Failure
  int total = 0;
  int common = 0;  // seeds finished by every mode of this params group
  double mean_time = 0;  // over the common seeds
  double mean_backtracks = 0;  // over the common seeds
};

std::vector<BenchSummary> Summarize(const std::vector<BenchRow>& rows);
std::string FormatSummary(const std::vector<BenchSummary>& summary);

// Least-squares slope of log(mean time) against log(d) over scaling rows
// sharing one n; nullopt with fewer than two distinct d or a zero time.
std::optional<double> ScalingSlope(const std::vector<BenchRow>& rows);

}  // namespace oad

#endif  // OAD_BENCH_H_
