#include "oad/bench.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <thread>

#include "oad/decomp.h"
#include "oad/gen.h"

namespace oad {
namespace {

struct Job {
  std::string params;
  std::vector<int> values;  // n, d, o as used by the family
  uint64_t seed;
  PropagationMode mode;
};

const char* FamilyName(BenchFamily f) {
  switch (f) {
    case BenchFamily::kRandom:
      return "random";
    case BenchFamily::kPathological:
      return "pathological";
    case BenchFamily::kScaling:
      return "scaling";
  }
  return "?";
}

std::vector<Job> Jobs(const BenchConfig& c) {
  std::vector<std::pair<std::string, std::vector<int>>> grid;
  switch (c.family) {
    case BenchFamily::kRandom:
      for (int n : c.n) {
        for (int d : c.d) {
          for (int o : c.o) {
            grid.push_back({"n=" + std::to_string(n) + ";d=" + std::to_string(d) +
                                ";o=" + std::to_string(o),
                            {n, d, o}});
          }
        }
      }
      break;
    case BenchFamily::kPathological:
      for (int n : c.n) grid.push_back({"n=" + std::to_string(n), {n}});
      break;
    case BenchFamily::kScaling:
      for (int n : c.n) {
        for (int d : c.d) {
          grid.push_back({"n=" + std::to_string(n) + ";d=" + std::to_string(d), {n, d}});
        }
      }
      break;
  }
  const std::vector<PropagationMode> modes =
      c.family == BenchFamily::kScaling ? std::vector{PropagationMode::kObc} : c.modes;
  std::vector<Job> jobs;
  for (const auto& [params, values] : grid) {
    for (int k = 0; k < c.num_seeds; ++k) {
      for (PropagationMode m : modes) {
        jobs.push_back({params, values, c.first_seed + static_cast<uint64_t>(k), m});
      }
    }
  }
  return jobs;
}

BenchRow RunJob(const BenchConfig& c, const Job& job) {
  BenchRow row{FamilyName(c.family), job.params, job.seed, ModeName(job.mode), "", 0, 0, 0};
  try {
    if (c.family == BenchFamily::kScaling) {
      const OverlapInstance inst = GenScalingInstance(job.values[0], job.values[1], job.seed);
      // Median of three runs.
      std::vector<double> times;
      bool failed = false;
      for (int rep = 0; rep < 3; ++rep) {
        const auto start = std::chrono::steady_clock::now();
        failed = PropagateFull(inst).failed();
        times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
      }
      std::sort(times.begin(), times.end());
      row.status = failed ? "Failure" : "Fixpoint";
      row.time_s = times[1];
      return row;
    }
    const Problem p = c.family == BenchFamily::kRandom
                          ? GenRandom({job.values[0], job.values[1], job.values[2], job.seed})
                          : GenPathological(job.values[0]);
    const SolveResult r = Solve(p, {job.mode, job.seed, c.timeout_s});
    row.status = StatusName(r.stats.status);
    row.nodes = r.stats.nodes;
    row.backtracks = r.stats.backtracks;
    row.time_s = r.stats.wall_time;
  } catch (const std::exception&) {
    row.status = "Error";
  }
  return row;
}

bool Finished(const BenchRow& r) {
  return r.status == "Solved" || r.status == "Unsat" || r.status == "Fixpoint" ||
         r.status == "Failure";
}

}  // namespace

std::vector<BenchRow> RunBench(const BenchConfig& config) {
  const std::vector<Job> jobs = Jobs(config);
  std::vector<BenchRow> rows(jobs.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t k = next++; k < jobs.size(); k = next++) rows[k] = RunJob(config, jobs[k]);
  };
  const int workers = std::max(1, std::min<int>(config.workers, static_cast<int>(jobs.size())));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return rows;
}

std::string CsvRow(const BenchRow& r) {
  char time[32];
  std::snprintf(time, sizeof time, "%.6f", r.time_s);
  std::ostringstream out;
  out << r.family << "," << r.params << "," << r.seed << "," << r.mode << ","
      << r.status << "," << r.nodes << "," << r.backtracks << "," << time;
  return out.str();
}

std::vector<BenchSummary> Summarize(const std::vector<BenchRow>& rows) {
  std::vector<std::string> params_order, mode_order;
  std::map<std::string, std::map<uint64_t, std::map<std::string, const BenchRow*>>> by;
  for (const BenchRow& r : rows) {
    if (std::find(params_order.begin(), params_order.end(), r.params) == params_order.end()) {
      params_order.push_back(r.params);
    }
    if (std::find(mode_order.begin(), mode_order.end(), r.mode) == mode_order.end()) {
      mode_order.push_back(r.mode);
    }
    by[r.params][r.seed][r.mode] = &r;
  }
  std::vector<BenchSummary> out;
  for (const std::string& params : params_order) {
    const auto& seeds = by[params];
    std::vector<uint64_t> common;
    for (const auto& [seed, modes] : seeds) {
      bool all = true;
      for (const std::string& m : mode_order) {
        const auto it = modes.find(m);
        all = all && it != modes.end() && Finished(*it->second);
      }
      if (all) common.push_back(seed);
    }
    for (const std::string& m : mode_order) {
      BenchSummary s{params, m, 0, 0, static_cast<int>(common.size()), 0, 0};
      for (const auto& [seed, modes] : seeds) {
        const auto it = modes.find(m);
        if (it == modes.end()) continue;
        ++s.total;
        s.solved += Finished(*it->second);
      }
      if (s.total == 0) continue;
      for (uint64_t seed : common) {
        const BenchRow& r = *seeds.at(seed).at(m);
        s.mean_time += r.time_s;
        s.mean_backtracks += static_cast<double>(r.backtracks);
      }
      if (!common.empty()) {
        s.mean_time /= static_cast<double>(common.size());
        s.mean_backtracks /= static_cast<double>(common.size());
      }
      out.push_back(s);
    }
  }
  return out;
}

std::string FormatSummary(const std::vector<BenchSummary>& summary) {
  std::ostringstream out;
  out << "params              mode        solved   common  mean_time_s  mean_backtracks\n";
  for (const BenchSummary& s : summary) {
    char line[200];
    std::snprintf(line, sizeof line, "%-19s %-11s %3d/%-4d %6d  %11.6f  %15.2f\n",
                  s.params.c_str(), s.mode.c_str(), s.solved, s.total, s.common,
                  s.mean_time, s.mean_backtracks);
    out << line;
  }
  return out.str();
}

std::optional<double> ScalingSlope(const std::vector<BenchRow>& rows) {
  std::map<int, std::pair<double, int>> by_d;
  std::optional<int> n;
  for (const BenchRow& r : rows) {
    int rn = 0, rd = 0;
    if (std::sscanf(r.params.c_str(), "n=%d;d=%d", &rn, &rd) != 2) return std::nullopt;
    if (n.has_value() && *n != rn) return std::nullopt;
    n = rn;
    by_d[rd].first += r.time_s;
    by_d[rd].second += 1;
  }
  if (by_d.size() < 2) return std::nullopt;
  std::vector<double> xs, ys;
  for (const auto& [d, acc] : by_d) {
    const double mean = acc.first / acc.second;
    if (mean <= 0) return std::nullopt;
    xs.push_back(std::log(static_cast<double>(d)));
    ys.push_back(std::log(mean));
  }
  const double k = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace oad
