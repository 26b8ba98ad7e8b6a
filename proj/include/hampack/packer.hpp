#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hampack/graph.hpp"

namespace hampack {

struct PackerConfig {
  double reserve_fraction = 0.5;  // fraction of non-factor edges seeded into the pool
  int budget = -1;                // swap budget per conversion; -1 = default_swap_budget(n)
  int factor_degree = -1;         // s override; -1 = planned or fallback search
  std::uint64_t seed = 0;
  int retry_limit = 8;            // conversion variants per 2-factor
  double alpha = 0.1;             // degree-hypothesis margin for planning and bound reporting
  bool lazy_pool = true;          // dump remaining non-factor edges into the pool on first failure
  bool scavenge = true;           // re-extract factors from leftover edges, with repair re-splits
};

struct PlanResult {
  int target = 0;        // guaranteed cycle count
  int factor_degree = 0; // even s to extract
  std::string mode;      // "min-degree" or "near-regular"
};

// Closed-form plan. Throws std::domain_error naming the violated hypothesis.
PlanResult plan(int n, int delta, int Delta, double alpha, const std::string& mode);

struct PackingReport {
  int n = 0;
  int delta = 0;
  int Delta = 0;
  std::string mode;  // "min-degree", "near-regular" or "fallback"
  std::optional<int> target;
  int factor_degree = 0;
  int achieved = 0;
  std::vector<int> swaps;          // |E(C) xor E(F)| per converted factor
  std::vector<int> factor_cycles;  // cycle count of every attempted factor
  int factors_extracted = 0;
  int factors_converted = 0;
  std::optional<double> lower_bound, upper_bound, factor_cap;
  bool verified = false;
  std::uint64_t seed = 0;
  std::int64_t ms = 0;

  // Spec wire schema: {n, delta, Delta, mode, target, s, achieved, cycles,
  // swaps, bounds:{lower,upper,cap}, verified, seed, ms}.
  std::string to_json(const std::vector<HamiltonCycle>& cycles, int indent = -1) const;
};

struct PackResult {
  std::vector<HamiltonCycle> cycles;
  PackingReport report;
};

PackResult pack(const SimpleGraph& g, const PackerConfig& config);

struct BenchInstance {
  std::string label;
  SimpleGraph graph;
};

struct BenchRow {
  std::string instance;
  std::uint64_t seed = 0;
  int n = 0, delta = 0, Delta = 0;
  int achieved = 0, factors = 0, converted = 0;
  std::optional<double> lower_bound, upper_bound, factor_cap, ratio;
  long long swaps_total = 0;
  std::int64_t ms = 0;
};

// One pack run per (instance, seed); rows ordered by instance then seed
// regardless of worker completion order.
std::vector<BenchRow> bench(const std::vector<BenchInstance>& instances,
                            const std::vector<std::uint64_t>& seeds, const PackerConfig& base, int jobs = 1);

std::string bench_json(const std::vector<BenchRow>& rows);
std::string bench_table(const std::vector<BenchRow>& rows);

}  // namespace hampack
