#include "hampack/packer.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "hampack/extremal.hpp"
#include "hampack/factors.hpp"
#include "hampack/rotation.hpp"

namespace hampack {

namespace {

constexpr double kEps = 1e-9;

int even_floor(double x) {
  long long r = static_cast<long long>(std::floor(x + kEps));
  r -= r % 2;
  return static_cast<int>(std::max(r, 0LL));
}

}  // namespace

PlanResult plan(int n, int delta, int Delta, double alpha, const std::string& mode) {
  if (!(alpha > 0.0)) throw std::domain_error("alpha must be positive (strict)");
  if (n <= 0) throw std::domain_error("n must be positive");
  const double dn = static_cast<double>(n);
  if (static_cast<double>(delta) + kEps * dn < (0.5 + alpha) * dn)
    throw std::domain_error("minimum degree below (1/2 + alpha) n");

  PlanResult result;
  result.mode = mode;
  int cap;
  if (mode == "min-degree") {
    result.target = static_cast<int>(std::floor(lower_bound_value(n, delta, alpha) + kEps));
    cap = guaranteed_even_r(n, delta, 1);
  } else if (mode == "near-regular") {
    if (static_cast<double>(Delta) > static_cast<double>(delta) + alpha * alpha * dn / 5.0 + kEps)
      throw std::domain_error("maximum degree above delta + alpha^2 n / 5");
    result.target = static_cast<int>(std::floor((static_cast<double>(delta) - alpha * dn) / 2.0 + kEps));
    try {
      cap = guaranteed_even_r_nearreg(n, delta, Delta, alpha / 2.0, 1);
    } catch (const std::domain_error&) {
      cap = guaranteed_even_r(n, delta, 1);
    }
  } else {
    throw std::invalid_argument("unknown planning mode: " + mode);
  }
  result.target = std::max(result.target, 0);
  result.factor_degree = std::min(2 * result.target, cap);
  if (result.factor_degree < 0) result.factor_degree = 0;
  return result;
}

namespace {

struct ConversionStats {
  std::vector<int> swaps;
  std::vector<int> factor_cycles;
  int extracted = 0;
  int converted = 0;
};

// Converts a batch of 2-factors against a shared pool: hardest (most cycles)
// first, per-factor retry variants, failed factors retired into the pool.
// Returns converted Hamilton cycles; lazy edges are dumped into the pool on
// the first failed attempt when enabled.
std::vector<HamiltonCycle> convert_batch(std::vector<CycleCover> factors, ReservePool& pool,
                                         std::vector<Edge>& lazy_rest, int budget, int retries,
                                         ConversionStats* stats) {
  std::stable_sort(factors.begin(), factors.end(),
                   [](const CycleCover& a, const CycleCover& b) { return a.cycle_count() > b.cycle_count(); });
  std::vector<HamiltonCycle> out;
  for (auto& f : factors) {
    if (stats) {
      stats->extracted += 1;
      stats->factor_cycles.push_back(static_cast<int>(f.cycle_count()));
    }
    bool done = false;
    for (int pass = 0; pass < 2 && !done; ++pass) {
      for (int variant = 0; variant <= retries && !done; ++variant) {
        ConversionResult conv = two_factor_to_hamilton(f, pool, budget, variant);
        if (conv.success) {
          out.push_back(conv.cycle);
          if (stats) {
            stats->converted += 1;
            stats->swaps.push_back(conv.edges_changed);
          }
          done = true;
        }
      }
      if (!done && !lazy_rest.empty()) {
        for (const auto& [u, v] : lazy_rest) pool.insert(u, v, ReserveTag::original);
        lazy_rest.clear();
      } else if (!done) {
        break;
      }
    }
    if (!done) {
      // retire: the factor's edges are genuinely unused, feed the pool
      for (const auto& [u, v] : f.edges()) pool.insert(u, v, ReserveTag::recycled);
    }
  }
  return out;
}

void remove_edges_from_pool(ReservePool& pool, const std::vector<Edge>& edges) {
  for (const auto& [u, v] : edges) pool.consume(u, v);
}

}  // namespace

PackResult pack(const SimpleGraph& g, const PackerConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  if (!(config.reserve_fraction > 0.0 && config.reserve_fraction <= 1.0))
    throw std::invalid_argument("reserve fraction must lie in (0, 1]");
  if (config.retry_limit < 0) throw std::invalid_argument("retry limit must be non-negative");

  const int n = g.vertex_count();
  PackResult result;
  PackingReport& rep = result.report;
  rep.n = n;
  rep.seed = config.seed;
  auto profile = degree_profile(g);
  rep.delta = profile.min_degree;
  rep.Delta = profile.max_degree;
  const int budget = config.budget >= 0 ? config.budget : default_swap_budget(n);

  // bound comparisons, where applicable
  if (2 * rep.delta > n && rep.delta < n) rep.upper_bound = upper_bound_value(n, rep.delta);
  try {
    rep.lower_bound = lower_bound_value(n, rep.delta, config.alpha);
  } catch (const std::domain_error&) {
  }
  if (2 * rep.Delta > n)
    rep.factor_cap = r_factor_cap(n, rep.delta, rep.Delta).value();

  // choose the factor degree s
  std::optional<PlanResult> planned;
  const double dn = static_cast<double>(n);
  if (n > 0 && static_cast<double>(rep.delta) + kEps * dn >= (0.5 + config.alpha) * dn) {
    std::string mode =
        (static_cast<double>(rep.Delta) <= static_cast<double>(rep.delta) + config.alpha * config.alpha * dn / 5.0 + kEps)
            ? "near-regular"
            : "min-degree";
    planned = plan(n, rep.delta, rep.Delta, config.alpha, mode);
  }
  rep.mode = planned ? planned->mode : "fallback";
  if (planned) rep.target = planned->target;

  int s = 0;
  SimpleGraph factor_graph(n);
  auto try_extract = [&](int deg) -> bool {
    if (deg <= 0) return false;
    auto attempt = f_factor(g, DegreeSpec::uniform(n, deg));
    if (!attempt.feasible) return false;
    s = deg;
    factor_graph = std::move(attempt.factor);
    return true;
  };

  if (config.factor_degree >= 0) {
    int want = config.factor_degree - (config.factor_degree % 2);
    if (!try_extract(want) && want > 0) {
      auto best = max_even_factor(g);  // fallback when the requested s is infeasible
      s = best.r;
      factor_graph = std::move(best.factor);
    }
  } else if (planned && planned->factor_degree > 0) {
    if (!try_extract(planned->factor_degree)) {
      auto best = max_even_factor(g);
      s = best.r;
      factor_graph = std::move(best.factor);
    }
  } else {
    // largest even s that extracts and leaves at least 10% of edges for the pool
    int hi = std::min(rep.delta, n > 0 ? static_cast<int>(1.8 * static_cast<double>(g.edge_count()) / dn) : 0);
    hi -= hi % 2;
    for (int cand = hi; cand >= 2; cand -= 2)
      if (try_extract(cand)) break;
  }
  rep.factor_degree = s;

  // pool: a seeded reserve_fraction of the non-factor edges up front, the rest lazily
  std::set<Edge> factor_edges;
  for (const auto& e : factor_graph.edges()) factor_edges.insert(e);
  std::vector<Edge> spare;
  for (const auto& e : g.edges())
    if (factor_edges.count(e) == 0) spare.push_back(e);
  Rng pool_rng(mix_seed(config.seed, 0x706f6f6c));
  pool_rng.shuffle(spare);
  std::size_t upfront = static_cast<std::size_t>(std::floor(config.reserve_fraction * static_cast<double>(spare.size())));
  ReservePool pool(n, std::vector<Edge>(spare.begin(), spare.begin() + static_cast<std::ptrdiff_t>(upfront)));
  std::vector<Edge> lazy_rest(spare.begin() + static_cast<std::ptrdiff_t>(upfront), spare.end());
  if (!config.lazy_pool) {
    // without the lazy fallback the remaining spares never become reserve
    lazy_rest.clear();
  }

  ConversionStats stats;
  std::vector<HamiltonCycle> cycles;
  if (s >= 2) {
    auto factors = petersen_decompose(Multigraph::from_simple(factor_graph), mix_seed(config.seed, 0x646563));
    cycles = convert_batch(std::move(factors), pool, lazy_rest, budget, config.retry_limit, &stats);
  }

  // scavenge: re-run extraction -> decomposition -> conversion on leftovers,
  // re-splitting one achieved cycle with the stuck leftover when needed
  if (config.scavenge && n >= 3) {
    for (const auto& [u, v] : lazy_rest) pool.insert(u, v, ReserveTag::original);
    lazy_rest.clear();
    for (int round = 0; round < 2 * n + 8; ++round) {
      SimpleGraph leftover = SimpleGraph::from_edges(n, pool.edges());
      auto even = max_even_factor(leftover);
      if (even.r < 2) break;
      remove_edges_from_pool(pool, even.factor.edges());
      auto factors = petersen_decompose(Multigraph::from_simple(even.factor),
                                        mix_seed(config.seed, 0x736376 + static_cast<std::uint64_t>(round)));
      auto gained = convert_batch(std::move(factors), pool, lazy_rest, budget, config.retry_limit, &stats);
      for (auto& c : gained) cycles.push_back(std::move(c));
      if (!gained.empty()) continue;

      // repair: merge the stuck leftover with one achieved cycle and re-split
      bool improved = false;
      for (std::size_t h = 0; h < cycles.size() && !improved; ++h) {
        for (int rs = 0; rs < 16 && !improved; ++rs) {
          SimpleGraph left_now = SimpleGraph::from_edges(n, pool.edges());
          auto twof = max_even_factor(left_now);
          if (twof.r < 2) break;
          auto two_factor = f_factor(left_now, DegreeSpec::uniform(n, 2));
          if (!two_factor.feasible) break;
          Multigraph merged = Multigraph::from_simple(two_factor.factor);
          for (const auto& [u, v] : cycles[h].edges()) merged.add_edge(u, v);
          auto resplit = petersen_decompose(
              merged, mix_seed(config.seed, 0x726570ULL + 131ULL * static_cast<std::uint64_t>(h) +
                                               static_cast<std::uint64_t>(rs)));
          ReservePool snapshot = pool;
          remove_edges_from_pool(pool, two_factor.factor.edges());
          ConversionStats local;
          auto redone = convert_batch(std::move(resplit), pool, lazy_rest, budget, config.retry_limit, &local);
          if (redone.size() == 2) {
            cycles.erase(cycles.begin() + static_cast<std::ptrdiff_t>(h));
            for (auto& c : redone) cycles.push_back(std::move(c));
            stats.extracted += local.extracted;
            stats.converted += local.converted;
            for (int sw : local.swaps) stats.swaps.push_back(sw);
            for (int fc : local.factor_cycles) stats.factor_cycles.push_back(fc);
            improved = true;
          } else {
            pool = snapshot;
          }
        }
      }
      if (!improved) break;
    }
  }

  auto check = verify_packing(g, cycles);
  if (!check.valid) throw std::logic_error("internal packing verification failed: " + check.violation);
  rep.verified = check.valid;
  rep.achieved = static_cast<int>(cycles.size());
  rep.swaps = std::move(stats.swaps);
  rep.factor_cycles = std::move(stats.factor_cycles);
  rep.factors_extracted = stats.extracted;
  rep.factors_converted = stats.converted;
  rep.ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  result.cycles = std::move(cycles);
  return result;
}

std::string PackingReport::to_json(const std::vector<HamiltonCycle>& cycles, int indent) const {
  nlohmann::json j;
  j["n"] = n;
  j["delta"] = delta;
  j["Delta"] = Delta;
  j["mode"] = mode;
  j["target"] = target ? nlohmann::json(*target) : nlohmann::json(nullptr);
  j["s"] = factor_degree;
  j["achieved"] = achieved;
  nlohmann::json cyc = nlohmann::json::array();
  for (const auto& c : cycles) cyc.push_back(c.order);
  j["cycles"] = std::move(cyc);
  j["swaps"] = swaps;
  j["bounds"]["lower"] = lower_bound ? nlohmann::json(*lower_bound) : nlohmann::json(nullptr);
  j["bounds"]["upper"] = upper_bound ? nlohmann::json(*upper_bound) : nlohmann::json(nullptr);
  j["bounds"]["cap"] = factor_cap ? nlohmann::json(*factor_cap) : nlohmann::json(nullptr);
  j["verified"] = verified;
  j["seed"] = seed;
  j["ms"] = ms;
  return j.dump(indent);
}

std::vector<BenchRow> bench(const std::vector<BenchInstance>& instances, const std::vector<std::uint64_t>& seeds,
                            const PackerConfig& base, int jobs) {
  std::vector<BenchRow> rows(instances.size() * seeds.size());
  std::atomic<std::size_t> next{0};
  const std::size_t total = rows.size();
  auto worker = [&]() {
    for (;;) {
      std::size_t k = next.fetch_add(1);
      if (k >= total) break;
      const auto& inst = instances[k / seeds.size()];
      std::uint64_t seed = seeds[k % seeds.size()];
      PackerConfig cfg = base;
      cfg.seed = seed;
      auto res = pack(inst.graph, cfg);
      BenchRow row;
      row.instance = inst.label;
      row.seed = seed;
      row.n = res.report.n;
      row.delta = res.report.delta;
      row.Delta = res.report.Delta;
      row.achieved = res.report.achieved;
      row.factors = res.report.factors_extracted;
      row.converted = res.report.factors_converted;
      row.lower_bound = res.report.lower_bound;
      row.upper_bound = res.report.upper_bound;
      row.factor_cap = res.report.factor_cap;
      if (row.lower_bound && *row.lower_bound > 0.0)
        row.ratio = static_cast<double>(row.achieved) / *row.lower_bound;
      for (int s : res.report.swaps) row.swaps_total += s;
      row.ms = res.report.ms;
      rows[k] = std::move(row);
    }
  };
  jobs = std::max(1, jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return rows;
}

std::string bench_json(const std::vector<BenchRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json j;
    j["instance"] = r.instance;
    j["seed"] = r.seed;
    j["n"] = r.n;
    j["delta"] = r.delta;
    j["Delta"] = r.Delta;
    j["achieved"] = r.achieved;
    j["factors"] = r.factors;
    j["converted"] = r.converted;
    j["lower"] = r.lower_bound ? nlohmann::json(*r.lower_bound) : nlohmann::json(nullptr);
    j["upper"] = r.upper_bound ? nlohmann::json(*r.upper_bound) : nlohmann::json(nullptr);
    j["cap"] = r.factor_cap ? nlohmann::json(*r.factor_cap) : nlohmann::json(nullptr);
    j["ratio"] = r.ratio ? nlohmann::json(*r.ratio) : nlohmann::json(nullptr);
    j["swaps_total"] = r.swaps_total;
    j["ms"] = r.ms;
    out.push_back(std::move(j));
  }
  return nlohmann::json{{"results", std::move(out)}}.dump(2);
}

std::string bench_table(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  auto cell = [&](const std::string& s, std::size_t w) {
    os << s;
    for (std::size_t i = s.size(); i < w; ++i) os << ' ';
    os << ' ';
  };
  cell("instance", 22);
  cell("seed", 6);
  cell("n", 5);
  cell("delta", 6);
  cell("achieved", 8);
  cell("lower", 8);
  cell("ratio", 7);
  cell("conv/fac", 9);
  cell("swaps", 7);
  cell("ms", 8);
  os << "\n";
  auto num = [](double v) {
    std::ostringstream t;
    t.precision(3);
    t << std::fixed << v;
    return t.str();
  };
  for (const auto& r : rows) {
    cell(r.instance, 22);
    cell(std::to_string(r.seed), 6);
    cell(std::to_string(r.n), 5);
    cell(std::to_string(r.delta), 6);
    cell(std::to_string(r.achieved), 8);
    cell(r.lower_bound ? num(*r.lower_bound) : "-", 8);
    cell(r.ratio ? num(*r.ratio) : "-", 7);
    cell(std::to_string(r.converted) + "/" + std::to_string(r.factors), 9);
    cell(std::to_string(r.swaps_total), 7);
    cell(std::to_string(r.ms), 8);
    os << "\n";
  }
  return os.str();
}

}  // namespace hampack
