#include "hampack/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace hampack {

ExtremalParams ExtremalParams::choose(int n, int delta) {
  if (!(2 * delta > n)) throw std::domain_error("requires min degree above n/2");
  if (delta > n - 2) throw std::domain_error("requires min degree at most n-2; the complete case is formula-only");
  double ideal = (static_cast<double>(n) + std::sqrt(static_cast<double>(n) * (2.0 * delta - n))) / 2.0;
  int best = -1;
  double best_err = 0.0;
  for (int cand = delta + (delta % 2); cand <= n - 1; cand += 2) {
    double err = std::abs(static_cast<double>(cand) - ideal);
    if (best < 0 || err < best_err - 1e-12) {
      best = cand;
      best_err = err;
    }
  }
  if (best < 0) throw std::domain_error("no admissible even Delta in [delta, n-1]");
  return ExtremalParams{n, delta, best};
}

SimpleGraph intro_construction(int m) {
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  const int n = 4 * m + 2;
  std::vector<Edge> edges;
  // A = [0, 2m), B = [2m, 4m+2) holding m+1 disjoint edges
  for (int i = 0; i <= m; ++i) edges.emplace_back(2 * m + 2 * i, 2 * m + 2 * i + 1);
  for (int a = 0; a < 2 * m; ++a)
    for (int b = 2 * m; b < n; ++b) edges.emplace_back(a, b);
  return SimpleGraph::from_edges(n, edges);
}

SimpleGraph upper_construction(const ExtremalParams& p) {
  const int n = p.n, delta = p.min_degree, Delta = p.max_degree;
  if (Delta < delta || Delta > n - 1 || Delta % 2 != 0) throw std::invalid_argument("invalid Delta");
  const int b_degree = delta + Delta - n;
  if (b_degree < 0) throw std::invalid_argument("invalid parameters: negative inner degree");

  // A = [0, n - Delta) independent; B = [n - Delta, n) a b_degree-regular
  // circulant; all A-B edges present.
  std::vector<Edge> edges;
  const int base = n - Delta;
  std::vector<int> offsets;
  for (int o = 1; o <= b_degree / 2; ++o) offsets.push_back(o);
  if (b_degree % 2 == 1) offsets.push_back(Delta / 2);  // Delta even: the chord is a perfect matching
  if (b_degree > 0) {
    SimpleGraph b = circulant_graph(Delta, offsets);
    for (const auto& [u, v] : b.edges()) edges.emplace_back(base + u, base + v);
  }
  for (int a = 0; a < base; ++a)
    for (int b2 = base; b2 < n; ++b2) edges.emplace_back(a, b2);
  return SimpleGraph::from_edges(n, edges);
}

SimpleGraph upper_construction(int n, int delta) { return upper_construction(ExtremalParams::choose(n, delta)); }

double upper_bound_value(long long n, long long delta) {
  if (!(2 * delta > n && delta < n)) throw std::domain_error("requires n/2 < delta < n");
  return (static_cast<double>(delta) + 2.0 + std::sqrt(static_cast<double>(n) * (2.0 * delta - n))) / 4.0;
}

double lower_bound_value(long long n, long long delta, double alpha) {
  if (!(alpha > 0.0)) throw std::domain_error("alpha must be positive");
  if (static_cast<double>(delta) + 1e-9 * static_cast<double>(n) < (0.5 + alpha) * static_cast<double>(n))
    throw std::domain_error("requires min degree at least (1/2 + alpha) n");
  return (static_cast<double>(delta) - alpha * static_cast<double>(n) +
          std::sqrt(static_cast<double>(n) * (2.0 * delta - n))) /
         4.0;
}

Ratio r_factor_cap(long long n, long long delta, long long Delta) {
  if (!(2 * Delta > n)) throw std::domain_error("requires Delta > n/2");
  return Ratio::of(Delta * (delta + Delta - n), 2 * Delta - n);
}

namespace {

struct CycleEnumerator {
  const SimpleGraph& g;
  std::size_t limit;
  std::vector<HamiltonCycle>& out;
  std::vector<int> order;
  std::vector<char> used;

  bool dfs() {
    const int n = g.vertex_count();
    if (static_cast<int>(order.size()) == n) {
      if (!g.has_edge(order.back(), 0)) return true;
      if (order[1] > order.back()) return true;  // dedup reflections
      out.push_back(HamiltonCycle{order});
      return limit == 0 || out.size() < limit;
    }
    int cur = order.back();
    for (int w : g.neighbors(cur)) {
      if (w == 0 || used[static_cast<std::size_t>(w)]) continue;
      used[static_cast<std::size_t>(w)] = 1;
      order.push_back(w);
      bool keep = dfs();
      order.pop_back();
      used[static_cast<std::size_t>(w)] = 0;
      if (!keep) return false;
    }
    return true;
  }
};

}  // namespace

std::vector<HamiltonCycle> enumerate_hamilton_cycles(const SimpleGraph& g, std::size_t limit) {
  std::vector<HamiltonCycle> out;
  const int n = g.vertex_count();
  if (n < 3) return out;
  CycleEnumerator en{g, limit, out, {0}, std::vector<char>(static_cast<std::size_t>(n), 0)};
  en.used[0] = 1;
  en.dfs();
  return out;
}

PackingOracleResult brute_force_max_packing(const SimpleGraph& g, int vertex_cap) {
  const int n = g.vertex_count();
  if (n > vertex_cap)
    throw std::invalid_argument("packing oracle refuses graphs above " + std::to_string(vertex_cap) + " vertices");
  if (g.edge_count() > 128) throw std::invalid_argument("packing oracle limited to 128 edges");
  PackingOracleResult result;
  if (n < 3) return result;

  auto cycles = enumerate_hamilton_cycles(g);
  if (cycles.empty()) return result;

  // index edges for 128-bit masks
  auto all_edges = g.edges();
  std::vector<std::pair<std::uint64_t, std::uint64_t>> masks(cycles.size(), {0, 0});
  auto edge_index = [&](const Edge& e) {
    return static_cast<std::size_t>(std::lower_bound(all_edges.begin(), all_edges.end(), e) - all_edges.begin());
  };
  for (std::size_t c = 0; c < cycles.size(); ++c)
    for (const auto& e : cycles[c].edges()) {
      std::size_t idx = edge_index(e);
      if (idx < 64)
        masks[c].first |= (1ULL << idx);
      else
        masks[c].second |= (1ULL << (idx - 64));
    }

  const int hard_cap = static_cast<int>(g.edge_count()) / std::max(n, 1);
  std::vector<std::size_t> chosen, best_set;
  int best = 0;

  auto count_free = [&](std::uint64_t lo, std::uint64_t hi) {
    return static_cast<int>(g.edge_count()) - __builtin_popcountll(lo) - __builtin_popcountll(hi);
  };

  std::function<void(std::size_t, std::uint64_t, std::uint64_t)> dfs = [&](std::size_t from, std::uint64_t lo,
                                                                           std::uint64_t hi) {
    if (static_cast<int>(chosen.size()) > best) {
      best = static_cast<int>(chosen.size());
      best_set = chosen;
    }
    if (best >= hard_cap) return;
    if (static_cast<int>(chosen.size()) + count_free(lo, hi) / n <= best) return;
    for (std::size_t c = from; c < cycles.size(); ++c) {
      if ((masks[c].first & lo) || (masks[c].second & hi)) continue;
      chosen.push_back(c);
      dfs(c + 1, lo | masks[c].first, hi | masks[c].second);
      chosen.pop_back();
      if (best >= hard_cap) return;
    }
  };
  dfs(0, 0, 0);

  result.count = best;
  for (std::size_t c : best_set) result.witnesses.push_back(cycles[c]);
  return result;
}

}  // namespace hampack
