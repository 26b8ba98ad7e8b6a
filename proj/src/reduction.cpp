#include "hampack/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace hampack {

Ratio Ratio::of(long long num, long long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g == 0) g = 1;
  return Ratio{num / g, den / g};
}

namespace {

void check_disjoint_nonempty(int n, const std::vector<int>& a, const std::vector<int>& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("vertex sets must be non-empty");
  std::vector<char> mark(static_cast<std::size_t>(n), 0);
  for (int v : a) {
    if (v < 0 || v >= n || mark[static_cast<std::size_t>(v)]) throw std::invalid_argument("invalid vertex set");
    mark[static_cast<std::size_t>(v)] = 1;
  }
  for (int v : b) {
    if (v < 0 || v >= n || mark[static_cast<std::size_t>(v)]) throw std::invalid_argument("vertex sets overlap");
    mark[static_cast<std::size_t>(v)] = 1;
  }
}

long long cross_edges(const SimpleGraph& g, const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<char> in_b(static_cast<std::size_t>(g.vertex_count()), 0);
  for (int v : b) in_b[static_cast<std::size_t>(v)] = 1;
  long long e = 0;
  for (int v : a)
    for (int w : g.neighbors(v))
      if (in_b[static_cast<std::size_t>(w)]) ++e;
  return e;
}

}  // namespace

Ratio pair_density(const SimpleGraph& g, const std::vector<int>& a, const std::vector<int>& b) {
  check_disjoint_nonempty(g.vertex_count(), a, b);
  long long e = cross_edges(g, a, b);
  return Ratio::of(e, static_cast<long long>(a.size()) * static_cast<long long>(b.size()));
}

namespace {

// Exhaustive witness search. For a fixed X the extremal e(X, Y) over Y of a
// given size is a prefix sum of sorted per-vertex counts, so each X costs
// O(|B| log |B|) instead of 2^|B|.
RegularityResult exhaustive_check(const SimpleGraph& g, const std::vector<int>& a, const std::vector<int>& b,
                                  double eps) {
  const std::size_t na = a.size(), nb = b.size();
  const double dab = pair_density(g, a, b).value();
  const std::size_t min_x = static_cast<std::size_t>(std::ceil(eps * static_cast<double>(na) - 1e-12));
  const std::size_t min_y = static_cast<std::size_t>(std::ceil(eps * static_cast<double>(nb) - 1e-12));

  std::vector<std::uint32_t> row(na, 0);  // bit j set if a[i] ~ b[j]
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      if (g.has_edge(a[i], b[j])) row[i] |= (1u << j);

  RegularityResult result;
  result.exhaustive = true;

  std::vector<int> cnt(nb);
  std::vector<std::size_t> order(nb);
  for (std::uint32_t xmask = 1; xmask < (1u << na); ++xmask) {
    std::size_t xsize = static_cast<std::size_t>(__builtin_popcount(xmask));
    if (xsize < std::max<std::size_t>(min_x, 1)) continue;
    for (std::size_t j = 0; j < nb; ++j) cnt[j] = 0;
    std::uint32_t it = xmask;
    while (it) {
      std::size_t i = static_cast<std::size_t>(__builtin_ctz(it));
      it &= it - 1;
      std::uint32_t r = row[i];
      while (r) {
        cnt[static_cast<std::size_t>(__builtin_ctz(r))] += 1;
        r &= r - 1;
      }
    }
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) { return cnt[p] > cnt[q]; });
    long long prefix = 0;
    std::vector<long long> top(nb + 1, 0);
    for (std::size_t j = 0; j < nb; ++j) {
      prefix += cnt[order[j]];
      top[j + 1] = prefix;
    }
    const long long total = prefix;
    for (std::size_t ysize = std::max<std::size_t>(min_y, 1); ysize <= nb; ++ysize) {
      const double denom = static_cast<double>(xsize) * static_cast<double>(ysize);
      double dev_hi = static_cast<double>(top[ysize]) / denom - dab;
      double dev_lo = dab - static_cast<double>(total - top[nb - ysize]) / denom;
      double dev = std::max(dev_hi, dev_lo);
      if (dev >= eps - 1e-12) {
        RegularityWitness w;
        w.deviation = dev;
        for (std::size_t i = 0; i < na; ++i)
          if (xmask & (1u << i)) w.x.push_back(a[i]);
        if (dev_hi >= dev_lo) {
          for (std::size_t j = 0; j < ysize; ++j) w.y.push_back(b[order[j]]);
        } else {
          for (std::size_t j = nb - ysize; j < nb; ++j) w.y.push_back(b[order[j]]);
        }
        std::sort(w.y.begin(), w.y.end());
        result.witness_found = true;
        result.witness = std::move(w);
        return result;
      }
    }
  }
  return result;
}

RegularityResult sampled_check(const SimpleGraph& g, const std::vector<int>& a, const std::vector<int>& b,
                               double eps, std::uint64_t seed, int samples) {
  const double dab = pair_density(g, a, b).value();
  std::size_t sx = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(eps * static_cast<double>(a.size()) - 1e-12)));
  std::size_t sy = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(eps * static_cast<double>(b.size()) - 1e-12)));
  Rng rng(mix_seed(seed, 0x72656773));
  std::vector<int> xa = a, yb = b;
  RegularityResult result;
  result.exhaustive = false;
  for (int s = 0; s < samples; ++s) {
    // partial Fisher-Yates: first sx/sy entries become the sample
    for (std::size_t i = 0; i < sx; ++i) std::swap(xa[i], xa[i + rng.below(xa.size() - i)]);
    for (std::size_t i = 0; i < sy; ++i) std::swap(yb[i], yb[i + rng.below(yb.size() - i)]);
    std::vector<int> x(xa.begin(), xa.begin() + static_cast<std::ptrdiff_t>(sx));
    std::vector<int> y(yb.begin(), yb.begin() + static_cast<std::ptrdiff_t>(sy));
    long long e = cross_edges(g, x, y);
    double dev = std::abs(static_cast<double>(e) / (static_cast<double>(sx) * static_cast<double>(sy)) - dab);
    if (dev >= eps - 1e-12) {
      std::sort(x.begin(), x.end());
      std::sort(y.begin(), y.end());
      result.witness_found = true;
      result.witness = RegularityWitness{std::move(x), std::move(y), dev};
      return result;
    }
  }
  return result;
}

}  // namespace

RegularityResult regularity_check(const SimpleGraph& g, const std::vector<int>& a, const std::vector<int>& b,
                                  double eps, RegularityMode mode, std::uint64_t seed, int samples) {
  check_disjoint_nonempty(g.vertex_count(), a, b);
  if (eps <= 0.0 || eps > 1.0) throw std::invalid_argument("eps must lie in (0, 1]");
  // complete and empty pairs have sub-pair deviation identically zero
  Ratio d = pair_density(g, a, b);
  if (d.num == 0 || d.num == d.den) {
    RegularityResult res;
    res.exhaustive = true;
    return res;
  }
  if (mode == RegularityMode::automatic)
    mode = (a.size() <= 16 && b.size() <= 16) ? RegularityMode::exhaustive : RegularityMode::sampled;
  if (mode == RegularityMode::exhaustive) {
    if (a.size() > 20 || b.size() > 20)
      throw std::invalid_argument("exhaustive regularity check limited to sets of size <= 20");
    return exhaustive_check(g, a, b, eps);
  }
  return sampled_check(g, a, b, eps, seed, samples);
}

void ClusterPartition::validate(int n) const {
  if (clusters.empty()) throw std::invalid_argument("partition needs at least one cluster");
  std::size_t m = clusters.front().size();
  if (m == 0) throw std::invalid_argument("clusters must be non-empty");
  std::vector<char> mark(static_cast<std::size_t>(n), 0);
  auto touch = [&](int v) {
    if (v < 0 || v >= n || mark[static_cast<std::size_t>(v)]) throw std::invalid_argument("partition is not a disjoint cover");
    mark[static_cast<std::size_t>(v)] = 1;
  };
  for (const auto& c : clusters) {
    if (c.size() != m) throw std::invalid_argument("clusters must have equal sizes");
    for (int v : c) touch(v);
  }
  for (int v : exceptional) touch(v);
  for (int v = 0; v < n; ++v)
    if (!mark[static_cast<std::size_t>(v)]) throw std::invalid_argument("partition misses vertex " + std::to_string(v));
}

std::string ClusterPartition::to_json() const {
  nlohmann::json j;
  j["clusters"] = clusters;
  j["exceptional"] = exceptional;
  return j.dump();
}

ClusterPartition ClusterPartition::from_json(std::string_view text) {
  nlohmann::json j = nlohmann::json::parse(text);
  ClusterPartition p;
  p.clusters = j.at("clusters").get<std::vector<std::vector<int>>>();
  if (j.contains("exceptional")) p.exceptional = j.at("exceptional").get<std::vector<int>>();
  return p;
}

ReductionParams ReductionParams::strict(double eps, double beta, double d, double gamma) {
  if (!(eps > 0.0 && gamma < 1.0 && 4.0 * eps <= beta && 4.0 * beta <= d && 4.0 * d <= gamma))
    throw std::invalid_argument("parameters must satisfy 0 < eps << beta << d << gamma < 1 (4x separation)");
  return ReductionParams{eps, beta, d, gamma};
}

int density_multiplicity(double density, double beta) {
  if (beta <= 0.0) throw std::invalid_argument("beta must be positive");
  if (density < 0.0) throw std::invalid_argument("density must be non-negative");
  return static_cast<int>(std::floor(density / beta + 1e-9));
}

ReducedMultigraph reduced_multigraph(const SimpleGraph& g, const ClusterPartition& partition,
                                     const ReductionParams& params, std::uint64_t seed) {
  partition.validate(g.vertex_count());
  if (!(params.beta > 0.0 && params.beta <= 1.0) || params.d < 0.0 || params.eps <= 0.0)
    throw std::invalid_argument("invalid reduction parameters");
  const int k = static_cast<int>(partition.clusters.size());
  ReducedMultigraph r;
  r.graph = Multigraph(k);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      const auto& vi = partition.clusters[static_cast<std::size_t>(i)];
      const auto& vj = partition.clusters[static_cast<std::size_t>(j)];
      double density = pair_density(g, vi, vj).value();
      if (density < params.d) continue;
      auto reg = regularity_check(g, vi, vj, params.eps, RegularityMode::automatic,
                                  mix_seed(seed, 0x7064ULL * static_cast<std::uint64_t>(i * k + j)));
      if (reg.witness_found) continue;
      int ell = density_multiplicity(density, params.beta);
      if (ell > 0) r.graph.add_edge(i, j, ell);
    }
  return r;
}

std::pair<double, double> degree_inheritance_bounds(double delta_g, double Delta_g, double n, double k,
                                                    double beta, double d) {
  if (n <= 0.0 || k <= 0.0 || beta <= 0.0) throw std::invalid_argument("parameters must be positive");
  double lower = (delta_g / n - 2.0 * d) * k / beta;
  double upper = (Delta_g / n + 2.0 * d) * k / beta;
  return {lower, upper};
}

std::array<std::vector<int>, 2> split_cycle_gadget(int t) {
  if (t < 3) throw std::invalid_argument("cycle length must be at least 3");
  auto a = [&](int i) { return i - 1; };       // 1-based a_i
  auto b = [&](int i) { return t + i - 1; };   // 1-based b_i
  std::vector<int> c1, c2;
  c1.reserve(static_cast<std::size_t>(2 * t));
  c2.reserve(static_cast<std::size_t>(2 * t));
  if (t % 2 == 0) {
    const int s2 = t;  // 2s
    for (int i = 1; i <= s2; ++i) c1.push_back(a(i));
    for (int i = 1; i <= s2; ++i) c1.push_back(b(i));
    for (int i = 1; i <= s2; ++i) c2.push_back(i % 2 == 1 ? a(i) : b(i));
    for (int i = 1; i <= s2; ++i) c2.push_back(i % 2 == 1 ? b(i) : a(i));
  } else {
    const int s2 = t - 1;  // 2s
    for (int i = 1; i <= s2; ++i) c1.push_back(i % 2 == 1 ? a(i) : b(i));
    c1.push_back(a(t));
    c1.push_back(b(1));
    c1.push_back(b(t));
    for (int i = s2; i >= 2; --i) c1.push_back(i % 2 == 0 ? a(i) : b(i));
    c2.push_back(a(1));
    for (int i = t; i >= 2; --i) c2.push_back(a(i));
    for (int i = 1; i <= t; ++i) c2.push_back(b(i));
  }
  return {std::move(c1), std::move(c2)};
}

std::array<std::vector<Edge>, 2> matchings_from_even_cycle(const std::vector<int>& cycle) {
  if (cycle.size() < 4 || cycle.size() % 2 != 0)
    throw std::invalid_argument("cycle length must be even and at least 4");
  std::array<std::vector<Edge>, 2> out;
  for (std::size_t i = 0; i < cycle.size(); ++i)
    out[i % 2].push_back(make_edge(cycle[i], cycle[(i + 1) % cycle.size()]));
  return out;
}

std::array<SimpleGraph, 3> random_tripartition(const SimpleGraph& g, double gamma, std::uint64_t seed) {
  if (!(gamma > 0.0 && gamma <= 1.0 / 3.0 + 1e-12)) throw std::invalid_argument("gamma must lie in (0, 1/3]");
  Rng rng(mix_seed(seed, 0x747269));
  std::array<std::vector<Edge>, 3> parts;
  for (const auto& e : g.edges()) {
    double u = rng.unit();
    if (u < 3.0 * gamma) {
      int j = std::min(2, static_cast<int>(u / gamma));
      parts[static_cast<std::size_t>(j)].push_back(e);
    }
  }
  return {SimpleGraph::from_edges(g.vertex_count(), parts[0]), SimpleGraph::from_edges(g.vertex_count(), parts[1]),
          SimpleGraph::from_edges(g.vertex_count(), parts[2])};
}

double chernoff_tail(double t, double mean) {
  if (mean <= 0.0) throw std::invalid_argument("mean must be positive");
  if (t < 0.0) throw std::invalid_argument("deviation must be non-negative");
  return 2.0 * std::exp(-(t * t) / (3.0 * mean));
}

}  // namespace hampack
