#include "hampack/factors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "hampack/matching.hpp"

namespace hampack {

DegreeSpec DegreeSpec::uniform(int n, int r) {
  if (r < 0) throw std::invalid_argument("degree target must be non-negative");
  DegreeSpec s;
  s.target.assign(static_cast<std::size_t>(n), r);
  return s;
}

bool DegreeSpec::is_uniform(int* r) const {
  if (target.empty()) {
    if (r) *r = 0;
    return true;
  }
  for (int t : target)
    if (t != target[0]) return false;
  if (r) *r = target[0];
  return true;
}

TutteEvaluation evaluate_tutte(const SimpleGraph& g, const TuttePartition& part) {
  const int n = g.vertex_count();
  std::vector<int> side(static_cast<std::size_t>(n), -1);  // 0=S 1=T 2=U
  auto assign = [&](const std::vector<int>& vs, int tag) {
    for (int v : vs) {
      if (v < 0 || v >= n || side[static_cast<std::size_t>(v)] != -1)
        throw std::invalid_argument("partition is not a disjoint cover");
      side[static_cast<std::size_t>(v)] = tag;
    }
  };
  assign(part.S, 0);
  assign(part.T, 1);
  assign(part.U, 2);
  for (int v = 0; v < n; ++v)
    if (side[static_cast<std::size_t>(v)] == -1) throw std::invalid_argument("partition is not a disjoint cover");

  TutteEvaluation eval;
  long long degree_sum = 0, est = 0;
  for (int v : part.T) degree_sum += g.degree(v);
  for (int v : part.S)
    for (int w : g.neighbors(v))
      if (side[static_cast<std::size_t>(w)] == 1) ++est;
  eval.lhs = degree_sum - est +
             static_cast<long long>(part.r) * (static_cast<long long>(part.S.size()) - static_cast<long long>(part.T.size()));

  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int v : part.U) {
    if (seen[static_cast<std::size_t>(v)]) continue;
    long long size = 0, edges_to_t = 0;
    std::queue<int> q;
    q.push(v);
    seen[static_cast<std::size_t>(v)] = 1;
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      ++size;
      for (int w : g.neighbors(x)) {
        if (side[static_cast<std::size_t>(w)] == 1) ++edges_to_t;
        if (side[static_cast<std::size_t>(w)] == 2 && !seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          q.push(w);
        }
      }
    }
    if ((edges_to_t + static_cast<long long>(part.r) * size) % 2 != 0) ++eval.odd_components;
  }
  return eval;
}

std::vector<Edge> max_matching(const SimpleGraph& g) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.vertex_count()));
  for (int v = 0; v < g.vertex_count(); ++v) adj[static_cast<std::size_t>(v)] = g.neighbors(v);
  auto mate = maximum_matching_mates(g.vertex_count(), adj);
  std::vector<Edge> out;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (mate[static_cast<std::size_t>(v)] > v) out.emplace_back(v, mate[static_cast<std::size_t>(v)]);
  return out;
}

FactorResult f_factor(const SimpleGraph& g, const DegreeSpec& spec) {
  const int n = g.vertex_count();
  if (static_cast<int>(spec.target.size()) != n)
    throw std::invalid_argument("degree spec size does not match vertex count");
  long long sum = 0;
  for (int v = 0; v < n; ++v) {
    int t = spec.target[static_cast<std::size_t>(v)];
    if (t < 0 || t > g.degree(v))
      throw std::invalid_argument("degree target for vertex " + std::to_string(v) + " outside [0, deg]");
    sum += t;
  }
  if (sum % 2 != 0) throw std::invalid_argument("degree target sum must be even");

  FactorResult result;
  if (sum == 0) {
    result.feasible = true;
    result.factor = SimpleGraph(n);
    return result;
  }

  // Vertex gadget: deg(v) external slots (one per incident edge) joined
  // completely to deg(v) - f(v) internal fill slots; each host edge links the
  // two matching external slots. A perfect matching selects exactly f(v)
  // cross edges at every vertex.
  auto host_edges = g.edges();
  std::vector<int> ext_base(static_cast<std::size_t>(n)), int_base(static_cast<std::size_t>(n));
  std::vector<int> slot_cursor(static_cast<std::size_t>(n), 0);
  int total = 0;
  for (int v = 0; v < n; ++v) {
    ext_base[static_cast<std::size_t>(v)] = total;
    total += g.degree(v);
    int_base[static_cast<std::size_t>(v)] = total;
    total += g.degree(v) - spec.target[static_cast<std::size_t>(v)];
  }
  if (total % 2 != 0) {
    result.feasible = false;
    return result;
  }

  std::vector<std::vector<int>> adj(static_cast<std::size_t>(total));
  for (int v = 0; v < n; ++v) {
    int fills = g.degree(v) - spec.target[static_cast<std::size_t>(v)];
    for (int i = 0; i < g.degree(v); ++i)
      for (int j = 0; j < fills; ++j) {
        int a = ext_base[static_cast<std::size_t>(v)] + i;
        int b = int_base[static_cast<std::size_t>(v)] + j;
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
      }
  }
  std::vector<std::pair<int, int>> cross(host_edges.size());
  for (std::size_t k = 0; k < host_edges.size(); ++k) {
    auto [u, v] = host_edges[k];
    int a = ext_base[static_cast<std::size_t>(u)] + slot_cursor[static_cast<std::size_t>(u)]++;
    int b = ext_base[static_cast<std::size_t>(v)] + slot_cursor[static_cast<std::size_t>(v)]++;
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
    cross[k] = {a, b};
  }

  auto mate = maximum_matching_mates(total, adj);
  bool perfect = std::all_of(mate.begin(), mate.end(), [](int m) { return m != -1; });
  if (!perfect) {
    result.feasible = false;
    int r = 0;
    if (n <= 9 && spec.is_uniform(&r)) {
      auto oracle = tutte_oracle(g, r);
      result.certificate = oracle.witness;
    }
    return result;
  }

  std::vector<Edge> chosen;
  for (std::size_t k = 0; k < host_edges.size(); ++k)
    if (mate[static_cast<std::size_t>(cross[k].first)] == cross[k].second) chosen.push_back(host_edges[k]);
  result.feasible = true;
  result.factor = SimpleGraph::from_edges(n, chosen);
  return result;
}

TutteOracleResult tutte_oracle(const SimpleGraph& g, int r, int vertex_cap) {
  const int n = g.vertex_count();
  if (n > vertex_cap)
    throw std::invalid_argument("tutte_oracle refuses graphs above " + std::to_string(vertex_cap) + " vertices");
  if (r < 0) throw std::invalid_argument("factor degree must be non-negative");

  std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
  std::vector<int> deg(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    for (int w : g.neighbors(v)) adj[static_cast<std::size_t>(v)] |= (1u << w);
    deg[static_cast<std::size_t>(v)] = g.degree(v);
  }

  long long total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  std::vector<int> trit(static_cast<std::size_t>(n), 0);
  for (long long code = 0; code < total; ++code) {
    std::uint32_t smask = 0, tmask = 0, umask = 0;
    for (int v = 0; v < n; ++v) {
      int t = trit[static_cast<std::size_t>(v)];
      if (t == 0)
        smask |= (1u << v);
      else if (t == 1)
        tmask |= (1u << v);
      else
        umask |= (1u << v);
    }
    long long lhs = 0;
    int scount = 0, tcount = 0;
    for (int v = 0; v < n; ++v) {
      if (tmask & (1u << v)) {
        lhs += deg[static_cast<std::size_t>(v)];
        ++tcount;
      } else if (smask & (1u << v)) {
        lhs -= __builtin_popcount(adj[static_cast<std::size_t>(v)] & tmask);
        ++scount;
      }
    }
    lhs += static_cast<long long>(r) * (scount - tcount);

    long long q = 0;
    std::uint32_t rest = umask;
    while (rest) {
      std::uint32_t comp = rest & (~rest + 1);  // grow a component from the lowest bit
      for (;;) {
        std::uint32_t grow = comp;
        std::uint32_t frontier = comp;
        while (frontier) {
          int v = __builtin_ctz(frontier);
          frontier &= frontier - 1;
          grow |= adj[static_cast<std::size_t>(v)] & umask;
        }
        if (grow == comp) break;
        comp = grow;
      }
      long long to_t = 0;
      std::uint32_t it = comp;
      int size = 0;
      while (it) {
        int v = __builtin_ctz(it);
        it &= it - 1;
        ++size;
        to_t += __builtin_popcount(adj[static_cast<std::size_t>(v)] & tmask);
      }
      if ((to_t + static_cast<long long>(r) * size) % 2 != 0) ++q;
      rest &= ~comp;
    }

    if (lhs < q) {
      TuttePartition part;
      part.r = r;
      for (int v = 0; v < n; ++v) {
        if (smask & (1u << v))
          part.S.push_back(v);
        else if (tmask & (1u << v))
          part.T.push_back(v);
        else
          part.U.push_back(v);
      }
      return {false, part};
    }

    for (int v = 0; v < n; ++v) {
      if (++trit[static_cast<std::size_t>(v)] < 3) break;
      trit[static_cast<std::size_t>(v)] = 0;
    }
  }
  return {true, std::nullopt};
}

int guaranteed_even_r(long long n, long long min_degree, long long ell) {
  if (n < 0 || ell <= 0 || min_degree < 0) throw std::invalid_argument("parameters must be non-negative, ell positive");
  if (2 * min_degree < ell * n) throw std::domain_error("requires min degree >= ell*n/2");
  long long disc = ell * n * (2 * min_degree - ell * n);
  auto feasible = [&](long long r) {
    if (r < 0) return false;
    long long excess = 2 * r - min_degree;
    return excess <= 0 || excess * excess <= disc;
  };
  long long root = static_cast<long long>(std::sqrt(static_cast<double>(disc)));
  long long r = (min_degree + root) / 2;
  r -= r % 2;
  while (feasible(r + 2)) r += 2;
  while (r > 0 && !feasible(r)) r -= 2;
  return static_cast<int>(std::max(r, 0LL));
}

int guaranteed_even_r_nearreg(long long n, long long min_degree, long long max_degree, double xi, long long ell) {
  if (n < 0 || ell <= 0) throw std::invalid_argument("parameters must be non-negative, ell positive");
  if (!(xi > 0.0 && xi < 1.0 / 9.0)) throw std::domain_error("requires 0 < xi < 1/9");
  const double scale = static_cast<double>(ell) * static_cast<double>(n);
  const double eps = 1e-9 * std::max(1.0, scale);
  if (static_cast<double>(max_degree) + eps < (0.5 + xi) * scale)
    throw std::domain_error("requires max degree >= (1/2 + xi) * ell * n");
  if (static_cast<double>(max_degree) > static_cast<double>(min_degree) + xi * xi * scale + eps)
    throw std::domain_error("requires max degree <= min degree + xi^2 * ell * n");
  double bound = static_cast<double>(min_degree) - xi * scale;
  long long r = static_cast<long long>(std::floor(bound + eps));
  r -= r % 2;
  return static_cast<int>(std::max(r, 0LL));
}

Orientation euler_orientation(const Multigraph& g) {
  const int n = g.vertex_count();
  for (int v = 0; v < n; ++v)
    if (g.degree(v) % 2 != 0)
      throw std::invalid_argument("vertex " + std::to_string(v) + " has odd degree");

  // expand edge instances
  std::vector<std::pair<int, int>> inst;
  for (const auto& [e, k] : g.edge_multiplicities())
    for (int i = 0; i < k; ++i) inst.push_back(e);
  std::vector<std::vector<std::pair<int, int>>> inc(static_cast<std::size_t>(n));  // (other, instance id)
  for (std::size_t id = 0; id < inst.size(); ++id) {
    inc[static_cast<std::size_t>(inst[id].first)].push_back({inst[id].second, static_cast<int>(id)});
    inc[static_cast<std::size_t>(inst[id].second)].push_back({inst[id].first, static_cast<int>(id)});
  }

  std::vector<char> used(inst.size(), 0);
  std::vector<std::size_t> cursor(static_cast<std::size_t>(n), 0);
  std::vector<std::pair<int, int>> arcs;
  arcs.reserve(inst.size());
  for (int start = 0; start < n; ++start) {
    if (cursor[static_cast<std::size_t>(start)] >= inc[static_cast<std::size_t>(start)].size()) continue;
    // Hierholzer: walk until stuck, splicing sub-circuits
    std::vector<int> stack = {start};
    std::vector<int> circuit;
    while (!stack.empty()) {
      int v = stack.back();
      auto& cur = cursor[static_cast<std::size_t>(v)];
      while (cur < inc[static_cast<std::size_t>(v)].size() && used[static_cast<std::size_t>(inc[static_cast<std::size_t>(v)][cur].second)]) ++cur;
      if (cur == inc[static_cast<std::size_t>(v)].size()) {
        circuit.push_back(v);
        stack.pop_back();
      } else {
        auto [w, id] = inc[static_cast<std::size_t>(v)][cur];
        used[static_cast<std::size_t>(id)] = 1;
        stack.push_back(w);
      }
    }
    for (std::size_t i = 0; i + 1 < circuit.size(); ++i) arcs.push_back({circuit[i + 1], circuit[i]});
  }
  return Orientation(n, std::move(arcs));
}

CycleCover petersen_two_factor(const Multigraph& g, std::uint64_t seed) {
  int r = 0;
  if (!g.is_regular(&r)) throw std::invalid_argument("petersen_two_factor requires a regular multigraph");
  if (r < 2 || r % 2 != 0) throw std::invalid_argument("degree must be positive and even");
  const int n = g.vertex_count();

  Orientation d = euler_orientation(g);
  // out/in split: left = out-copies, right = in-copies; perfect matching picks
  // one successor per vertex, i.e. a directed 1-factor.
  std::vector<std::vector<int>> adj_left(static_cast<std::size_t>(n));
  for (const auto& [u, v] : d.arcs()) adj_left[static_cast<std::size_t>(u)].push_back(v);
  Rng rng(mix_seed(seed, 0x70657465));
  for (auto& list : adj_left) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    rng.shuffle(list);
  }
  auto succ = bipartite_matching(n, n, adj_left);
  for (int v = 0; v < n; ++v)
    if (succ[static_cast<std::size_t>(v)] == -1)
      throw std::logic_error("out/in split of a regular orientation must have a perfect matching");

  CycleCover cover;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int start = 0; start < n; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    std::vector<int> cyc;
    int v = start;
    while (!seen[static_cast<std::size_t>(v)]) {
      seen[static_cast<std::size_t>(v)] = 1;
      cyc.push_back(v);
      v = succ[static_cast<std::size_t>(v)];
    }
    cover.cycles.push_back(std::move(cyc));
  }
  return cover;
}

std::vector<CycleCover> petersen_decompose(const Multigraph& g, std::uint64_t seed) {
  int r = 0;
  if (!g.is_regular(&r)) throw std::invalid_argument("petersen_decompose requires a regular multigraph");
  if (r % 2 != 0) throw std::invalid_argument("degree must be even");
  Multigraph rest = g;
  std::vector<CycleCover> covers;
  for (int step = 0; r - 2 * step > 0; ++step) {
    CycleCover f = petersen_two_factor(rest, mix_seed(seed, 0x64656300 + static_cast<std::uint64_t>(step)));
    std::map<Edge, int> used;
    for (const auto& e : f.edges()) ++used[e];
    for (const auto& [e, k] : used) rest.remove_edge(e.first, e.second, k);
    covers.push_back(std::move(f));
  }
  return covers;
}

EvenFactorResult max_even_factor(const SimpleGraph& g) {
  const int n = g.vertex_count();
  int min_deg = 0;
  if (n > 0) min_deg = degree_profile(g).min_degree;
  int hi = min_deg / 2;  // candidate r = 2*idx
  int lo = 0;
  EvenFactorResult best;
  best.r = 0;
  best.factor = SimpleGraph(n);
  while (lo < hi) {
    int mid = lo + (hi - lo + 1) / 2;
    auto attempt = f_factor(g, DegreeSpec::uniform(n, 2 * mid));
    if (attempt.feasible) {
      lo = mid;
      best.r = 2 * mid;
      best.factor = std::move(attempt.factor);
    } else {
      hi = mid - 1;
    }
  }
  return best;
}

namespace {

// Dinic max-flow on a small unit-ish network.
struct Dinic {
  struct Arc {
    int to, rev;
    long long cap;
  };
  std::vector<std::vector<Arc>> g;
  std::vector<int> level, it;

  explicit Dinic(int n) : g(static_cast<std::size_t>(n)), level(static_cast<std::size_t>(n)), it(static_cast<std::size_t>(n)) {}

  void add(int a, int b, long long cap) {
    g[static_cast<std::size_t>(a)].push_back({b, static_cast<int>(g[static_cast<std::size_t>(b)].size()), cap});
    g[static_cast<std::size_t>(b)].push_back({a, static_cast<int>(g[static_cast<std::size_t>(a)].size()) - 1, 0});
  }

  bool bfs(int s, int t) {
    std::fill(level.begin(), level.end(), -1);
    std::queue<int> q;
    level[static_cast<std::size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (const auto& a : g[static_cast<std::size_t>(v)])
        if (a.cap > 0 && level[static_cast<std::size_t>(a.to)] < 0) {
          level[static_cast<std::size_t>(a.to)] = level[static_cast<std::size_t>(v)] + 1;
          q.push(a.to);
        }
    }
    return level[static_cast<std::size_t>(t)] >= 0;
  }

  long long dfs(int v, int t, long long f) {
    if (v == t) return f;
    for (int& i = it[static_cast<std::size_t>(v)]; i < static_cast<int>(g[static_cast<std::size_t>(v)].size()); ++i) {
      Arc& a = g[static_cast<std::size_t>(v)][static_cast<std::size_t>(i)];
      if (a.cap > 0 && level[static_cast<std::size_t>(v)] < level[static_cast<std::size_t>(a.to)]) {
        long long d = dfs(a.to, t, std::min(f, a.cap));
        if (d > 0) {
          a.cap -= d;
          g[static_cast<std::size_t>(a.to)][static_cast<std::size_t>(a.rev)].cap += d;
          return d;
        }
      }
    }
    return 0;
  }

  long long max_flow(int s, int t) {
    long long flow = 0;
    while (bfs(s, t)) {
      std::fill(it.begin(), it.end(), 0);
      long long f;
      while ((f = dfs(s, t, 1LL << 60)) > 0) flow += f;
    }
    return flow;
  }
};

}  // namespace

std::optional<SimpleGraph> bipartite_prescribed_degrees(const SimpleGraph& host, const std::vector<int>& left,
                                                        const std::vector<int>& right,
                                                        const std::vector<int>& target) {
  const int n = host.vertex_count();
  if (static_cast<int>(target.size()) != n) throw std::invalid_argument("target size does not match vertex count");
  std::vector<int> side(static_cast<std::size_t>(n), -1);
  for (int v : left) {
    if (v < 0 || v >= n || side[static_cast<std::size_t>(v)] != -1) throw std::invalid_argument("invalid left side");
    side[static_cast<std::size_t>(v)] = 0;
  }
  for (int v : right) {
    if (v < 0 || v >= n || side[static_cast<std::size_t>(v)] != -1) throw std::invalid_argument("invalid right side");
    side[static_cast<std::size_t>(v)] = 1;
  }
  long long sum_l = 0, sum_r = 0;
  for (int v : left) sum_l += target[static_cast<std::size_t>(v)];
  for (int v : right) sum_r += target[static_cast<std::size_t>(v)];
  if (sum_l != sum_r) throw std::invalid_argument("target sums differ across sides");
  for (int v = 0; v < n; ++v)
    if (target[static_cast<std::size_t>(v)] < 0) throw std::invalid_argument("negative degree target");

  auto host_edges = host.edges();
  for (const auto& [u, v] : host_edges) {
    int su = side[static_cast<std::size_t>(u)], sv = side[static_cast<std::size_t>(v)];
    if (su == -1 || sv == -1 || su == sv) throw std::invalid_argument("host edge does not cross the bipartition");
  }

  // nodes: 0 = source, 1 = sink, then vertices, then one node per edge side is
  // not needed: edge capacity lives on a direct left->right arc.
  Dinic net(n + 2);
  const int source = n, sink = n + 1;
  for (int v : left) net.add(source, v, target[static_cast<std::size_t>(v)]);
  for (int v : right) net.add(v, sink, target[static_cast<std::size_t>(v)]);
  std::vector<std::pair<std::size_t, std::size_t>> arc_of_edge;  // (vertex, index) locating each edge arc
  arc_of_edge.reserve(host_edges.size());
  for (const auto& [u, v] : host_edges) {
    int a = side[static_cast<std::size_t>(u)] == 0 ? u : v;
    int b = side[static_cast<std::size_t>(u)] == 0 ? v : u;
    arc_of_edge.push_back({static_cast<std::size_t>(a), net.g[static_cast<std::size_t>(a)].size()});
    net.add(a, b, 1);
  }
  long long flow = net.max_flow(source, sink);
  if (flow != sum_l) return std::nullopt;

  std::vector<Edge> chosen;
  for (std::size_t k = 0; k < host_edges.size(); ++k) {
    const auto& arc = net.g[arc_of_edge[k].first][arc_of_edge[k].second];
    if (arc.cap == 0) chosen.push_back(host_edges[k]);
  }
  return SimpleGraph::from_edges(n, chosen);
}

}  // namespace hampack
