#include "hampack/graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hampack {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 over the xor of seed and a stream tag
  std::uint64_t z = seed ^ (stream * 0x9e3779b97f4a7c15ULL) ^ 0x2545f4914f6cdd1dULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SimpleGraph::SimpleGraph(int n) : n_(n), adj_(static_cast<std::size_t>(std::max(n, 0))) {
  if (n < 0) throw std::invalid_argument("vertex count must be non-negative");
}

SimpleGraph SimpleGraph::from_edges(int n, const std::vector<Edge>& edges) {
  SimpleGraph g(n);
  for (const auto& [u, v] : edges) {
    g.check_vertex(u);
    g.check_vertex(v);
    if (u == v) throw std::invalid_argument("self-loop");
    g.adj_[static_cast<std::size_t>(u)].push_back(v);
    g.adj_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& list : g.adj_) {
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end())
      throw std::invalid_argument("duplicate edge");
  }
  g.m_ = edges.size();
  return g;
}

void SimpleGraph::check_vertex(int v) const {
  if (v < 0 || v >= n_) throw std::invalid_argument("vertex id " + std::to_string(v) + " out of range");
}

bool SimpleGraph::has_edge(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  if (u == v) return false;
  const auto& list = adj_[static_cast<std::size_t>(u)];
  return std::binary_search(list.begin(), list.end(), v);
}

void SimpleGraph::add_edge(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw std::invalid_argument("self-loop");
  auto& lu = adj_[static_cast<std::size_t>(u)];
  auto it = std::lower_bound(lu.begin(), lu.end(), v);
  if (it != lu.end() && *it == v) throw std::invalid_argument("duplicate edge");
  lu.insert(it, v);
  auto& lv = adj_[static_cast<std::size_t>(v)];
  lv.insert(std::lower_bound(lv.begin(), lv.end(), u), u);
  ++m_;
}

bool SimpleGraph::remove_edge(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  auto& lu = adj_[static_cast<std::size_t>(u)];
  auto it = std::lower_bound(lu.begin(), lu.end(), v);
  if (it == lu.end() || *it != v) return false;
  lu.erase(it);
  auto& lv = adj_[static_cast<std::size_t>(v)];
  lv.erase(std::lower_bound(lv.begin(), lv.end(), u));
  --m_;
  return true;
}

int SimpleGraph::degree(int v) const {
  check_vertex(v);
  return static_cast<int>(adj_[static_cast<std::size_t>(v)].size());
}

const std::vector<int>& SimpleGraph::neighbors(int v) const {
  check_vertex(v);
  return adj_[static_cast<std::size_t>(v)];
}

std::vector<Edge> SimpleGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (int u = 0; u < n_; ++u)
    for (int v : adj_[static_cast<std::size_t>(u)])
      if (u < v) out.emplace_back(u, v);
  return out;
}

bool SimpleGraph::operator==(const SimpleGraph& other) const {
  return n_ == other.n_ && adj_ == other.adj_;
}

Multigraph::Multigraph(int n) : n_(n), deg_(static_cast<std::size_t>(std::max(n, 0)), 0) {
  if (n < 0) throw std::invalid_argument("vertex count must be non-negative");
}

Multigraph Multigraph::from_simple(const SimpleGraph& g) {
  Multigraph m(g.vertex_count());
  for (const auto& [u, v] : g.edges()) m.add_edge(u, v);
  return m;
}

void Multigraph::check_vertex(int v) const {
  if (v < 0 || v >= n_) throw std::invalid_argument("vertex id " + std::to_string(v) + " out of range");
}

int Multigraph::multiplicity(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  auto it = mult_.find(make_edge(u, v));
  return it == mult_.end() ? 0 : it->second;
}

void Multigraph::add_edge(int u, int v, int count) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw std::invalid_argument("self-loop");
  if (count <= 0) throw std::invalid_argument("multiplicity must be positive");
  mult_[make_edge(u, v)] += count;
  deg_[static_cast<std::size_t>(u)] += count;
  deg_[static_cast<std::size_t>(v)] += count;
  m_ += static_cast<std::size_t>(count);
}

void Multigraph::remove_edge(int u, int v, int count) {
  check_vertex(u);
  check_vertex(v);
  if (count <= 0) throw std::invalid_argument("multiplicity must be positive");
  auto it = mult_.find(make_edge(u, v));
  if (it == mult_.end() || it->second < count) throw std::invalid_argument("edge multiplicity underflow");
  it->second -= count;
  if (it->second == 0) mult_.erase(it);
  deg_[static_cast<std::size_t>(u)] -= count;
  deg_[static_cast<std::size_t>(v)] -= count;
  m_ -= static_cast<std::size_t>(count);
}

int Multigraph::degree(int v) const {
  check_vertex(v);
  return deg_[static_cast<std::size_t>(v)];
}

std::vector<Edge> Multigraph::support() const {
  std::vector<Edge> out;
  out.reserve(mult_.size());
  for (const auto& [e, k] : mult_) out.push_back(e);
  return out;
}

bool Multigraph::is_regular(int* r) const {
  if (n_ == 0) {
    if (r) *r = 0;
    return true;
  }
  int d = deg_[0];
  for (int v = 1; v < n_; ++v)
    if (deg_[static_cast<std::size_t>(v)] != d) return false;
  if (r) *r = d;
  return true;
}

bool Multigraph::operator==(const Multigraph& other) const {
  return n_ == other.n_ && mult_ == other.mult_;
}

Orientation::Orientation(int n, std::vector<std::pair<int, int>> arcs)
    : n_(n), arcs_(std::move(arcs)), out_(static_cast<std::size_t>(std::max(n, 0))), in_(static_cast<std::size_t>(std::max(n, 0))) {
  if (n < 0) throw std::invalid_argument("vertex count must be non-negative");
  for (const auto& [u, v] : arcs_) {
    if (u < 0 || u >= n_ || v < 0 || v >= n_) throw std::invalid_argument("arc endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop arc");
    out_[static_cast<std::size_t>(u)].push_back(v);
    in_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& l : out_) std::sort(l.begin(), l.end());
  for (auto& l : in_) std::sort(l.begin(), l.end());
}

int Orientation::out_degree(int v) const { return static_cast<int>(out_.at(static_cast<std::size_t>(v)).size()); }
int Orientation::in_degree(int v) const { return static_cast<int>(in_.at(static_cast<std::size_t>(v)).size()); }
const std::vector<int>& Orientation::out_neighbors(int v) const { return out_.at(static_cast<std::size_t>(v)); }
const std::vector<int>& Orientation::in_neighbors(int v) const { return in_.at(static_cast<std::size_t>(v)); }

bool Orientation::has_arc(int u, int v) const {
  if (u < 0 || u >= n_ || v < 0 || v >= n_) return false;
  const auto& l = out_[static_cast<std::size_t>(u)];
  return std::binary_search(l.begin(), l.end(), v);
}

Multigraph Orientation::underlying() const {
  Multigraph g(n_);
  for (const auto& [u, v] : arcs_) g.add_edge(u, v);
  return g;
}

std::size_t CycleCover::vertex_total() const {
  std::size_t total = 0;
  for (const auto& c : cycles) total += c.size();
  return total;
}

std::vector<Edge> CycleCover::edges() const {
  std::vector<Edge> out;
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i + 1 < c.size(); ++i) out.push_back(make_edge(c[i], c[i + 1]));
    if (c.size() >= 2) out.push_back(make_edge(c.back(), c.front()));
  }
  return out;
}

bool CycleCover::covers_exactly(int n) const {
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::size_t total = 0;
  for (const auto& c : cycles) {
    for (int v : c) {
      if (v < 0 || v >= n) return false;
      if (seen[static_cast<std::size_t>(v)]) return false;
      seen[static_cast<std::size_t>(v)] = 1;
      ++total;
    }
  }
  return total == static_cast<std::size_t>(n);
}

std::vector<Edge> HamiltonCycle::edges() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) out.push_back(make_edge(order[i], order[i + 1]));
  if (order.size() >= 2) out.push_back(make_edge(order.back(), order.front()));
  return out;
}

namespace {

DegreeProfile profile_from(std::vector<int> degrees) {
  DegreeProfile p;
  p.degrees = std::move(degrees);
  if (p.degrees.empty()) return p;
  p.min_degree = *std::min_element(p.degrees.begin(), p.degrees.end());
  p.max_degree = *std::max_element(p.degrees.begin(), p.degrees.end());
  return p;
}

}  // namespace

DegreeProfile degree_profile(const SimpleGraph& g) {
  std::vector<int> deg(static_cast<std::size_t>(g.vertex_count()));
  for (int v = 0; v < g.vertex_count(); ++v) deg[static_cast<std::size_t>(v)] = g.degree(v);
  return profile_from(std::move(deg));
}

DegreeProfile degree_profile(const Multigraph& g) {
  std::vector<int> deg(static_cast<std::size_t>(g.vertex_count()));
  for (int v = 0; v < g.vertex_count(); ++v) deg[static_cast<std::size_t>(v)] = g.degree(v);
  return profile_from(std::move(deg));
}

SimpleGraph random_gnp(int n, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("edge probability must lie in [0, 1]");
  Rng rng(mix_seed(seed, 0x676e70));
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.unit() < p) edges.emplace_back(u, v);
  return SimpleGraph::from_edges(n, edges);
}

SimpleGraph complete_graph(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return SimpleGraph::from_edges(n, edges);
}

SimpleGraph cycle_graph(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v) edges.push_back(make_edge(v, (v + 1) % n));
  return SimpleGraph::from_edges(n, edges);
}

SimpleGraph path_graph(int n) {
  std::vector<Edge> edges;
  for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return SimpleGraph::from_edges(n, edges);
}

SimpleGraph circulant_graph(int n, const std::vector<int>& offsets) {
  if (n < 2) throw std::invalid_argument("circulant needs at least 2 vertices");
  std::set<Edge> edges;
  for (int o : offsets) {
    if (o < 1 || 2 * o > n) throw std::invalid_argument("circulant offset out of range");
    for (int v = 0; v < n; ++v) edges.insert(make_edge(v, (v + o) % n));
  }
  return SimpleGraph::from_edges(n, std::vector<Edge>(edges.begin(), edges.end()));
}

namespace {

// Common 2-factor shape check: exactly two incidences per vertex, cycles of
// admissible length; edge usage validated by the host-specific callback.
template <typename EdgeOk>
bool two_factor_shape(int n, const CycleCover& f, std::size_t min_len, EdgeOk&& edge_ok) {
  std::vector<int> incidences(static_cast<std::size_t>(n), 0);
  std::map<Edge, int> used;
  for (const auto& c : f.cycles) {
    if (c.size() < min_len) return false;
    for (int v : c) {
      if (v < 0 || v >= n) return false;
      incidences[static_cast<std::size_t>(v)] += 2;
    }
    std::vector<char> local(static_cast<std::size_t>(n), 0);
    for (int v : c) {
      if (local[static_cast<std::size_t>(v)]) return false;
      local[static_cast<std::size_t>(v)] = 1;
    }
    if (c.size() == 2) {
      used[make_edge(c[0], c[1])] += 2;
    } else {
      for (std::size_t i = 0; i < c.size(); ++i)
        used[make_edge(c[i], c[(i + 1) % c.size()])] += 1;
    }
  }
  for (int v = 0; v < n; ++v)
    if (incidences[static_cast<std::size_t>(v)] != 2) return false;
  for (const auto& [e, k] : used)
    if (!edge_ok(e, k)) return false;
  return true;
}

}  // namespace

bool verify_two_factor(const SimpleGraph& g, const CycleCover& f) {
  return two_factor_shape(g.vertex_count(), f, 3,
                          [&](const Edge& e, int k) { return k == 1 && g.has_edge(e.first, e.second); });
}

bool verify_two_factor(const Multigraph& g, const CycleCover& f) {
  return two_factor_shape(g.vertex_count(), f, 2,
                          [&](const Edge& e, int k) { return k <= g.multiplicity(e.first, e.second); });
}

PackingCheck verify_packing(const SimpleGraph& g, const std::vector<HamiltonCycle>& cycles) {
  const int n = g.vertex_count();
  std::map<Edge, std::size_t> owner;
  for (std::size_t idx = 0; idx < cycles.size(); ++idx) {
    const auto& order = cycles[idx].order;
    std::string where = "cycle " + std::to_string(idx);
    if (static_cast<int>(order.size()) != n)
      return {false, 0, where + ": visits " + std::to_string(order.size()) + " of " + std::to_string(n) + " vertices"};
    if (n < 3) return {false, 0, where + ": a cycle needs at least 3 vertices"};
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int v : order) {
      if (v < 0 || v >= n) return {false, 0, where + ": vertex " + std::to_string(v) + " out of range"};
      if (seen[static_cast<std::size_t>(v)])
        return {false, 0, where + ": vertex " + std::to_string(v) + " repeated"};
      seen[static_cast<std::size_t>(v)] = 1;
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
      int u = order[i];
      int v = order[(i + 1) % order.size()];
      if (!g.has_edge(u, v))
        return {false, 0,
                where + ": (" + std::to_string(u) + "," + std::to_string(v) + ") is not an edge of the graph"};
      Edge e = make_edge(u, v);
      auto it = owner.find(e);
      if (it != owner.end())
        return {false, 0,
                "cycles " + std::to_string(it->second) + " and " + std::to_string(idx) + " share edge (" +
                    std::to_string(e.first) + "," + std::to_string(e.second) + ")"};
      owner.emplace(e, idx);
    }
  }
  return {true, static_cast<int>(cycles.size()), ""};
}

CycleCover cycles_of_two_regular(const SimpleGraph& g) {
  const int n = g.vertex_count();
  for (int v = 0; v < n; ++v)
    if (g.degree(v) != 2) throw std::invalid_argument("graph is not 2-regular");
  CycleCover cover;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int start = 0; start < n; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    std::vector<int> cyc;
    int prev = -1, cur = start;
    do {
      seen[static_cast<std::size_t>(cur)] = 1;
      cyc.push_back(cur);
      const auto& nb = g.neighbors(cur);
      int next = (nb[0] == prev) ? nb[1] : nb[0];
      prev = cur;
      cur = next;
    } while (cur != start);
    cover.cycles.push_back(std::move(cyc));
  }
  return cover;
}

SimpleGraph parse_graph(std::string_view text) {
  std::vector<Edge> edges;
  std::set<Edge> seen;
  int n = -1;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (pos > text.size()) break;
      continue;
    }
    std::istringstream iss(line);
    auto fail = [&](const std::string& what) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": " + what);
    };
    if (n < 0) {
      std::string tag;
      long long count = -1;
      if (!(iss >> tag >> count) || tag != "n" || count < 0) fail("expected header 'n <count>'");
      std::string rest;
      if (iss >> rest) fail("trailing content after header");
      n = static_cast<int>(count);
      continue;
    }
    long long u, v;
    if (!(iss >> u >> v)) fail("expected edge 'u v'");
    std::string rest;
    if (iss >> rest) fail("trailing content after edge");
    if (u < 0 || u >= n || v < 0 || v >= n) fail("vertex id out of range");
    if (u == v) fail("self-loop");
    Edge e = make_edge(static_cast<int>(u), static_cast<int>(v));
    if (!seen.insert(e).second) fail("duplicate edge");
    edges.push_back(e);
    if (pos > text.size()) break;
  }
  if (n < 0) throw std::invalid_argument("line 1: missing header 'n <count>'");
  return SimpleGraph::from_edges(n, edges);
}

std::string serialize_graph(const SimpleGraph& g) {
  std::string out = "n " + std::to_string(g.vertex_count()) + "\n";
  for (const auto& [u, v] : g.edges()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

}  // namespace hampack
