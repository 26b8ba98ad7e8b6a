#include "hampack/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hampack {

ReservePool::ReservePool(int n) : n_(n), adj_(static_cast<std::size_t>(std::max(n, 0))) {
  if (n < 0) throw std::invalid_argument("vertex count must be non-negative");
}

ReservePool::ReservePool(int n, const std::vector<Edge>& edges) : ReservePool(n) {
  for (const auto& [u, v] : edges) insert(u, v, ReserveTag::original);
}

bool ReservePool::contains(int u, int v) const {
  if (u < 0 || u >= n_ || v < 0 || v >= n_ || u == v) return false;
  return edges_.count(make_edge(u, v)) > 0;
}

void ReservePool::insert(int u, int v, ReserveTag tag) {
  if (u < 0 || u >= n_ || v < 0 || v >= n_) throw std::invalid_argument("vertex id out of range");
  if (u == v) throw std::invalid_argument("self-loop");
  auto [it, fresh] = edges_.emplace(make_edge(u, v), tag);
  if (!fresh) throw std::invalid_argument("edge already in pool");
  adj_[static_cast<std::size_t>(u)].insert(v);
  adj_[static_cast<std::size_t>(v)].insert(u);
}

void ReservePool::consume(int u, int v) {
  auto it = edges_.find(make_edge(u, v));
  if (it == edges_.end()) throw std::invalid_argument("edge not in pool");
  edges_.erase(it);
  adj_[static_cast<std::size_t>(u)].erase(v);
  adj_[static_cast<std::size_t>(v)].erase(u);
}

const std::set<int>& ReservePool::neighbors(int v) const {
  if (v < 0 || v >= n_) throw std::invalid_argument("vertex id out of range");
  return adj_[static_cast<std::size_t>(v)];
}

ReserveTag ReservePool::tag(int u, int v) const {
  auto it = edges_.find(make_edge(u, v));
  if (it == edges_.end()) throw std::invalid_argument("edge not in pool");
  return it->second;
}

std::vector<Edge> ReservePool::edges() const {
  std::vector<Edge> out;
  out.reserve(edges_.size());
  for (const auto& [e, tag] : edges_) out.push_back(e);
  return out;
}

std::string SwapLog::to_jsonl() const {
  std::string out;
  for (const auto& op : ops) {
    nlohmann::json j;
    j[op.kind == SwapOp::add_edge ? "add" : "remove"] = {op.edge.first, op.edge.second};
    out += j.dump();
    out += "\n";
  }
  return out;
}

SwapLog SwapLog::from_jsonl(std::string_view text) {
  SwapLog log;
  std::istringstream iss{std::string(text)};
  std::string line;
  while (std::getline(iss, line)) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line);
    SwapOp op;
    if (j.contains("add")) {
      op.kind = SwapOp::add_edge;
      op.edge = make_edge(j["add"][0].get<int>(), j["add"][1].get<int>());
    } else {
      op.kind = SwapOp::remove_edge;
      op.edge = make_edge(j["remove"][0].get<int>(), j["remove"][1].get<int>());
    }
    log.ops.push_back(op);
  }
  return log;
}

std::set<Edge> replay_swaps(const CycleCover& from, const SwapLog& log) {
  std::set<Edge> edges;
  for (const auto& e : from.edges())
    if (!edges.insert(e).second) throw std::invalid_argument("2-factor repeats an edge");
  for (const auto& op : log.ops) {
    if (op.kind == SwapOp::add_edge) {
      if (!edges.insert(op.edge).second) throw std::invalid_argument("replay adds an existing edge");
    } else {
      if (edges.erase(op.edge) == 0) throw std::invalid_argument("replay removes a missing edge");
    }
  }
  return edges;
}

PathState break_cycle(const CycleCover& f, std::size_t cycle_index, Edge broken) {
  if (cycle_index >= f.cycles.size()) throw std::invalid_argument("cycle index out of range");
  const auto& cyc = f.cycles[cycle_index];
  const std::size_t len = cyc.size();
  std::size_t at = len;
  for (std::size_t i = 0; i < len; ++i)
    if (make_edge(cyc[i], cyc[(i + 1) % len]) == make_edge(broken.first, broken.second)) {
      at = i;
      break;
    }
  if (at == len) throw std::invalid_argument("edge is not on the named cycle");
  PathState st;
  st.path.reserve(len);
  for (std::size_t k = 1; k <= len; ++k) st.path.push_back(cyc[(at + k) % len]);
  for (std::size_t i = 0; i < f.cycles.size(); ++i)
    if (i != cycle_index) st.cycles.push_back(f.cycles[i]);
  return st;
}

namespace {

void log_op(SwapLog* log, SwapOp::Kind kind, Edge e) {
  if (log) log->ops.push_back({kind, e});
}

}  // namespace

MergeResult extend_merge(PathState& p, ReservePool& pool, SwapLog* log) {
  MergeResult result;
  if (p.path.empty() || p.cycles.empty()) return result;

  const int n = pool.vertex_count();
  std::vector<int> on_cycle(static_cast<std::size_t>(n), -1);
  for (std::size_t c = 0; c < p.cycles.size(); ++c)
    for (int v : p.cycles[c]) on_cycle[static_cast<std::size_t>(v)] = static_cast<int>(c);

  // candidate = (endpoint side, reserve edge target); pick the largest target
  // cycle, ties to the smallest cycle id, then back endpoint, then smallest w
  struct Candidate {
    std::size_t cycle = 0;
    bool back = true;
    int w = -1;
  };
  std::optional<Candidate> best;
  auto consider = [&](bool back, int endpoint) {
    for (int w : pool.neighbors(endpoint)) {
      int c = on_cycle[static_cast<std::size_t>(w)];
      if (c < 0) continue;
      Candidate cand{static_cast<std::size_t>(c), back, w};
      if (!best) {
        best = cand;
        continue;
      }
      std::size_t bs = p.cycles[best->cycle].size(), cs = p.cycles[cand.cycle].size();
      auto key = [&](const Candidate& x, std::size_t sz) {
        return std::make_tuple(-(long long)sz, x.cycle, x.back ? 0 : 1, x.w);
      };
      if (key(cand, cs) < key(*best, bs)) best = cand;
    }
  };
  consider(true, p.path.back());
  if (p.path.front() != p.path.back()) consider(false, p.path.front());
  if (!best) return result;

  if (!best->back) std::reverse(p.path.begin(), p.path.end());
  const int y = p.path.back();
  const auto& cyc = p.cycles[best->cycle];
  const std::size_t len = cyc.size();
  std::size_t at = 0;
  while (cyc[at] != best->w) ++at;
  const int displaced_to = cyc[(at + 1) % len];

  result.merged = true;
  result.used = make_edge(y, best->w);
  result.displaced = make_edge(best->w, displaced_to);

  p.path.push_back(best->w);
  for (std::size_t k = 1; k < len; ++k) p.path.push_back(cyc[(at + len - k) % len]);
  p.cycles.erase(p.cycles.begin() + static_cast<std::ptrdiff_t>(best->cycle));

  pool.consume(result.used.first, result.used.second);
  log_op(log, SwapOp::add_edge, result.used);
  pool.insert(result.displaced.first, result.displaced.second, ReserveTag::recycled);
  log_op(log, SwapOp::remove_edge, result.displaced);
  return result;
}

namespace {

// Bounded Posa search: rotations plus closing schemes, at most five reserve
// edges per closure.
struct CloseSearch {
  const ReservePool& pool;
  const std::vector<char>& in_u;
  const std::vector<char>& in_v;
  static constexpr int kMaxAdds = 5;
  static constexpr int kFrontier = 3;

  // net[e]: +1 when the trajectory's last op put e back in the pool, -1 when
  // it consumed e; untouched edges defer to the pool itself
  std::map<Edge, int> net;
  struct Undo {
    Edge e;
    bool had;
    int old;
  };
  std::vector<Undo> undo;
  std::vector<SwapOp> ops;
  std::vector<int> cycle_out;
  int adds = 0;
  std::vector<int> pos;  // scratch: position of each vertex on the current path

  CloseSearch(const ReservePool& pool, const std::vector<char>& in_u, const std::vector<char>& in_v)
      : pool(pool), in_u(in_u), in_v(in_v), pos(static_cast<std::size_t>(pool.vertex_count()), -1) {}

  bool avail(int u, int v) const {
    if (u == v) return false;
    Edge e = make_edge(u, v);
    auto it = net.find(e);
    if (it != net.end()) return it->second > 0;
    return pool.contains(u, v);
  }

  void push(SwapOp::Kind kind, Edge e) {
    ops.push_back({kind, e});
    auto it = net.find(e);
    undo.push_back({e, it != net.end(), it != net.end() ? it->second : 0});
    net[e] = (kind == SwapOp::add_edge) ? -1 : 1;
    if (kind == SwapOp::add_edge) ++adds;
  }

  void pop() {
    SwapOp op = ops.back();
    ops.pop_back();
    Undo u = undo.back();
    undo.pop_back();
    if (u.had)
      net[u.e] = u.old;
    else
      net.erase(u.e);
    if (op.kind == SwapOp::add_edge) --adds;
  }

  void index(const std::vector<int>& path) {
    std::fill(pos.begin(), pos.end(), -1);
    for (std::size_t i = 0; i < path.size(); ++i) pos[static_cast<std::size_t>(path[i])] = static_cast<int>(i);
  }

  // membership in U_P / V_P: correct side plus all path neighbours on the
  // opposite side
  bool side_ok(const std::vector<int>& path, int i, bool want_u) const {
    int w = path[static_cast<std::size_t>(i)];
    const auto& self = want_u ? in_u : in_v;
    const auto& other = want_u ? in_v : in_u;
    if (!self[static_cast<std::size_t>(w)]) return false;
    if (i > 0 && !other[static_cast<std::size_t>(path[static_cast<std::size_t>(i - 1)])]) return false;
    if (i + 1 < static_cast<int>(path.size()) && !other[static_cast<std::size_t>(path[static_cast<std::size_t>(i + 1)])]) return false;
    return true;
  }

  // chord targets of `endpoint` that lie on the path, sorted ascending
  std::vector<int> chord_positions(const std::vector<int>& path, int endpoint, bool want_u) {
    std::vector<int> res;
    for (int w : pool.neighbors(endpoint)) {
      int i = pos[static_cast<std::size_t>(w)];
      if (i < 0) continue;
      if (!avail(endpoint, w)) continue;
      if (!side_ok(path, i, want_u)) continue;
      res.push_back(i);
    }
    for (const auto& [e, state] : net) {
      if (state <= 0) continue;
      int w = -1;
      if (e.first == endpoint) w = e.second;
      if (e.second == endpoint) w = e.first;
      if (w < 0) continue;
      int i = pos[static_cast<std::size_t>(w)];
      if (i < 0 || !avail(endpoint, w) || !side_ok(path, i, want_u)) continue;
      res.push_back(i);
    }
    std::sort(res.begin(), res.end());
    res.erase(std::unique(res.begin(), res.end()), res.end());
    return res;
  }

  bool search(std::vector<int>& path, int rotations_left) {
    const int L = static_cast<int>(path.size()) - 1;
    const int x = path.front();
    const int y = path.back();
    index(path);

    // direct closure
    if (adds + 1 <= kMaxAdds && avail(x, y)) {
      push(SwapOp::add_edge, make_edge(x, y));
      cycle_out = path;
      return true;
    }

    auto ys = chord_positions(path, y, /*want_u=*/true);
    auto xs = chord_positions(path, x, /*want_u=*/false);

    // single rotation at the back, then close front -> successor
    if (adds + 2 <= kMaxAdds) {
      for (int i : ys) {
        if (i >= L - 1) continue;
        int w = path[static_cast<std::size_t>(i)];
        int wn = path[static_cast<std::size_t>(i + 1)];
        if (!avail(x, wn)) continue;
        push(SwapOp::add_edge, make_edge(y, w));
        push(SwapOp::remove_edge, make_edge(w, wn));
        push(SwapOp::add_edge, make_edge(x, wn));
        cycle_out.assign(path.begin(), path.begin() + i + 1);
        for (int k = L; k >= i + 1; --k) cycle_out.push_back(path[static_cast<std::size_t>(k)]);
        return true;
      }
      // mirrored: rotation at the front, close back -> predecessor
      for (int j : xs) {
        if (j < 2) continue;
        int v = path[static_cast<std::size_t>(j)];
        int vp = path[static_cast<std::size_t>(j - 1)];
        if (!avail(y, vp)) continue;
        push(SwapOp::add_edge, make_edge(x, v));
        push(SwapOp::remove_edge, make_edge(vp, v));
        push(SwapOp::add_edge, make_edge(y, vp));
        cycle_out.clear();
        cycle_out.push_back(x);
        for (int k = j; k <= L; ++k) cycle_out.push_back(path[static_cast<std::size_t>(k)]);
        for (int k = j - 1; k >= 1; --k) cycle_out.push_back(path[static_cast<std::size_t>(k)]);
        return true;
      }
    }

    // crossing double rotations, both position orders
    if (adds + 3 <= kMaxAdds && !ys.empty() && !xs.empty()) {
      constexpr std::size_t kPairCap = 20000;
      std::size_t scanned = 0;
      for (int i : ys) {
        if (scanned > kPairCap) break;
        int u = path[static_cast<std::size_t>(i)];
        for (int j : xs) {
          if (++scanned > kPairCap) break;
          int v = path[static_cast<std::size_t>(j)];
          if (j < i && i <= L - 2) {
            // bridge (p_{j-1}, p_{i+1})
            int bj = path[static_cast<std::size_t>(j - 1)];
            int bi = path[static_cast<std::size_t>(i + 1)];
            if (avail(bj, bi) && make_edge(bj, bi) != make_edge(y, u) && make_edge(bj, bi) != make_edge(x, v)) {
              push(SwapOp::add_edge, make_edge(x, v));
              push(SwapOp::add_edge, make_edge(y, u));
              push(SwapOp::remove_edge, make_edge(bj, v));
              push(SwapOp::remove_edge, make_edge(u, bi));
              push(SwapOp::add_edge, make_edge(bj, bi));
              cycle_out.clear();
              cycle_out.push_back(x);
              for (int k = j; k <= i; ++k) cycle_out.push_back(path[static_cast<std::size_t>(k)]);
              for (int k = L; k >= i + 1; --k) cycle_out.push_back(path[static_cast<std::size_t>(k)]);
              for (int k = j - 1; k >= 1; --k) cycle_out.push_back(path[static_cast<std::size_t>(k)]);
              return true;
            }
          }
          if (i < j && j <= L - 1 && i >= 1) {
            // bridge (p_{i-1}, p_{j+1})
            int bi = path[static_cast<std::size_t>(i - 1)];
            int bj = path[static_cast<std::size_t>(j + 1)];
            if (avail(bi, bj) && make_edge(bi, bj) != make_edge(y, u) && make_edge(bi, bj) != make_edge(x, v)) {
              push(SwapOp::add_edge, make_edge(x, v));
              push(SwapOp::add_edge, make_edge(y, u));
              push(SwapOp::remove_edge, make_edge(bi, u));
              push(SwapOp::remove_edge, make_edge(v, bj));
              push(SwapOp::add_edge, make_edge(bi, bj));
              cycle_out.clear();
              for (int k = 0; k <= i - 1; ++k) cycle_out.push_back(path[static_cast<std::size_t>(k)]);
              for (int k = j + 1; k <= L; ++k) cycle_out.push_back(path[static_cast<std::size_t>(k)]);
              for (int k = i; k <= j; ++k) cycle_out.push_back(path[static_cast<std::size_t>(k)]);
              return true;
            }
          }
        }
      }
    }

    // commit a rotation and recurse
    if (rotations_left <= 0 || adds + 2 > kMaxAdds) return false;

    struct Move {
      bool back;
      int i;
      int score;
      int w;
    };
    std::vector<Move> moves;
    auto score_of = [&](int v) { return static_cast<int>(pool.neighbors(v).size()); };
    for (int i : ys) {
      if (i >= L - 1 || i < 1) continue;
      moves.push_back({true, i, score_of(path[static_cast<std::size_t>(i + 1)]), path[static_cast<std::size_t>(i)]});
    }
    for (int j : xs) {
      if (j < 2 || j > L - 1) continue;
      moves.push_back({false, j, score_of(path[static_cast<std::size_t>(j - 1)]), path[static_cast<std::size_t>(j)]});
    }
    std::stable_sort(moves.begin(), moves.end(), [](const Move& a, const Move& b) {
      if (a.score != b.score) return a.score > b.score;
      if (a.back != b.back) return a.back;
      return a.w < b.w;
    });
    int tried_back = 0, tried_front = 0;
    for (const Move& mv : moves) {
      int& tried = mv.back ? tried_back : tried_front;
      if (tried >= kFrontier) continue;
      ++tried;
      std::vector<int> next;
      next.reserve(path.size());
      if (mv.back) {
        int w = path[static_cast<std::size_t>(mv.i)];
        int wn = path[static_cast<std::size_t>(mv.i + 1)];
        push(SwapOp::add_edge, make_edge(y, w));
        push(SwapOp::remove_edge, make_edge(w, wn));
        next.assign(path.begin(), path.begin() + mv.i + 1);
        for (int k = L; k >= mv.i + 1; --k) next.push_back(path[static_cast<std::size_t>(k)]);
      } else {
        int v = path[static_cast<std::size_t>(mv.i)];
        int vp = path[static_cast<std::size_t>(mv.i - 1)];
        push(SwapOp::add_edge, make_edge(x, v));
        push(SwapOp::remove_edge, make_edge(vp, v));
        for (int k = mv.i - 1; k >= 0; --k) next.push_back(path[static_cast<std::size_t>(k)]);
        for (int k = mv.i; k <= L; ++k) next.push_back(path[static_cast<std::size_t>(k)]);
      }
      if (search(next, rotations_left - 1)) return true;
      pop();
      pop();
      index(path);  // restore scratch positions for the remaining moves
    }
    return false;
  }
};

void commit_close(CloseSearch& search, ReservePool& pool, SwapLog* log, CloseResult& res) {
  if (search.adds > CloseSearch::kMaxAdds)
    throw std::logic_error("closure exceeded the five-edge bound");
  for (const auto& op : search.ops) {
    if (op.kind == SwapOp::add_edge)
      pool.consume(op.edge.first, op.edge.second);
    else
      pool.insert(op.edge.first, op.edge.second, ReserveTag::recycled);
    log_op(log, op.kind, op.edge);
  }
  res.closed = true;
  res.cycle = search.cycle_out;
  res.added_edges = search.adds;
}

}  // namespace

CloseResult close_path(PathState& p, ReservePool& pool, SwapLog* log) {
  std::vector<char> all(static_cast<std::size_t>(pool.vertex_count()), 1);
  CloseSearch search(pool, all, all);
  CloseResult res;
  if (p.path.size() < 3) return res;
  std::vector<int> path = p.path;
  if (!search.search(path, 4)) return res;
  commit_close(search, pool, log, res);
  return res;
}

CloseResult close_path(PathState& p, const std::vector<int>& side_u, const std::vector<int>& side_v,
                       ReservePool& pool, SwapLog* log) {
  const int n = pool.vertex_count();
  std::vector<char> in_u(static_cast<std::size_t>(n), 0), in_v(static_cast<std::size_t>(n), 0);
  for (int v : side_u) in_u.at(static_cast<std::size_t>(v)) = 1;
  for (int v : side_v) in_v.at(static_cast<std::size_t>(v)) = 1;
  CloseResult res;
  if (p.path.size() < 3) return res;
  if (!in_u[static_cast<std::size_t>(p.path.front())] || !in_v[static_cast<std::size_t>(p.path.back())])
    return res;  // endpoint sides violated: failure, caller falls back
  CloseSearch search(pool, in_u, in_v);
  std::vector<int> path = p.path;
  if (!search.search(path, 4)) return res;
  commit_close(search, pool, log, res);
  return res;
}

int default_swap_budget(int n) {
  if (n < 2) return 50;
  double denom = std::pow(std::log2(static_cast<double>(std::max(n, 4))), 0.2);
  int raw = static_cast<int>(std::ceil(25.0 * static_cast<double>(n) / denom));
  return std::max(raw, 50);
}

namespace {

HamiltonCycle canonical_hamilton(const std::vector<int>& cycle) {
  std::size_t at = 0;
  for (std::size_t i = 0; i < cycle.size(); ++i)
    if (cycle[i] < cycle[at]) at = i;
  std::vector<int> order;
  order.reserve(cycle.size());
  for (std::size_t k = 0; k < cycle.size(); ++k) order.push_back(cycle[(at + k) % cycle.size()]);
  if (order.size() >= 3 && order[1] > order.back()) {
    std::reverse(order.begin() + 1, order.end());
  }
  return HamiltonCycle{std::move(order)};
}

}  // namespace

ConversionResult two_factor_to_hamilton(const CycleCover& f, ReservePool& pool, int budget, int variant) {
  const int n = pool.vertex_count();
  if (!f.covers_exactly(n)) throw std::invalid_argument("2-factor must cover every vertex exactly once");
  for (const auto& c : f.cycles)
    if (c.size() < 3) throw std::invalid_argument("cycles must have length at least 3");
  if (budget < 0) budget = default_swap_budget(n);

  ConversionResult res;
  if (f.cycle_count() == 1) {
    res.success = true;
    res.cycle = canonical_hamilton(f.cycles[0]);
    return res;
  }

  const ReservePool entry = pool;
  std::set<Edge> added, removed;
  SwapLog log;
  std::size_t synced = 0;
  auto sync = [&]() {
    for (; synced < log.ops.size(); ++synced) {
      const auto& op = log.ops[synced];
      if (op.kind == SwapOp::add_edge) {
        if (removed.erase(op.edge) == 0) added.insert(op.edge);
      } else {
        if (added.erase(op.edge) == 0) removed.insert(op.edge);
      }
    }
  };
  auto delta = [&]() { return static_cast<int>(added.size() + removed.size()); };
  auto fail = [&](const std::string& why) {
    pool = entry;
    res.success = false;
    res.failure = why;
    res.log = std::move(log);
    res.edges_changed = delta();
    return res;
  };

  PathState st;
  st.cycles = f.cycles;
  std::vector<int> on_cycle(static_cast<std::size_t>(n), -1);

  int guard = 4 * n + 64;
  while (guard-- > 0) {
    if (st.path.empty()) {
      if (st.cycles.size() == 1) break;

      // break the largest cycle owning a cross-cycle reserve edge; the retry
      // variant shifts the starting vertex
      std::fill(on_cycle.begin(), on_cycle.end(), -1);
      for (std::size_t c = 0; c < st.cycles.size(); ++c)
        for (int v : st.cycles[c]) on_cycle[static_cast<std::size_t>(v)] = static_cast<int>(c);
      std::vector<std::size_t> order(st.cycles.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return st.cycles[a].size() > st.cycles[b].size();
      });
      std::size_t pick_cycle = st.cycles.size();
      int pick_vertex = -1;
      for (std::size_t c : order) {
        const auto& cyc = st.cycles[c];
        std::size_t off = static_cast<std::size_t>(variant) % cyc.size();
        for (std::size_t t = 0; t < cyc.size() && pick_vertex < 0; ++t) {
          int u = cyc[(off + t) % cyc.size()];
          for (int w : pool.neighbors(u))
            if (on_cycle[static_cast<std::size_t>(w)] >= 0 &&
                on_cycle[static_cast<std::size_t>(w)] != static_cast<int>(c)) {
              pick_cycle = c;
              pick_vertex = u;
              break;
            }
        }
        if (pick_vertex >= 0) break;
      }
      if (pick_vertex < 0) return fail("no cross-cycle reserve edge");

      const auto& cyc = st.cycles[pick_cycle];
      std::size_t at = 0;
      while (cyc[at] != pick_vertex) ++at;
      Edge broken = make_edge(cyc[at], cyc[(at + 1) % cyc.size()]);
      CycleCover current{st.cycles};
      PathState next = break_cycle(current, pick_cycle, broken);
      log.ops.push_back({SwapOp::remove_edge, broken});
      pool.insert(broken.first, broken.second, ReserveTag::recycled);
      sync();
      if (delta() > budget) return fail("budget exhausted");
      st = std::move(next);
    } else {
      for (;;) {
        MergeResult m = extend_merge(st, pool, &log);
        sync();
        if (!m.merged) break;
        if (delta() > budget) return fail("budget exhausted");
      }
      CloseResult c = close_path(st, pool, &log);
      sync();
      if (!c.closed) return fail("rotation closure failed");
      if (delta() > budget) return fail("budget exhausted");
      st.cycles.push_back(std::move(c.cycle));
      st.path.clear();
    }
  }
  if (guard <= 0) return fail("no progress");

  res.success = true;
  res.cycle = canonical_hamilton(st.cycles[0]);
  res.log = std::move(log);
  res.edges_changed = delta();

  // contract checks, enforced on every call
  std::set<Edge> produced(res.cycle.edges().begin(), res.cycle.edges().end());
  if (replay_swaps(f, res.log) != produced) throw std::logic_error("swap log replay does not reproduce the cycle");
  std::set<Edge> original(f.edges().begin(), f.edges().end());
  std::size_t sym = 0;
  for (const auto& e : produced)
    if (original.count(e) == 0) ++sym;
  for (const auto& e : original)
    if (produced.count(e) == 0) ++sym;
  if (static_cast<int>(sym) != res.edges_changed || res.edges_changed > budget)
    throw std::logic_error("swap accounting violates the budget contract");
  return res;
}

DigraphHamiltonResult dense_digraph_hamilton(const Orientation& d, int exhaustive_cap) {
  const int n = d.vertex_count();
  DigraphHamiltonResult res;
  if (n == 0) return res;

  auto arc = [&](int u, int v) { return d.has_arc(u, v); };
  int worst = n;
  for (int v = 0; v < n; ++v) {
    auto distinct = [](const std::vector<int>& xs) {
      int c = 0;
      for (std::size_t i = 0; i < xs.size(); ++i)
        if (i == 0 || xs[i] != xs[i - 1]) ++c;
      return c;
    };
    worst = std::min({worst, distinct(d.out_neighbors(v)), distinct(d.in_neighbors(v))});
  }
  res.degree_condition = (2 * worst >= n);
  if (n < 2) return res;

  auto finish = [&](std::vector<int> order) {
    res.cycle = HamiltonCycle{std::move(order)};
    return res;
  };

  // insertion heuristic over a few deterministic vertex orders
  for (int attempt = 0; attempt < 16; ++attempt) {
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    if (attempt > 0) Rng(mix_seed(0x646967, static_cast<std::uint64_t>(attempt))).shuffle(order);
    std::vector<int> path = {order[0]};
    bool ok = true;
    for (int idx = 1; idx < n && ok; ++idx) {
      int v = order[static_cast<std::size_t>(idx)];
      if (arc(v, path.front())) {
        path.insert(path.begin(), v);
      } else if (arc(path.back(), v)) {
        path.push_back(v);
      } else {
        bool placed = false;
        for (std::size_t i = 0; i + 1 < path.size(); ++i)
          if (arc(path[i], v) && arc(v, path[i + 1])) {
            path.insert(path.begin() + static_cast<std::ptrdiff_t>(i) + 1, v);
            placed = true;
            break;
          }
        ok = placed;
      }
    }
    if (ok && arc(path.back(), path.front())) return finish(std::move(path));
  }

  if (n <= exhaustive_cap) {
    // bitmask DP from vertex 0
    const int full = (1 << n) - 1;
    std::vector<std::vector<int>> pred(static_cast<std::size_t>(full + 1),
                                       std::vector<int>(static_cast<std::size_t>(n), -2));
    pred[1][0] = -1;
    for (int mask = 1; mask <= full; ++mask) {
      if (!(mask & 1)) continue;
      for (int v = 0; v < n; ++v) {
        if (pred[static_cast<std::size_t>(mask)][static_cast<std::size_t>(v)] == -2) continue;
        for (int w = 0; w < n; ++w) {
          if (mask & (1 << w)) continue;
          if (!arc(v, w)) continue;
          auto& slot = pred[static_cast<std::size_t>(mask | (1 << w))][static_cast<std::size_t>(w)];
          if (slot == -2) slot = v;
        }
      }
    }
    for (int v = 1; v < n; ++v) {
      if (pred[static_cast<std::size_t>(full)][static_cast<std::size_t>(v)] == -2 || !arc(v, 0)) continue;
      std::vector<int> order;
      int mask = full, cur = v;
      while (cur != -1) {
        order.push_back(cur);
        int pv = pred[static_cast<std::size_t>(mask)][static_cast<std::size_t>(cur)];
        mask ^= (1 << cur);
        cur = pv;
      }
      std::reverse(order.begin(), order.end());
      return finish(std::move(order));
    }
  }
  return res;
}

}  // namespace hampack
