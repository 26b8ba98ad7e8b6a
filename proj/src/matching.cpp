#include "hampack/matching.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace hampack {

namespace {

// State for one augmenting-path search phase of Edmonds' algorithm.
struct BlossomSearch {
  int n;
  const std::vector<std::vector<int>>& adj;
  std::vector<int>& match;
  std::vector<int> p, base;
  std::vector<char> used, blossom;

  BlossomSearch(int n, const std::vector<std::vector<int>>& adj, std::vector<int>& match)
      : n(n), adj(adj), match(match), p(static_cast<std::size_t>(n)), base(static_cast<std::size_t>(n)),
        used(static_cast<std::size_t>(n)), blossom(static_cast<std::size_t>(n)) {}

  int lca(int a, int b) {
    std::vector<char> mark(static_cast<std::size_t>(n), 0);
    for (;;) {
      a = base[static_cast<std::size_t>(a)];
      mark[static_cast<std::size_t>(a)] = 1;
      if (match[static_cast<std::size_t>(a)] == -1) break;
      a = p[static_cast<std::size_t>(match[static_cast<std::size_t>(a)])];
    }
    for (;;) {
      b = base[static_cast<std::size_t>(b)];
      if (mark[static_cast<std::size_t>(b)]) return b;
      b = p[static_cast<std::size_t>(match[static_cast<std::size_t>(b)])];
    }
  }

  void mark_path(int v, int b, int child) {
    while (base[static_cast<std::size_t>(v)] != b) {
      blossom[static_cast<std::size_t>(base[static_cast<std::size_t>(v)])] = 1;
      int mv = match[static_cast<std::size_t>(v)];
      blossom[static_cast<std::size_t>(base[static_cast<std::size_t>(mv)])] = 1;
      p[static_cast<std::size_t>(v)] = child;
      child = mv;
      v = p[static_cast<std::size_t>(mv)];
    }
  }

  bool augment_from(int root) {
    std::fill(used.begin(), used.end(), 0);
    std::fill(p.begin(), p.end(), -1);
    for (int i = 0; i < n; ++i) base[static_cast<std::size_t>(i)] = i;
    used[static_cast<std::size_t>(root)] = 1;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int to : adj[static_cast<std::size_t>(v)]) {
        if (base[static_cast<std::size_t>(v)] == base[static_cast<std::size_t>(to)] ||
            match[static_cast<std::size_t>(v)] == to)
          continue;
        if (to == root ||
            (match[static_cast<std::size_t>(to)] != -1 && p[static_cast<std::size_t>(match[static_cast<std::size_t>(to)])] != -1)) {
          // odd cycle: contract the blossom
          int cur = lca(v, to);
          std::fill(blossom.begin(), blossom.end(), 0);
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          for (int i = 0; i < n; ++i)
            if (blossom[static_cast<std::size_t>(base[static_cast<std::size_t>(i)])]) {
              base[static_cast<std::size_t>(i)] = cur;
              if (!used[static_cast<std::size_t>(i)]) {
                used[static_cast<std::size_t>(i)] = 1;
                q.push(i);
              }
            }
        } else if (p[static_cast<std::size_t>(to)] == -1) {
          p[static_cast<std::size_t>(to)] = v;
          if (match[static_cast<std::size_t>(to)] == -1) {
            // augment along the alternating path ending at `to`
            int u = to;
            while (u != -1) {
              int pv = p[static_cast<std::size_t>(u)];
              int ppv = match[static_cast<std::size_t>(pv)];
              match[static_cast<std::size_t>(u)] = pv;
              match[static_cast<std::size_t>(pv)] = u;
              u = ppv;
            }
            return true;
          }
          int mt = match[static_cast<std::size_t>(to)];
          if (!used[static_cast<std::size_t>(mt)]) {
            used[static_cast<std::size_t>(mt)] = 1;
            q.push(mt);
          }
        }
      }
    }
    return false;
  }
};

}  // namespace

std::vector<int> maximum_matching_mates(int n, const std::vector<std::vector<int>>& adj) {
  std::vector<int> match(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < n; ++v) {
    if (match[static_cast<std::size_t>(v)] != -1) continue;
    for (int to : adj[static_cast<std::size_t>(v)]) {
      if (match[static_cast<std::size_t>(to)] == -1) {
        match[static_cast<std::size_t>(v)] = to;
        match[static_cast<std::size_t>(to)] = v;
        break;
      }
    }
  }
  BlossomSearch search(n, adj, match);
  for (int v = 0; v < n; ++v)
    if (match[static_cast<std::size_t>(v)] == -1) search.augment_from(v);
  return match;
}

std::vector<int> bipartite_matching(int nl, int nr, const std::vector<std::vector<int>>& adj_left) {
  const int INF = 1 << 30;
  std::vector<int> match_l(static_cast<std::size_t>(nl), -1), match_r(static_cast<std::size_t>(nr), -1);
  std::vector<int> dist(static_cast<std::size_t>(nl));

  auto bfs = [&]() {
    std::queue<int> q;
    for (int u = 0; u < nl; ++u) {
      if (match_l[static_cast<std::size_t>(u)] == -1) {
        dist[static_cast<std::size_t>(u)] = 0;
        q.push(u);
      } else {
        dist[static_cast<std::size_t>(u)] = INF;
      }
    }
    bool found = false;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int w : adj_left[static_cast<std::size_t>(u)]) {
        int next = match_r[static_cast<std::size_t>(w)];
        if (next == -1) {
          found = true;
        } else if (dist[static_cast<std::size_t>(next)] == INF) {
          dist[static_cast<std::size_t>(next)] = dist[static_cast<std::size_t>(u)] + 1;
          q.push(next);
        }
      }
    }
    return found;
  };

  std::function<bool(int)> dfs = [&](int u) {
    for (int w : adj_left[static_cast<std::size_t>(u)]) {
      int next = match_r[static_cast<std::size_t>(w)];
      if (next == -1 || (dist[static_cast<std::size_t>(next)] == dist[static_cast<std::size_t>(u)] + 1 && dfs(next))) {
        match_l[static_cast<std::size_t>(u)] = w;
        match_r[static_cast<std::size_t>(w)] = u;
        return true;
      }
    }
    dist[static_cast<std::size_t>(u)] = INF;
    return false;
  };

  while (bfs())
    for (int u = 0; u < nl; ++u)
      if (match_l[static_cast<std::size_t>(u)] == -1) dfs(u);
  return match_l;
}

}  // namespace hampack
