#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "hampack/factors.hpp"
#include "hampack/rotation.hpp"
#include "oracles.hpp"

using namespace hampack;

namespace {

std::multiset<Edge> working_edges(const PathState& st) {
  std::multiset<Edge> out;
  for (std::size_t i = 0; i + 1 < st.path.size(); ++i) out.insert(make_edge(st.path[i], st.path[i + 1]));
  for (const auto& c : st.cycles)
    for (std::size_t i = 0; i < c.size(); ++i) out.insert(make_edge(c[i], c[(i + 1) % c.size()]));
  return out;
}

std::multiset<Edge> pool_edges(const ReservePool& pool) {
  auto e = pool.edges();
  return std::multiset<Edge>(e.begin(), e.end());
}

std::multiset<Edge> joined(std::multiset<Edge> a, const std::multiset<Edge>& b) {
  for (const auto& e : b) a.insert(e);
  return a;
}

}  // namespace

TEST_CASE("reserve pool basics") {
  ReservePool pool(4, {{0, 1}, {2, 3}});
  CHECK(pool.size() == 2);
  CHECK(pool.contains(1, 0));
  CHECK(pool.tag(0, 1) == ReserveTag::original);
  pool.consume(0, 1);
  CHECK_FALSE(pool.contains(0, 1));
  pool.insert(0, 1, ReserveTag::recycled);
  CHECK(pool.tag(0, 1) == ReserveTag::recycled);
  CHECK_THROWS_AS(pool.insert(2, 3, ReserveTag::original), std::invalid_argument);
  CHECK_THROWS_AS(pool.consume(0, 2), std::invalid_argument);
}

TEST_CASE("break_cycle") {
  SUBCASE("C5 broken at (0,1)") {
    CycleCover f{{{0, 1, 2, 3, 4}}};
    auto st = break_cycle(f, 0, {0, 1});
    CHECK(st.path == std::vector<int>{1, 2, 3, 4, 0});
    CHECK(st.cycles.empty());
  }
  SUBCASE("triangle gives a 3-vertex path") {
    CycleCover f{{{0, 1, 2}}};
    auto st = break_cycle(f, 0, {2, 0});
    CHECK(st.path == std::vector<int>{0, 1, 2});
  }
  SUBCASE("other cycles untouched") {
    CycleCover f{{{0, 1, 2}, {3, 4, 5}}};
    auto st = break_cycle(f, 0, {1, 2});
    CHECK(st.path == std::vector<int>{2, 0, 1});
    REQUIRE(st.cycles.size() == 1);
    CHECK(st.cycles[0] == std::vector<int>{3, 4, 5});
  }
  SUBCASE("edge not on the cycle is an input error") {
    CycleCover f{{{0, 1, 2, 3}}};
    CHECK_THROWS_AS(break_cycle(f, 0, {0, 2}), std::invalid_argument);
  }
}

TEST_CASE("extend_merge") {
  SUBCASE("absorbs a cycle through an endpoint reserve edge") {
    // two 4-cycles inside K8, one reserve edge from an endpoint
    CycleCover f{{{0, 1, 2, 3}, {4, 5, 6, 7}}};
    auto st = break_cycle(f, 0, {3, 0});
    REQUIRE(st.path == std::vector<int>{0, 1, 2, 3});
    ReservePool pool(8, {{3, 5}});
    SwapLog log;
    auto before = joined(working_edges(st), pool_edges(pool));
    auto m = extend_merge(st, pool, &log);
    REQUIRE(m.merged);
    CHECK(m.used == make_edge(3, 5));
    CHECK(st.cycles.empty());
    CHECK(st.path.size() == 8);
    std::set<int> verts(st.path.begin(), st.path.end());
    CHECK(verts.size() == 8);
    CHECK(pool.size() == 1);  // displaced cycle edge recycled
    CHECK(pool.tag(m.displaced.first, m.displaced.second) == ReserveTag::recycled);
    CHECK(joined(working_edges(st), pool_edges(pool)) == before);  // conservation
    CHECK(log.ops.size() == 2);
  }
  SUBCASE("no reserve edge leaving the path is a no-move") {
    CycleCover f{{{0, 1, 2}, {3, 4, 5}}};
    auto st = break_cycle(f, 0, {2, 0});
    ReservePool pool(6, {{0, 1}});  // internal to the path, must not be used
    auto m = extend_merge(st, pool, nullptr);
    CHECK_FALSE(m.merged);
    CHECK(pool.size() == 1);
  }
  SUBCASE("prefers the largest cycle") {
    CycleCover f{{{0, 1, 2}, {3, 4, 5}, {6, 7, 8, 9}}};
    auto st = break_cycle(f, 0, {2, 0});
    ReservePool pool(10, {{2, 3}, {2, 6}});
    auto m = extend_merge(st, pool, nullptr);
    REQUIRE(m.merged);
    CHECK(m.used == make_edge(2, 6));
  }
}

TEST_CASE("close_path") {
  SUBCASE("adjacent endpoints close with one edge") {
    PathState st;
    st.path = {0, 1, 2, 3};
    ReservePool pool(4, {{0, 3}});
    SwapLog log;
    auto res = close_path(st, pool, &log);
    REQUIRE(res.closed);
    CHECK(res.added_edges == 1);
    CHECK(pool.size() == 0);
    std::set<int> verts(res.cycle.begin(), res.cycle.end());
    CHECK(verts.size() == 4);
  }
  SUBCASE("empty reserve fails") {
    PathState st;
    st.path = {0, 1, 2, 3};
    ReservePool pool(4);
    CHECK_FALSE(close_path(st, pool, nullptr).closed);
  }
  SUBCASE("single rotation closure") {
    // chords (4,1) and (0,2): rotation at the back then a direct close
    PathState st;
    st.path = {0, 1, 2, 3, 4};
    ReservePool pool(5, {{4, 1}, {0, 2}});
    auto res = close_path(st, pool, nullptr);
    REQUIRE(res.closed);
    CHECK(res.added_edges == 2);
  }
  SUBCASE("double rotation instance on a 10-vertex path") {
    PathState st;
    st.path = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    ReservePool pool(10, {{0, 7}, {9, 2}, {1, 8}});
    SwapLog log;
    auto res = close_path(st, pool, &log);
    REQUIRE(res.closed);
    CHECK(res.added_edges >= 3);
    CHECK(res.added_edges <= 5);
    std::set<int> verts(res.cycle.begin(), res.cycle.end());
    CHECK(verts.size() == 10);
    // non-path edges of the produced cycle stay within the lemma's bound of 5
    std::set<Edge> path_edges;
    for (int i = 0; i + 1 < 10; ++i) path_edges.insert(make_edge(i, i + 1));
    int fresh = 0;
    for (std::size_t i = 0; i < res.cycle.size(); ++i)
      if (path_edges.count(make_edge(res.cycle[i], res.cycle[(i + 1) % res.cycle.size()])) == 0) ++fresh;
    CHECK(fresh <= 5);
  }
  SUBCASE("bipartite side filtering keeps the lemma's mechanics") {
    // path alternating between sides U (even ids) and V (odd ids)
    PathState st;
    st.path = {0, 1, 2, 3, 4, 5, 6, 7};
    std::vector<int> side_u = {0, 2, 4, 6}, side_v = {1, 3, 5, 7};
    ReservePool pool(8, {{7, 2}, {0, 3}, {0, 7}});
    SwapLog log;
    auto res = close_path(st, side_u, side_v, pool, &log);
    REQUIRE(res.closed);
    CHECK(res.added_edges <= 5);
    std::set<int> verts(res.cycle.begin(), res.cycle.end());
    CHECK(verts.size() == 8);
  }
  SUBCASE("endpoint outside its side fails cleanly") {
    PathState st;
    st.path = {1, 2, 3, 0};
    ReservePool pool(4, {{1, 0}});
    auto res = close_path(st, {0, 2}, {1, 3}, pool, nullptr);
    CHECK_FALSE(res.closed);  // front endpoint 1 is not in side_u
  }
}

TEST_CASE("two_factor_to_hamilton") {
  SUBCASE("an already-Hamiltonian factor returns unchanged") {
    CycleCover f{{{0, 1, 2, 3, 4}}};
    ReservePool pool(5);
    auto res = two_factor_to_hamilton(f, pool);
    REQUIRE(res.success);
    CHECK(res.log.ops.empty());
    CHECK(res.edges_changed == 0);
    CHECK(res.cycle.order.size() == 5);
  }
  SUBCASE("two cycles with a full reserve merge within seven swaps") {
    const int n = 10;
    CycleCover f{{{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}}};
    std::vector<Edge> spare;
    auto fedges = f.edges();
    std::set<Edge> fset(fedges.begin(), fedges.end());
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (fset.count({u, v}) == 0) spare.emplace_back(u, v);
    ReservePool pool(n, spare);
    auto entry = pool.size();
    auto res = two_factor_to_hamilton(f, pool);
    REQUIRE(res.success);
    CHECK(res.edges_changed <= 7);
    CHECK(pool.size() == entry);  // conversions displace as many edges as they consume
    auto replayed = replay_swaps(f, res.log);
    std::set<Edge> produced(res.cycle.edges().begin(), res.cycle.edges().end());
    CHECK(replayed == produced);
  }
  SUBCASE("triangles with an empty reserve fail and restore the pool") {
    CycleCover f{{{0, 1, 2}, {3, 4, 5}, {6, 7, 8}}};
    ReservePool pool(9);
    auto res = two_factor_to_hamilton(f, pool);
    CHECK_FALSE(res.success);
    CHECK(pool.size() == 0);
    CHECK(res.failure == "no cross-cycle reserve edge");
  }
  SUBCASE("pool restored after mid-run failure") {
    CycleCover f{{{0, 1, 2}, {3, 4, 5}}};
    // one cross edge allows the merge but nothing can close the path
    ReservePool pool(6, {{2, 3}});
    auto res = two_factor_to_hamilton(f, pool);
    CHECK_FALSE(res.success);
    CHECK(pool.size() == 1);
    CHECK(pool.contains(2, 3));
    CHECK_FALSE(res.log.ops.empty());  // partial log reported
  }
  SUBCASE("budget exhaustion fails transactionally") {
    CycleCover f{{{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}}};
    std::vector<Edge> spare;
    std::set<Edge> fset;
    for (const auto& e : f.edges()) fset.insert(e);
    for (int u = 0; u < 10; ++u)
      for (int v = u + 1; v < 10; ++v)
        if (!fset.count({u, v})) spare.emplace_back(u, v);
    ReservePool pool(10, spare);
    auto res = two_factor_to_hamilton(f, pool, 1);
    CHECK_FALSE(res.success);
    CHECK(pool.size() == spare.size());
  }
  SUBCASE("converted factors verify and respect the budget on random instances") {
    int converted = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      int n = 12 + static_cast<int>(seed % 9);
      auto g = random_gnp(n, 0.75, seed);
      auto even = max_even_factor(g);
      if (even.r < 4) continue;
      auto factors = petersen_decompose(Multigraph::from_simple(even.factor), seed);
      std::set<Edge> fset;
      for (const auto& e : even.factor.edges()) fset.insert(e);
      std::vector<Edge> spare;
      for (const auto& e : g.edges())
        if (!fset.count(e)) spare.push_back(e);
      ReservePool pool(n, spare);
      int budget = default_swap_budget(n);
      for (const auto& f : factors) {
        auto res = two_factor_to_hamilton(f, pool, budget);
        if (!res.success) continue;
        ++converted;
        auto check = verify_packing(g, {res.cycle});
        CHECK(check.valid);
        CHECK(res.edges_changed <= budget);
        CHECK(replay_swaps(f, res.log) ==
              std::set<Edge>(res.cycle.edges().begin(), res.cycle.edges().end()));
      }
    }
    CHECK(converted >= 20);
  }
}

TEST_CASE("swap log serialization") {
  SwapLog log;
  log.ops.push_back({SwapOp::remove_edge, {0, 1}});
  log.ops.push_back({SwapOp::add_edge, {1, 2}});
  auto text = log.to_jsonl();
  CHECK(text == "{\"remove\":[0,1]}\n{\"add\":[1,2]}\n");
  auto parsed = SwapLog::from_jsonl(text);
  REQUIRE(parsed.ops.size() == 2);
  CHECK(parsed.ops == log.ops);
}

TEST_CASE("default_swap_budget") {
  CHECK(default_swap_budget(10) == 50);   // floor dominates tiny instances
  CHECK(default_swap_budget(100) >= 1500);
  CHECK(default_swap_budget(100) <= 2500);
}

TEST_CASE("dense_digraph_hamilton") {
  SUBCASE("a directed cycle returns itself") {
    Orientation d(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    auto res = dense_digraph_hamilton(d);
    REQUIRE(res.cycle.has_value());
    CHECK(res.cycle->order.size() == 5);
  }
  SUBCASE("complete digraph K4") {
    std::vector<std::pair<int, int>> arcs;
    for (int u = 0; u < 4; ++u)
      for (int v = 0; v < 4; ++v)
        if (u != v) arcs.emplace_back(u, v);
    auto res = dense_digraph_hamilton(Orientation(4, arcs));
    CHECK(res.degree_condition);
    REQUIRE(res.cycle.has_value());
    // verify the directed cycle
    Orientation d(4, arcs);
    const auto& o = res.cycle->order;
    for (std::size_t i = 0; i < o.size(); ++i) CHECK(d.has_arc(o[i], o[(i + 1) % o.size()]));
  }
  SUBCASE("qualified random digraphs always succeed at oracle scale") {
    int qualified = 0;
    for (std::uint64_t seed = 0; qualified < 120; ++seed) {
      Rng rng(mix_seed(seed, 0x7175616c));
      int n = 4 + static_cast<int>(rng.below(7));
      std::vector<std::pair<int, int>> arcs;
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
          if (u != v && rng.unit() < 0.7) arcs.emplace_back(u, v);
      Orientation d(n, arcs);
      auto res = dense_digraph_hamilton(d);
      if (!res.degree_condition) continue;
      ++qualified;
      CHECK(oracles::digraph_hamilton_exists(d));
      REQUIRE(res.cycle.has_value());
      const auto& o = res.cycle->order;
      std::set<int> verts(o.begin(), o.end());
      CHECK(static_cast<int>(verts.size()) == n);
      for (std::size_t i = 0; i < o.size(); ++i) CHECK(d.has_arc(o[i], o[(i + 1) % o.size()]));
    }
  }
  SUBCASE("finder agrees with exhaustive existence even when unqualified") {
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
      Rng rng(mix_seed(seed, 0x756e71));
      int n = 3 + static_cast<int>(rng.below(6));
      std::vector<std::pair<int, int>> arcs;
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
          if (u != v && rng.unit() < 0.45) arcs.emplace_back(u, v);
      Orientation d(n, arcs);
      auto res = dense_digraph_hamilton(d);
      CHECK(res.cycle.has_value() == oracles::digraph_hamilton_exists(d));
    }
  }
}

TEST_CASE("conservation across a full conversion") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    int n = 12;
    auto g = random_gnp(n, 0.8, seed);
    auto even = max_even_factor(g);
    if (even.r < 4) continue;
    auto factors = petersen_decompose(Multigraph::from_simple(even.factor), seed);
    std::set<Edge> fset;
    for (const auto& e : even.factor.edges()) fset.insert(e);
    std::vector<Edge> spare;
    for (const auto& e : g.edges())
      if (!fset.count(e)) spare.push_back(e);
    ReservePool pool(n, spare);
    const auto& f = factors[0];
    std::multiset<Edge> before;
    for (const auto& e : f.edges()) before.insert(e);
    for (const auto& e : pool.edges()) before.insert(e);
    auto res = two_factor_to_hamilton(f, pool);
    std::multiset<Edge> after;
    if (res.success)
      for (const auto& e : res.cycle.edges()) after.insert(e);
    else
      for (const auto& e : f.edges()) after.insert(e);
    for (const auto& e : pool.edges()) after.insert(e);
    CHECK(before == after);  // no edge invented, none duplicated
  }
}
