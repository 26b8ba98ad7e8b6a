#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "hampack/reduction.hpp"
#include "oracles.hpp"

using namespace hampack;

namespace {

// Cluster-structured graph: chosen cluster pairs complete, the rest empty.
// Every pair is exactly regular (all subset densities 0 or 1), so the reduced
// multigraph is fully determined.
struct ClusterFixture {
  SimpleGraph graph;
  ClusterPartition partition;
  std::vector<std::vector<char>> complete;  // pair adjacency on cluster ids
};

ClusterFixture cluster_fixture(int k, int m, double pair_prob, std::uint64_t seed) {
  Rng rng(mix_seed(seed, 0x666978));
  ClusterFixture fx;
  fx.partition.clusters.assign(static_cast<std::size_t>(k), {});
  std::vector<int> ids(static_cast<std::size_t>(k * m));
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
  rng.shuffle(ids);
  for (int c = 0; c < k; ++c)
    for (int j = 0; j < m; ++j)
      fx.partition.clusters[static_cast<std::size_t>(c)].push_back(ids[static_cast<std::size_t>(c * m + j)]);
  fx.complete.assign(static_cast<std::size_t>(k), std::vector<char>(static_cast<std::size_t>(k), 0));
  std::vector<Edge> edges;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (rng.unit() < pair_prob) {
        fx.complete[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 1;
        fx.complete[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = 1;
        for (int u : fx.partition.clusters[static_cast<std::size_t>(a)])
          for (int v : fx.partition.clusters[static_cast<std::size_t>(b)]) edges.push_back(make_edge(u, v));
      }
  fx.graph = SimpleGraph::from_edges(k * m, edges);
  return fx;
}

}  // namespace

TEST_CASE("pair_density") {
  auto g = complete_graph(4);
  CHECK(pair_density(g, {0, 1}, {2, 3}) == Ratio::of(1, 1));
  CHECK(pair_density(SimpleGraph(4), {0, 1}, {2, 3}) == Ratio::of(0, 1));
  CHECK_THROWS_AS(pair_density(g, {0, 1}, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(pair_density(g, {}, {1, 2}), std::invalid_argument);
}

TEST_CASE("regularity_check") {
  SUBCASE("complete pair is regular at any eps") {
    auto g = complete_graph(8);
    auto res = regularity_check(g, {0, 1, 2, 3}, {4, 5, 6, 7}, 0.01, RegularityMode::exhaustive);
    CHECK(res.exhaustive);
    CHECK_FALSE(res.witness_found);
  }
  SUBCASE("empty pair is regular") {
    SimpleGraph g(8);
    auto res = regularity_check(g, {0, 1, 2, 3}, {4, 5, 6, 7}, 0.2, RegularityMode::exhaustive);
    CHECK_FALSE(res.witness_found);
  }
  SUBCASE("edges only between first halves give a witness") {
    std::vector<Edge> edges;
    for (int a = 0; a < 4; ++a)
      for (int b = 8; b < 12; ++b) edges.push_back(make_edge(a, b));
    auto g = SimpleGraph::from_edges(16, edges);
    std::vector<int> A = {0, 1, 2, 3, 4, 5, 6, 7}, B = {8, 9, 10, 11, 12, 13, 14, 15};
    auto res = regularity_check(g, A, B, 0.4, RegularityMode::exhaustive);
    REQUIRE(res.witness_found);
    // a witness is always genuine: re-evaluate it
    const auto& w = *res.witness;
    CHECK(w.x.size() * 10 >= 4 * A.size());
    CHECK(w.y.size() * 10 >= 4 * B.size());
    double dxy = pair_density(g, w.x, w.y).value();
    double dab = pair_density(g, A, B).value();
    CHECK(std::abs(dxy - dab) >= 0.4 - 1e-9);
    CHECK(std::abs(std::abs(dxy - dab) - w.deviation) < 1e-9);
  }
  SUBCASE("sampled witnesses are genuine too") {
    std::vector<Edge> edges;
    for (int a = 0; a < 15; ++a)
      for (int b = 30; b < 45; ++b) edges.push_back(make_edge(a, b));
    auto g = SimpleGraph::from_edges(60, edges);
    std::vector<int> A, B;
    for (int i = 0; i < 30; ++i) A.push_back(i);
    for (int i = 30; i < 60; ++i) B.push_back(i);
    auto res = regularity_check(g, A, B, 0.3, RegularityMode::sampled, 11);
    CHECK_FALSE(res.exhaustive);
    if (res.witness_found) {
      double dev = std::abs(pair_density(g, res.witness->x, res.witness->y).value() -
                            pair_density(g, A, B).value());
      CHECK(dev >= 0.3 - 1e-9);
    }
  }
}

TEST_CASE("density_multiplicity floor boundary") {
  CHECK(density_multiplicity(0.3, 0.3) == 1);    // density exactly beta
  CHECK(density_multiplicity(1.0, 0.3) == 3);
  CHECK(density_multiplicity(0.0, 0.3) == 0);
  CHECK(density_multiplicity(0.25, 0.05) == 5);  // exact multiple
}

TEST_CASE("reduced_multigraph") {
  SUBCASE("all pairs complete") {
    auto fx = cluster_fixture(4, 3, 1.1, 1);
    ReductionParams params{0.05, 0.3, 0.2, 0.9};  // relaxed hierarchy for the quantization check
    auto r = reduced_multigraph(fx.graph, fx.partition, params);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) CHECK(r.graph.multiplicity(i, j) == 3);
  }
  SUBCASE("all pairs empty") {
    ClusterPartition p;
    p.clusters = {{0, 1}, {2, 3}, {4, 5}};
    auto r = reduced_multigraph(SimpleGraph(6), p, ReductionParams{});
    CHECK(r.graph.edge_instances() == 0);
  }
  SUBCASE("density below the floor is dropped") {
    // one cross edge: density 1/4 < d
    auto g = SimpleGraph::from_edges(4, {{0, 2}});
    ClusterPartition p;
    p.clusters = {{0, 1}, {2, 3}};
    auto r = reduced_multigraph(g, p, ReductionParams{0.2, 0.3, 0.5, 0.9});
    CHECK(r.graph.edge_instances() == 0);
  }
  SUBCASE("unbalanced partition is an input error") {
    ClusterPartition p;
    p.clusters = {{0, 1}, {2}};
    CHECK_THROWS_AS(reduced_multigraph(SimpleGraph(3), p, ReductionParams{}), std::invalid_argument);
  }
  SUBCASE("strict params enforce the hierarchy") {
    CHECK_THROWS_AS(ReductionParams::strict(0.1, 0.3, 0.5, 0.9), std::invalid_argument);
    auto ok = ReductionParams::strict(0.0125, 0.05, 0.2, 0.8);
    CHECK(ok.beta == 0.05);
  }
}

TEST_CASE("degree inheritance bounds hold on regular cluster instances") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    int k = 4 + static_cast<int>(seed % 5);          // <= 8
    int m = 6 + static_cast<int>(seed % 7);          // <= 12
    auto fx = cluster_fixture(k, m, 0.75, seed);
    auto params = ReductionParams::strict(0.0125, 0.05, 0.2, 0.8);
    auto reduced = reduced_multigraph(fx.graph, fx.partition, params, seed);
    auto gp = degree_profile(fx.graph);
    auto rp = degree_profile(reduced.graph);
    auto [lo, hi] = degree_inheritance_bounds(gp.min_degree, gp.max_degree, k * m, k, params.beta, params.d);
    CHECK(static_cast<double>(rp.min_degree) >= lo - 1e-9);
    CHECK(static_cast<double>(rp.max_degree) <= hi + 1e-9);
  }
}

TEST_CASE("degree_inheritance_bounds arithmetic") {
  auto [lo, hi] = degree_inheritance_bounds(60, 60, 100, 10, 0.1, 0.01);
  CHECK(lo == doctest::Approx(0.58 * 10 / 0.1));
  CHECK(hi == doctest::Approx(0.62 * 10 / 0.1));
  auto degenerate = degree_inheritance_bounds(60, 60, 100, 10, 0.1, 0.0);
  CHECK(degenerate.first == doctest::Approx(60.0));
  CHECK(degenerate.second == doctest::Approx(60.0));
}

namespace {

// checks the full gadget contract for one t
void check_gadget(int t) {
  auto cycles = split_cycle_gadget(t);
  std::set<Edge> seen;
  std::map<Edge, int> projected;
  for (const auto& c : cycles) {
    REQUIRE(static_cast<int>(c.size()) == 2 * t);
    std::set<int> verts(c.begin(), c.end());
    CHECK(static_cast<int>(verts.size()) == 2 * t);
    for (int v : c) CHECK(v < 2 * t);
    for (std::size_t i = 0; i < c.size(); ++i) {
      Edge e = make_edge(c[i], c[(i + 1) % c.size()]);
      CHECK(seen.insert(e).second);  // edge-disjoint across both cycles
      int pu = e.first % t, pv = e.second % t;
      int diff = std::abs(pu - pv);
      CHECK((diff == 1 || diff == t - 1));  // projects onto a cycle edge
      ++projected[make_edge(pu, pv)];
    }
  }
  REQUIRE(static_cast<int>(projected.size()) == t);
  for (const auto& [e, k] : projected) CHECK(k == 4);
}

}  // namespace

TEST_CASE("split_cycle_gadget") {
  SUBCASE("t=3 matches the closed form") {
    auto cycles = split_cycle_gadget(3);
    CHECK(cycles[0] == std::vector<int>{0, 4, 2, 3, 5, 1});  // a1 b2 a3 b1 b3 a2
    CHECK(cycles[1] == std::vector<int>{0, 2, 1, 3, 4, 5});  // a1 a3 a2 b1 b2 b3
  }
  SUBCASE("t=4 matches the closed form") {
    auto cycles = split_cycle_gadget(4);
    CHECK(cycles[0] == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7});
    CHECK(cycles[1] == std::vector<int>{0, 5, 2, 7, 4, 1, 6, 3});  // a1 b2 a3 b4 b1 a2 b3 a4
  }
  SUBCASE("projection multiplicity for t=5") { check_gadget(5); }
  SUBCASE("full contract for 3 <= t <= 50") {
    for (int t = 3; t <= 50; ++t) check_gadget(t);
  }
  SUBCASE("t < 3 is an input error") { CHECK_THROWS_AS(split_cycle_gadget(2), std::invalid_argument); }
}

TEST_CASE("matchings_from_even_cycle") {
  SUBCASE("C4 alternates") {
    auto ms = matchings_from_even_cycle({0, 1, 2, 3});
    CHECK(ms[0] == std::vector<Edge>{{0, 1}, {2, 3}});
    CHECK(ms[1] == std::vector<Edge>{{1, 2}, {0, 3}});
  }
  SUBCASE("C6 gives two matchings of size 3") {
    auto ms = matchings_from_even_cycle({0, 1, 2, 3, 4, 5});
    CHECK(ms[0].size() == 3);
    CHECK(ms[1].size() == 3);
  }
  SUBCASE("the gadget output for t=3 gives four matchings of size 3") {
    auto cycles = split_cycle_gadget(3);
    int matchings = 0;
    for (const auto& c : cycles) {
      auto ms = matchings_from_even_cycle(c);
      for (const auto& m : ms) {
        CHECK(m.size() == 3);
        std::set<int> verts;
        for (auto [u, v] : m) {
          CHECK(verts.insert(u).second);
          CHECK(verts.insert(v).second);
        }
        ++matchings;
      }
    }
    CHECK(matchings == 4);
  }
  SUBCASE("odd length is an input error") {
    CHECK_THROWS_AS(matchings_from_even_cycle({0, 1, 2}), std::invalid_argument);
  }
}

TEST_CASE("random_tripartition") {
  SUBCASE("gamma = 1/3 assigns every edge") {
    auto g = random_gnp(30, 0.5, 2);
    auto parts = random_tripartition(g, 1.0 / 3.0, 9);
    std::size_t total = parts[0].edge_count() + parts[1].edge_count() + parts[2].edge_count();
    CHECK(total == g.edge_count());
  }
  SUBCASE("tiny gamma keeps almost everything out") {
    auto g = random_gnp(20, 0.5, 2);
    auto parts = random_tripartition(g, 1e-9, 3);
    CHECK(parts[0].edge_count() + parts[1].edge_count() + parts[2].edge_count() == 0);
  }
  SUBCASE("gamma above 1/3 is an input error") {
    CHECK_THROWS_AS(random_tripartition(complete_graph(4), 0.4, 0), std::invalid_argument);
  }
  SUBCASE("parts are edge-disjoint subgraphs of g for every seed") {
    auto g = random_gnp(40, 0.5, 17);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto parts = random_tripartition(g, 0.2, seed);
      std::set<Edge> seen;
      for (const auto& h : parts)
        for (const auto& e : h.edges()) {
          CHECK(g.has_edge(e.first, e.second));
          CHECK(seen.insert(e).second);
        }
    }
  }
  SUBCASE("per-vertex concentration within the tail threshold") {
    auto g = random_gnp(400, 0.5, 23);
    int good = 0;
    const int trials = 10;
    for (std::uint64_t seed = 0; seed < trials; ++seed) {
      auto parts = random_tripartition(g, 0.1, seed);
      bool ok = true;
      for (int v = 0; v < g.vertex_count() && ok; ++v) {
        double mean = 0.1 * g.degree(v);
        double tol = 3.0 * std::sqrt(mean * std::log(static_cast<double>(g.vertex_count())));
        for (const auto& h : parts)
          if (std::abs(h.degree(v) - mean) > tol) ok = false;
      }
      if (ok) ++good;
    }
    CHECK(good >= trials - 1);
  }
}

TEST_CASE("chernoff_tail") {
  CHECK(chernoff_tail(0, 10) == doctest::Approx(2.0));
  CHECK(chernoff_tail(10, 10) == doctest::Approx(2.0 * std::exp(-10.0 / 3.0)));
  CHECK(chernoff_tail(30, 100) == doctest::Approx(2.0 * std::exp(-3.0)));
  CHECK_THROWS_AS(chernoff_tail(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("cluster partition json round trip") {
  ClusterPartition p;
  p.clusters = {{0, 2}, {1, 3}};
  p.exceptional = {4};
  auto q = ClusterPartition::from_json(p.to_json());
  CHECK(q.clusters == p.clusters);
  CHECK(q.exceptional == p.exceptional);
  q.validate(5);
  CHECK_THROWS_AS(q.validate(6), std::invalid_argument);
}
