#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hampack {

// Undirected edge, always stored as (min, max).
using Edge = std::pair<int, int>;

inline Edge make_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

// Deterministic PRNG. The generation algorithm is fixed here (mt19937_64 plus
// explicit uniform mappings) so seeded runs are byte-reproducible across
// platforms; std::uniform_*_distribution is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n).
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(next() % n); }

  int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::size_t>(hi - lo + 1))); }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 eng_;
};

// Derives independent seed streams from one user seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Simple undirected graph on dense 0-based vertex ids. No loops, no parallel
// edges. Adjacency lists are kept sorted; values are freely copyable and safe
// to share read-only across threads.
class SimpleGraph {
 public:
  SimpleGraph() = default;
  explicit SimpleGraph(int n);

  // Bulk constructor; validates and sorts once.
  static SimpleGraph from_edges(int n, const std::vector<Edge>& edges);

  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return m_; }
  bool has_edge(int u, int v) const;
  void add_edge(int u, int v);
  bool remove_edge(int u, int v);
  int degree(int v) const;
  const std::vector<int>& neighbors(int v) const;
  std::vector<Edge> edges() const;  // lexicographic on (min, max)

  bool operator==(const SimpleGraph& other) const;

 private:
  void check_vertex(int v) const;

  int n_ = 0;
  std::size_t m_ = 0;
  std::vector<std::vector<int>> adj_;
};

// Loopless multigraph; degree counts multiplicity.
class Multigraph {
 public:
  Multigraph() = default;
  explicit Multigraph(int n);
  static Multigraph from_simple(const SimpleGraph& g);

  int vertex_count() const { return n_; }
  std::size_t edge_instances() const { return m_; }
  int multiplicity(int u, int v) const;
  void add_edge(int u, int v, int count = 1);
  void remove_edge(int u, int v, int count = 1);
  int degree(int v) const;
  const std::map<Edge, int>& edge_multiplicities() const { return mult_; }
  std::vector<Edge> support() const;
  // True iff all degrees equal; writes the common degree when requested.
  bool is_regular(int* r = nullptr) const;

  bool operator==(const Multigraph& other) const;

 private:
  void check_vertex(int v) const;

  int n_ = 0;
  std::size_t m_ = 0;
  std::vector<int> deg_;
  std::map<Edge, int> mult_;
};

// A direction assignment for every edge instance of a loopless multigraph.
// Doubles as the directed-graph type: a digraph with arcs u->v and v->u is an
// orientation of the multigraph with two parallel edges between u and v.
class Orientation {
 public:
  Orientation() = default;
  Orientation(int n, std::vector<std::pair<int, int>> arcs);

  int vertex_count() const { return n_; }
  const std::vector<std::pair<int, int>>& arcs() const { return arcs_; }
  int out_degree(int v) const;
  int in_degree(int v) const;
  const std::vector<int>& out_neighbors(int v) const;
  const std::vector<int>& in_neighbors(int v) const;
  bool has_arc(int u, int v) const;
  Multigraph underlying() const;

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> arcs_;
  std::vector<std::vector<int>> out_, in_;  // sorted, with repetition
};

// A 2-factor: vertex-disjoint cycles covering the host's vertex set. Cycles of
// length 2 are meaningful only against multigraph hosts (parallel edge pairs).
struct CycleCover {
  std::vector<std::vector<int>> cycles;

  std::size_t cycle_count() const { return cycles.size(); }
  std::size_t vertex_total() const;
  // All cycle edges including the closing edge; a 2-cycle contributes its pair twice.
  std::vector<Edge> edges() const;
  bool covers_exactly(int n) const;
};

struct HamiltonCycle {
  std::vector<int> order;

  std::vector<Edge> edges() const;
  bool operator==(const HamiltonCycle& other) const = default;
};

struct DegreeProfile {
  int min_degree = 0;
  int max_degree = 0;
  std::vector<int> degrees;
};

DegreeProfile degree_profile(const SimpleGraph& g);
DegreeProfile degree_profile(const Multigraph& g);

SimpleGraph random_gnp(int n, double p, std::uint64_t seed);
SimpleGraph complete_graph(int n);
SimpleGraph cycle_graph(int n);
SimpleGraph path_graph(int n);
// Circulant on n vertices; offsets in [1, n/2], offset n/2 (even n) is a chord matching.
SimpleGraph circulant_graph(int n, const std::vector<int>& offsets);

bool verify_two_factor(const SimpleGraph& g, const CycleCover& f);
bool verify_two_factor(const Multigraph& g, const CycleCover& f);

struct PackingCheck {
  bool valid = false;
  int count = 0;
  std::string violation;  // empty when valid
};

// Checks that every cycle is Hamiltonian in g and that cycles are pairwise
// edge-disjoint; reports the first violation found.
PackingCheck verify_packing(const SimpleGraph& g, const std::vector<HamiltonCycle>& cycles);

// Splits a 2-regular graph into its cycles.
CycleCover cycles_of_two_regular(const SimpleGraph& g);

// Edge-list text format: header "n <count>", then one "u v" line per edge.
// Serialization is canonical: ASCII, LF endings, single spaces, sorted edges.
SimpleGraph parse_graph(std::string_view text);
std::string serialize_graph(const SimpleGraph& g);

}  // namespace hampack
