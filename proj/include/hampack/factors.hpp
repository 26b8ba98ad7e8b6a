#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hampack/graph.hpp"

namespace hampack {

// Exact degree targets, one per vertex.
struct DegreeSpec {
  std::vector<int> target;

  static DegreeSpec uniform(int n, int r);
  bool is_uniform(int* r = nullptr) const;
};

// Certificate that no r-factor exists: a partition (S, T, U) of the vertex
// set violating sum_{v in T} d(v) - e(S,T) + r(|S| - |T|) >= q(U), where q(U)
// counts components C of G[U] with e(C,T) + r|C| odd.
struct TuttePartition {
  std::vector<int> S, T, U;
  int r = 0;
};

struct TutteEvaluation {
  long long lhs = 0;              // sum_T d(v) - e(S,T) + r(|S|-|T|)
  long long odd_components = 0;   // q(U)
  bool violated() const { return lhs < odd_components; }
};

TutteEvaluation evaluate_tutte(const SimpleGraph& g, const TuttePartition& p);

struct FactorResult {
  bool feasible = false;
  SimpleGraph factor;                        // spanning subgraph when feasible
  std::optional<TuttePartition> certificate; // attached at oracle scale for uniform specs
};

// Maximum cardinality matching as a set of disjoint edges.
std::vector<Edge> max_matching(const SimpleGraph& g);

// Exact degree-constrained spanning subgraph via the vertex-gadget reduction
// to perfect matching. Throws std::invalid_argument when spec(v) > deg(v) or
// the target sum is odd.
FactorResult f_factor(const SimpleGraph& g, const DegreeSpec& spec);

struct TutteOracleResult {
  bool feasible = true;
  std::optional<TuttePartition> witness;
};

// Exhaustive search over all 3^n partitions (S, T, U); refuses above the cap.
TutteOracleResult tutte_oracle(const SimpleGraph& g, int r, int vertex_cap = 9);

// Largest even r with r <= (delta + sqrt(ell n (2 delta - ell n))) / 2, the
// degree guaranteed in any loopless multigraph with min degree delta and at
// most ell parallel edges per pair. Requires 2*delta >= ell*n.
int guaranteed_even_r(long long n, long long min_degree, long long ell);

// Near-regular variant: largest even r <= delta - xi*ell*n, valid for
// 0 < xi < 1/9 and (1/2 + xi) ell n <= Delta <= delta + xi^2 ell n.
int guaranteed_even_r_nearreg(long long n, long long min_degree, long long max_degree, double xi,
                              long long ell);

// Orients every edge instance so in-degree = out-degree = degree/2. Requires
// all degrees even.
Orientation euler_orientation(const Multigraph& g);

// One 2-factor of an even-regular multigraph (Euler orientation, then a
// perfect matching in the out/in split). Parallel pairs may appear as
// 2-cycles; simple hosts always yield cycles of length >= 3.
CycleCover petersen_two_factor(const Multigraph& g, std::uint64_t seed = 0);

// Full decomposition into r/2 two-factors partitioning the edge multiset.
std::vector<CycleCover> petersen_decompose(const Multigraph& g, std::uint64_t seed = 0);

struct EvenFactorResult {
  int r = 0;
  SimpleGraph factor;
};

// Largest even r such that g has an r-factor, with a witness. Monotonicity
// over even r (an r-factor minus a 2-factor is an (r-2)-factor) justifies the
// binary search.
EvenFactorResult max_even_factor(const SimpleGraph& g);

// Spanning subgraph of a bipartite host attaining exact degree targets, found
// by max-flow; nullopt when infeasible. Throws when target sums differ across
// sides or an edge does not cross the bipartition.
std::optional<SimpleGraph> bipartite_prescribed_degrees(const SimpleGraph& host,
                                                        const std::vector<int>& left,
                                                        const std::vector<int>& right,
                                                        const std::vector<int>& target);

}  // namespace hampack
