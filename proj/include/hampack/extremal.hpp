#pragma once

#include <vector>

#include "hampack/graph.hpp"
#include "hampack/reduction.hpp"

namespace hampack {

// Parameters of the tight construction: an independent set of size n - Delta
// completely joined to a (delta + Delta - n)-regular graph on Delta vertices.
struct ExtremalParams {
  int n = 0;
  int min_degree = 0;
  int max_degree = 0;  // the chosen even Delta

  // Even Delta in [delta, n-1] closest to (n + sqrt(n(2 delta - n))) / 2,
  // ties to the smaller value. Requires n/2 < delta <= n-2.
  static ExtremalParams choose(int n, int delta);
};

// Independent set A of size 2m joined completely to a perfect matching B of
// m+1 edges: n = 4m+2, min degree 2m+1, and every Hamilton cycle spends at
// least two B-edges, capping edge-disjoint packings at floor((m+1)/2).
SimpleGraph intro_construction(int m);

SimpleGraph upper_construction(const ExtremalParams& p);
SimpleGraph upper_construction(int n, int delta);

// (delta + 2 + sqrt(n(2 delta - n))) / 4; requires n/2 < delta < n.
double upper_bound_value(long long n, long long delta);

// (delta - alpha n + sqrt(n(2 delta - n))) / 4; requires delta >= (1/2+alpha)n
// with alpha > 0.
double lower_bound_value(long long n, long long delta, double alpha);

// r-factor cap Delta(delta + Delta - n) / (2 Delta - n) of the construction;
// the Hamilton-packing cap is half of it. Requires Delta > n/2.
Ratio r_factor_cap(long long n, long long delta, long long Delta);

// All Hamilton cycles up to rotation and reflection (order[0] = 0 and
// order[1] < order[n-1]); limit 0 means unlimited.
std::vector<HamiltonCycle> enumerate_hamilton_cycles(const SimpleGraph& g, std::size_t limit = 0);

struct PackingOracleResult {
  int count = 0;
  std::vector<HamiltonCycle> witnesses;
};

// Exact maximum number of edge-disjoint Hamilton cycles by enumeration plus
// depth-first set packing with an edge-count bound. Exponential; refuses
// above the vertex cap.
PackingOracleResult brute_force_max_packing(const SimpleGraph& g, int vertex_cap = 12);

}  // namespace hampack
