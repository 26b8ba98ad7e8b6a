#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hampack/graph.hpp"

namespace hampack {

struct Ratio {
  long long num = 0;
  long long den = 1;

  static Ratio of(long long num, long long den);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Ratio& other) const = default;
};

// e(A, B) / (|A| |B|), exact. Sets must be disjoint and non-empty.
Ratio pair_density(const SimpleGraph& g, const std::vector<int>& a, const std::vector<int>& b);

enum class RegularityMode { exhaustive, sampled, automatic };

struct RegularityWitness {
  std::vector<int> x, y;
  double deviation = 0.0;
};

// A returned witness is always genuine: |X| >= eps|A|, |Y| >= eps|B| and
// |d(X,Y) - d(A,B)| >= eps. "No witness found" proves regularity only in
// exhaustive mode.
struct RegularityResult {
  bool witness_found = false;
  bool exhaustive = false;
  std::optional<RegularityWitness> witness;
};

RegularityResult regularity_check(const SimpleGraph& g, const std::vector<int>& a, const std::vector<int>& b,
                                  double eps, RegularityMode mode = RegularityMode::automatic,
                                  std::uint64_t seed = 0, int samples = 10000);

struct ClusterPartition {
  std::vector<std::vector<int>> clusters;  // equal sizes
  std::vector<int> exceptional;

  void validate(int n) const;  // throws std::invalid_argument
  std::string to_json() const;
  static ClusterPartition from_json(std::string_view text);
};

// eps: regularity tolerance, beta: density quantum, d: density floor,
// gamma: tripartition fraction. The strict() factory enforces the intended
// hierarchy 0 < eps << beta << d << gamma < 1 with at least 4x separation;
// plain aggregate construction is allowed for small demonstrations where the
// hierarchy is deliberately relaxed.
struct ReductionParams {
  double eps = 0.0125;
  double beta = 0.05;
  double d = 0.2;
  double gamma = 0.8;

  static ReductionParams strict(double eps, double beta, double d, double gamma);
};

// floor(density / beta) with a guard against floating-point boundary dust.
int density_multiplicity(double density, double beta);

struct ReducedMultigraph {
  Multigraph graph;  // on cluster ids; multiplicity(i, j) is the quantized density
};

// Cluster-level multigraph: a regular pair of density >= d contributes
// floor(density/beta) parallel edges; pairs with a regularity witness or with
// density below the floor contribute none.
ReducedMultigraph reduced_multigraph(const SimpleGraph& g, const ClusterPartition& partition,
                                     const ReductionParams& params, std::uint64_t seed = 0);

// Closed-form degree inheritance: min degree of the reduced multigraph is at
// least (delta/n - 2d) k/beta, max degree at most (Delta/n + 2d) k/beta.
std::pair<double, double> degree_inheritance_bounds(double delta_g, double Delta_g, double n, double k,
                                                    double beta, double d);

// Splits a t-cycle into two edge-disjoint 2t-cycles over doubled vertices.
// Vertex i of the input maps to a_i = i and b_i = t + i; projecting id % t
// sends every output edge onto an input cycle edge, four per input edge.
std::array<std::vector<int>, 2> split_cycle_gadget(int t);

// Alternate-edge split of an even cycle into two perfect matchings on V(c).
std::array<std::vector<Edge>, 2> matchings_from_even_cycle(const std::vector<int>& cycle);

// Each edge lands in each part independently with probability gamma, in none
// with probability 1 - 3*gamma. Requires 0 < gamma <= 1/3.
std::array<SimpleGraph, 3> random_tripartition(const SimpleGraph& g, double gamma, std::uint64_t seed);

// 2 exp(-t^2 / (3 mean)).
double chernoff_tail(double t, double mean);

}  // namespace hampack
