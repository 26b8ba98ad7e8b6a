#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hampack/graph.hpp"

namespace hampack {

enum class ReserveTag { original, recycled };

// Mutable edge set fueling rotation-extension. Disjoint from the working
// 2-factor/path edges at all times; single-owner while a conversion runs.
class ReservePool {
 public:
  ReservePool() = default;
  explicit ReservePool(int n);
  ReservePool(int n, const std::vector<Edge>& edges);  // tagged original

  int vertex_count() const { return n_; }
  std::size_t size() const { return edges_.size(); }
  bool contains(int u, int v) const;
  void insert(int u, int v, ReserveTag tag);  // throws if already present
  void consume(int u, int v);                 // throws if absent
  const std::set<int>& neighbors(int v) const;
  ReserveTag tag(int u, int v) const;
  std::vector<Edge> edges() const;

 private:
  int n_ = 0;
  std::vector<std::set<int>> adj_;
  std::map<Edge, ReserveTag> edges_;
};

struct SwapOp {
  enum Kind { add_edge, remove_edge };
  Kind kind = add_edge;
  Edge edge{};

  bool operator==(const SwapOp& other) const = default;
};

struct SwapLog {
  std::vector<SwapOp> ops;

  std::string to_jsonl() const;
  static SwapLog from_jsonl(std::string_view text);
};

// Applies the log to the 2-factor's edge set; throws on any inconsistent
// add/remove. The result must equal the output cycle's edge set.
std::set<Edge> replay_swaps(const CycleCover& from, const SwapLog& log);

// A path under surgery plus the untouched cycles of the working 2-factor.
struct PathState {
  std::vector<int> path;                 // endpoints path.front() / path.back()
  std::vector<std::vector<int>> cycles;  // remaining cycles
};

// Removes one edge of the named cycle; the cycle becomes the path, all other
// cycles are untouched. Pure: pool bookkeeping belongs to the caller.
PathState break_cycle(const CycleCover& f, std::size_t cycle_index, Edge broken);

struct MergeResult {
  bool merged = false;
  Edge used{};       // reserve edge consumed into the path
  Edge displaced{};  // cycle edge recycled into the pool
};

// Absorbs one whole cycle into the path via a reserve edge from an endpoint,
// preferring the largest remaining cycle (ties to the smallest cycle id).
// No-move is a normal outcome. Reserve edges internal to the path never
// qualify.
MergeResult extend_merge(PathState& p, ReservePool& pool, SwapLog* log = nullptr);

struct CloseResult {
  bool closed = false;
  std::vector<int> cycle;
  int added_edges = 0;  // reserve edges consumed, at most 5
};

// Closes the path into a cycle on exactly its vertex set using at most 5
// reserve edges (direct closure, single rotations, crossing double rotations,
// then a bounded deeper search). When side sets are given, rotations at the
// back endpoint only target vertices of side_u whose path neighbours lie in
// side_v, and symmetrically at the front.
CloseResult close_path(PathState& p, ReservePool& pool, SwapLog* log = nullptr);
CloseResult close_path(PathState& p, const std::vector<int>& side_u, const std::vector<int>& side_v,
                       ReservePool& pool, SwapLog* log = nullptr);

struct ConversionResult {
  bool success = false;
  HamiltonCycle cycle;
  SwapLog log;
  int edges_changed = 0;  // |E(C) xor E(F)|
  std::string failure;
};

// 25 n / (log2 n)^(1/5), floored at 50 so tiny instances are not budget-bound.
int default_swap_budget(int n);

// Repeated break / merge / close until a single spanning cycle remains.
// Consumed reserve edges leave the pool and displaced factor edges enter it;
// on failure the pool is restored to its entry state and the partial log is
// returned. `variant` perturbs deterministic tie-breaking for retries.
ConversionResult two_factor_to_hamilton(const CycleCover& f, ReservePool& pool, int budget = -1,
                                        int variant = 0);

struct DigraphHamiltonResult {
  bool degree_condition = false;  // min in/out degree >= n/2
  std::optional<HamiltonCycle> cycle;
};

// Directed Hamilton finder: insertion heuristic plus an exhaustive fallback
// up to `exhaustive_cap` vertices. Dense digraphs with min in/out degree at
// least n/2 always contain a cycle, so at oracle scale the finder cannot miss.
DigraphHamiltonResult dense_digraph_hamilton(const Orientation& d, int exhaustive_cap = 12);

}  // namespace hampack
