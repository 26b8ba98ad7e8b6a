#pragma once

#include <vector>

namespace hampack {

// Maximum cardinality matching in a general graph via Edmonds' blossom
// shrinking, seeded with a greedy matching. Returns mate[v] (-1 if exposed).
std::vector<int> maximum_matching_mates(int n, const std::vector<std::vector<int>>& adj);

// Hopcroft-Karp for bipartite graphs. adj_left[u] lists right-side ids in
// [0, nr). Returns match_left[u] (-1 if exposed).
std::vector<int> bipartite_matching(int nl, int nr, const std::vector<std::vector<int>>& adj_left);

}  // namespace hampack
