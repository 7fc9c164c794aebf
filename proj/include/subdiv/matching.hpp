#pragma once

#include <vector>

#include "subdiv/graph.hpp"

namespace subdiv {

struct MatchingResult {
  std::vector<int> match_left;   // left slot -> right slot, -1 when unmatched
  std::vector<int> match_right;  // right slot -> left slot, -1 when unmatched
  int size = 0;

  // When the left side is not saturated this holds a Hall violator: left
  // slots S with |N(S)| < |S| (Koenig witness from the final layering).
  std::vector<int> hall_violator;

  bool left_saturated(int n_left) const { return size == n_left; }
};

// Hopcroft-Karp maximum matching on an explicit bipartite adjacency
// (adj[l] = right slots adjacent to left slot l).
MatchingResult max_bipartite_matching(int n_left, int n_right,
                                      const std::vector<std::vector<int>>& adj);

// Matching between two disjoint vertex sets of g, using the edges of g
// between them. Slots refer to positions in `left` / `right`.
MatchingResult bipartite_graph_matching(const Graph& g, const std::vector<int>& left,
                                        const std::vector<int>& right);

}  // namespace subdiv
