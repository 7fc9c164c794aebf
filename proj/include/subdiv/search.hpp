#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subdiv/graph.hpp"
#include "subdiv/rng.hpp"

namespace subdiv {

// t disjoint stars inside the allowed set, each with a centre and
// `leaves_per_center` leaves. Centres are chosen greedily by maximum
// residual degree into the remaining allowed pool, ties to smaller index.
struct StarSystem {
  std::vector<int> centers;
  std::vector<std::vector<int>> leaves;
};

std::optional<StarSystem> greedy_stars(const Graph& g, const std::vector<char>& allowed, int t,
                                       int leaves_per_center);

// Deepest stack observed during a full depth-first sweep of the allowed set,
// best over `restarts` randomized sweeps. When `certified_m` >= 1 the
// restriction is known m-joined, which forces the deepest stack to hold at
// least |allowed| - 2m + 1 vertices; a shorter result throws, since it can
// only mean the certificate was wrong.
std::vector<int> dfs_long_path(const Graph& g, const std::vector<char>& allowed, Rng& rng,
                               int certified_m = 0, int restarts = 4);

struct HamiltonOptions {
  int restarts = 30;
  long long rotations_per_vertex = 50;  // rotation budget = this * |allowed|
};

// Hamilton path with both endpoints prescribed, by rotation-extension: grow a
// path from `a` over allowed \ {b}, rotating the free end when stuck, then
// close onto `b`. nullopt when every restart exhausts its rotation budget.
std::optional<std::vector<int>> hamilton_path(const Graph& g, const std::vector<char>& allowed,
                                              int a, int b, Rng& rng,
                                              const HamiltonOptions& opts = {});

struct ThreePathLink {
  int x = -1, y = -1;       // interior pair: v-x-y-v' is the found path
  bool full_samples = false;  // both candidate pools reached the requested size
  std::string note;
};

// Length-3 link between v and v': sample up to `sample_size` free neighbours
// on each side and scan for a crossing edge.
std::optional<ThreePathLink> three_path_link(const Graph& g, int v, int v_prime,
                                             const std::vector<char>& pool_free, int sample_size,
                                             Rng& rng, std::string* fail_note = nullptr);

}  // namespace subdiv
