#include <stdexcept>

#include "doctest.h"
#include "subdiv/generators.hpp"
#include "subdiv/matching.hpp"
#include "subdiv/partition.hpp"
#include "subdiv/rng.hpp"

using namespace subdiv;

TEST_CASE("partition respects sizes and inherits degrees on a dense host") {
  Rng rng(2);
  Graph g = complete_graph(300);
  VertexPartition vp = partition_with_inheritance(g, {0.5, 0.25, 0.25}, 0.2, rng, 64);
  CHECK(vp.count() == 3);
  int total = 0;
  for (const auto& part : vp.parts) total += static_cast<int>(part.size());
  CHECK(total == 300);
  CHECK(vp.parts[0].size() >= 120);
  CHECK(vp.parts[0].size() <= 180);
  CHECK(partition_degrees_ok(g, vp, 0.2));
  for (int v = 0; v < 300; ++v) CHECK(vp.part_of[v] < 3);
}

TEST_CASE("partition throws once rejection sampling is exhausted") {
  Rng rng(2);
  // p*d = 1 with gamma 0.2 leaves the per-vertex window empty, so every
  // sample is rejected.
  Graph g = cycle_graph(200);
  CHECK_THROWS_AS(partition_with_inheritance(g, {0.5, 0.5}, 0.2, rng, 8),
                  std::runtime_error);
  // The sizes-only variant has no degree window and succeeds.
  VertexPartition vp = partition_with_inheritance(g, {0.5, 0.5}, 0.2, rng, 64, false);
  CHECK(vp.count() == 2);
}

TEST_CASE("fixed size partition is exact") {
  Rng rng(7);
  Graph g = complete_graph(40);
  VertexPartition vp = partition_fixed_sizes(g, {10, 12, 18}, 0.3, rng, 64);
  CHECK(vp.parts[0].size() == 10);
  CHECK(vp.parts[1].size() == 12);
  CHECK(vp.parts[2].size() == 18);
}

TEST_CASE("hopcroft karp finds maximum matchings and hall violators") {
  // Perfect matching on a 3x3 cycle-ish pattern.
  MatchingResult perfect = max_bipartite_matching(3, 3, {{0, 1}, {1, 2}, {2, 0}});
  CHECK(perfect.size == 3);
  CHECK(perfect.left_saturated(3));

  // Left slots 0 and 1 both see only right slot 0.
  std::vector<std::vector<int>> adj = {{0}, {0}, {1}};
  MatchingResult starved = max_bipartite_matching(3, 2, adj);
  CHECK(starved.size == 2);
  CHECK(!starved.left_saturated(3));
  REQUIRE(!starved.hall_violator.empty());
  // The violator really violates Hall's condition.
  std::vector<char> seen(2, 0);
  int neighborhood = 0;
  for (int l : starved.hall_violator)
    for (int r : adj[l])
      if (!seen[r]) {
        seen[r] = 1;
        ++neighborhood;
      }
  CHECK(neighborhood < static_cast<int>(starved.hall_violator.size()));
}

TEST_CASE("graph matching uses only edges between the two sets") {
  Graph g = cycle_graph(6);
  std::vector<int> left = {0, 2, 4}, right = {1, 3, 5};
  MatchingResult mr = bipartite_graph_matching(g, left, right);
  CHECK(mr.size == 3);
  for (int slot = 0; slot < 3; ++slot)
    CHECK(g.has_edge(left[slot], right[mr.match_left[slot]]));
  MatchingResult none = bipartite_graph_matching(g, {0, 2}, {4});
  CHECK(none.size == 0);
}
