#pragma once

#include <vector>

#include "subdiv/graph.hpp"
#include "subdiv/rng.hpp"

namespace subdiv {

struct VertexPartition {
  std::vector<std::vector<int>> parts;  // sorted vertex lists
  std::vector<int> part_of;             // vertex -> part index

  int count() const { return static_cast<int>(parts.size()); }
};

// Random partition with degree inheritance, by rejection sampling: vertices
// are assigned independently with the given probabilities, and the sample is
// accepted once every part size lies within (1 +- gamma) of its target
// p_i * n and, when check_degrees is set, every vertex v sees each part with
// d(v, X_i) within (1 +- gamma) of p_i * d(v). Throws std::runtime_error
// when max_retries samples were all rejected; at desk scale that is the
// expected signal that the requested split is outside the concentration
// regime (e.g. p_i * d too small for any integer to land in the window).
VertexPartition partition_with_inheritance(const Graph& g, const std::vector<double>& probabilities,
                                           double gamma, Rng& rng, int max_retries,
                                           bool check_degrees = true);

// Fixed-size variant: a uniform split with exact part sizes (they must sum
// to n). Size bounds hold by construction; degree bounds are still sampled
// against fractions size_i / n when check_degrees is set.
VertexPartition partition_fixed_sizes(const Graph& g, const std::vector<int>& sizes, double gamma,
                                      Rng& rng, int max_retries, bool check_degrees = true);

// True when the partition satisfies the (1 +- gamma) degree-inheritance
// bounds for every vertex and part, with part fractions taken from the
// actual part sizes.
bool partition_degrees_ok(const Graph& g, const VertexPartition& vp, double gamma);

}  // namespace subdiv
