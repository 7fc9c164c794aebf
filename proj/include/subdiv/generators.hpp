#pragma once

#include "subdiv/graph.hpp"
#include "subdiv/rng.hpp"

namespace subdiv {

// Random d-regular graph via the pairing (configuration) model: points are
// matched uniformly, then loops and parallel pairs are removed by random
// degree-preserving edge swaps; if a repair pass stalls the whole pairing is
// redrawn. Requires n*d even, 0 <= d < n.
Graph random_regular(int n, int d, Rng& rng);

// Paley graph on q vertices: q a prime with q % 4 == 1, x ~ y iff x-y is a
// nonzero quadratic residue mod q. (q-1)/2-regular.
Graph paley_graph(int q);

// Erdos-Renyi G(n, p), each pair independently with probability p.
Graph gnp(int n, double p, Rng& rng);

Graph complete_graph(int n);
Graph cycle_graph(int n);
Graph petersen_graph();

// Two disjoint cliques K_{n/2}; n must be even. Base graph for the randomly
// perturbed ensemble.
Graph two_cliques(int n);

// Union on an identical vertex set; throws when vertex counts differ.
// Shared edges are kept once.
Graph union_graphs(const Graph& a, const Graph& b);

}  // namespace subdiv
