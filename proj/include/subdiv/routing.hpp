#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subdiv/extendable.hpp"
#include "subdiv/graph.hpp"
#include "subdiv/params.hpp"
#include "subdiv/rng.hpp"

namespace subdiv {

struct Comparator {
  int lo = 0, hi = 0;   // wire indices, lo < hi
  bool min_to_lo = true;  // ascending comparator when true
};

struct ComparatorNetwork {
  int width = 0;  // power of two (padded), or 1 for the empty network
  std::vector<std::vector<Comparator>> layers;
};

// Batcher bitonic sorting network on the given width padded to a power of
// two. Every wire appears in exactly one comparator of every layer.
ComparatorNetwork build_comparator_network(int width);

// Runs the comparators over concrete values; returns the output wires.
std::vector<int> apply_network(const ComparatorNetwork& net, std::vector<int> values);

// Exhaustive 0/1 check (valid proxy for all inputs); width <= 20.
bool network_sorts_all_01(const ComparatorNetwork& net);

// One comparator realized inside the host: a fresh tail walked from each of
// the two wire positions to the switch inputs u_a/u_b, then a 4-cycle
// u_a-port_a-u_b-port_b. Both the straight and the crossed port assignment
// give equal-length vertex-disjoint path pairs covering the whole gadget.
struct RouterGadget {
  int wire_a = 0, wire_b = 0;
  bool min_to_lo = true;
  std::vector<int> tail_a, tail_b;  // fresh vertices, last one is the switch input
  int port_a = -1, port_b = -1;     // new positions of wire_a / wire_b
};

struct RouterLayer {
  int stage_length = 0;  // edges added per wire in this layer (uniform)
  std::vector<RouterGadget> gadgets;
};

// An embedded permutation reservoir: terminal-to-terminal paths of one fixed
// length realizing any bijection between the terminal lists, together
// covering every reservoir vertex exactly once.
struct SortingRouter {
  int real_width = 0;  // caller wires; the rest are embedded padding
  int width = 0;       // power of two
  int path_length = 0;
  std::vector<int> terminals_in, terminals_out;  // size = width
  std::vector<RouterLayer> layers;
  std::vector<std::vector<int>> hookups;  // per wire: interiors to terminals_out

  std::vector<int> vertices() const;  // each router vertex exactly once
  int vertex_count() const { return width * (path_length + 1); }
};

struct EmbedOptions {
  int min_stage_length = 2;
  int max_stage_length = 6;
  int min_hookup = 2;
  int max_hookup = 8;
  int gadget_retries = 300;
};

struct EmbedResult {
  std::optional<SortingRouter> router;
  std::string note;
};

// Embeds the network into the host around prescribed terminal lists (already
// in the state). Consumes free vertices; pads with auto-allocated filler
// terminals up to the network width. All committed paths and switch edges
// are added to the state.
EmbedResult embed_router(ExtendableState& state, const std::vector<int>& terminals_in,
                         const std::vector<int>& terminals_out, const ComparatorNetwork& net,
                         Rng& rng, const EmbedOptions& opts = {});

// Computes switch settings by sorting the destination indices and returns
// the resulting path family, one path per wire (padding wires route to their
// own terminal). Verifies length uniformity, pairwise disjointness, exact
// coverage, and endpoint correctness before returning.
std::vector<std::vector<int>> route(const SortingRouter& router, const std::vector<int>& sigma);

std::string router_to_json(const SortingRouter& router);
SortingRouter router_from_json(const std::string& text);

// Integer branch-length plans for the two spanning constructions.
struct LengthPlan {
  enum class Mode { unbalanced, balanced };
  Mode mode = Mode::unbalanced;
  std::vector<std::pair<int, int>> pair_keys;          // 0-based, lexicographic
  std::vector<long long> ell;                          // unbalanced lengths
  std::vector<std::pair<long long, long long>> q;      // balanced (q_ij, q_ji)
  std::vector<int> loop_counts;                        // balanced loop path counts
  long long M = 0;                                     // loop segment length
  int k = 0;
  int m_prime = 0;
  long long total = 0;  // sum of all planned lengths
};

// Lengths for every branch pair except the reserved one, each at least the
// scaled-log floor, with total pinned inside the prescribed window.
LengthPlan plan_lengths_unbalanced(int n, int t, const DeskScaleParams& params);

// Balanced q-lengths: near-equal loop counts, the y / y+M +-1 scheme, and
// the exact vertex-count identity. Throws with the violated inequality when
// the instance is infeasible.
LengthPlan plan_lengths_balanced(int n, int t, int k, int router_len, int m_prime, int m,
                                 const DeskScaleParams& params);

struct MatchingChain {
  std::vector<std::vector<std::pair<int, int>>> matchings;  // per consecutive layer pair
  std::vector<std::vector<int>> paths;                      // disjoint, uniform length
  std::vector<int> composition;                             // in slot -> out slot
};

// Perfect matchings between consecutive layers composed into disjoint paths.
std::optional<MatchingChain> matching_chain(const Graph& g, const std::vector<int>& v_in,
                                            const std::vector<std::vector<int>>& layers,
                                            const std::vector<int>& v_out,
                                            std::string* fail_note = nullptr);

// Terminal bijection threading each pair's loop block between its branch
// wires: v' -> b_1 -> ... -> b_|J| -> u'. Slots 0..B-1 are the pair wires,
// the rest the loop wires in block order.
std::vector<int> assemble_sigma(const std::vector<int>& j_sizes, int m_prime);

}  // namespace subdiv
