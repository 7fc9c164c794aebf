#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subdiv/graph.hpp"
#include "subdiv/params.hpp"
#include "subdiv/rng.hpp"
#include "subdiv/subdivision.hpp"

namespace subdiv {

// Three disjoint reserved vertex sets: absorption targets (r1), the flexible
// absorption pool plus connection fuel (r2), and the connection reservoir
// (r3), with per-vertex degree guarantees into the two link reservoirs
// (r2, r3) and into the rest of the graph.
struct ReservoirSystem {
  std::vector<int> r1, r2, r3;
  int r = 0;      // theta * n
  int k_res = 0;  // connection fuel inside r2: 4*C(t,2) + 4*round(2*eps*n)
};

// Rejection sampling plus a greedy swap repair for the degree conditions,
// verified exhaustively over all vertices before returning.
std::optional<ReservoirSystem> pick_reservoirs(const Graph& g, int t,
                                               const DeskScaleParams& params, Rng& rng,
                                               std::string* note = nullptr);

// Bipartite incidence between path indices (left, 3r of them) and reservoir
// vertices (right slots: r1 in order, then r2 in order). An edge (i, v) means
// path i carries a dedicated triangle absorber for vertex v.
struct BipTemplate {
  int r = 0, k_res = 0;
  std::vector<std::vector<int>> left_adj;   // per path: right slots, chain order
  std::vector<std::vector<int>> right_adj;  // per right slot: paths (defines f_v)
  double sampled_robustness = 0.0;          // fraction of sampled leftovers with a matching

  int right_count() const { return 3 * r + k_res; }
  bool is_y_slot(int slot) const { return slot < 2 * r; }
};

struct TemplateOptions {
  int fanout = 40;       // neighbours drawn per left vertex
  int degree_cap = 100;  // max degree on either side
  int samples = 200;
  int resample_budget = 30;
  double min_pass = 1.0;  // required fraction of passing robustness samples
  // When nonempty (size r, entries are z-slot offsets in [0, r+k_res)), the
  // template additionally anchors a guaranteed matching for that leftover.
  std::vector<int> planned_zprime;
};

std::optional<BipTemplate> build_template(int r, int k_res, Rng& rng,
                                          const TemplateOptions& opts = {},
                                          std::string* note = nullptr);

// Whether one concrete leftover choice (z-slot offsets, size r) admits a
// perfect matching against all 3r paths.
bool template_matches(const BipTemplate& tpl, const std::vector<int>& zprime_offsets,
                      std::vector<int>* match_out = nullptr);

// Per right slot: pairwise-disjoint triangle partners (a, b) with
// v-a, v-b, a-b host edges, drawn outside all reservoirs.
struct AbsorberSet {
  std::vector<std::vector<std::pair<int, int>>> pairs;  // indexed by right slot
};

std::optional<AbsorberSet> build_absorbers(const Graph& g, const ReservoirSystem& res,
                                           const std::vector<int>& counts,
                                           const std::vector<char>& forbidden, int sample_size,
                                           Rng& rng, std::string* note = nullptr);

struct AbsorbingPath {
  std::vector<int> vertices;  // exactly the configured size
  // right slot -> its designated consecutive pair inside this path
  std::vector<std::pair<int, std::pair<int, int>>> hosted;
};

struct AbsorbingPaths {
  std::vector<AbsorbingPath> paths;  // 3r of them, pairwise disjoint
};

// Chains each path's designated triangles with length-3 links, then pads to
// the exact configured size. Consumes only vertices outside the reservoirs
// and outside `forbidden`.
std::optional<AbsorbingPaths> assemble_absorbing_paths(const Graph& g, const BipTemplate& tpl,
                                                       const AbsorberSet& absorbers,
                                                       const ReservoirSystem& res, int path_size,
                                                       std::vector<char>& forbidden,
                                                       int sample_size, Rng& rng,
                                                       std::string* note = nullptr);

// Matches every leftover vertex (all of r1 plus the residual r of r2) to a
// distinct path and rewires that path's designated pair a-b into the detour
// a-v-b. The subdivision must already contain every absorbing path as a
// subpath of some branching path.
std::optional<Subdivision> absorb(const Subdivision& sub, const Graph& g, const BipTemplate& tpl,
                                  const AbsorbingPaths& paths, const ReservoirSystem& res,
                                  const std::vector<int>& leftover_vertices,
                                  std::string* note = nullptr);

}  // namespace subdiv
