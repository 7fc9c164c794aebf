#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "subdiv/graph.hpp"
#include "subdiv/params.hpp"
#include "subdiv/subdivision.hpp"

namespace subdiv {

// One constructive attempt. A trial either ends in a verifier-backed success
// or carries the proof step that failed; the pipelines never self-certify.
struct TrialReport {
  std::string pipeline;
  std::uint64_t seed = 0;
  int n = 0, t = 0;
  bool success = false;
  std::string stage;       // failing step tag, empty on success
  std::string reason;      // failure detail, empty on success
  std::string verdict;     // verifier diagnostic, "valid-spanning" on success
  int balance = -1;        // max - min branching path length, -1 when unbuilt
  long long coverage = 0;  // vertices used by the structure when built
  long long millis = 0;
  std::vector<std::string> warnings;  // unmet-hypothesis flags and diagnostics
};

struct PipelineOutcome {
  TrialReport report;
  std::optional<Subdivision> subdivision;  // present exactly on success
};

// Skeleton stars, fixed-length leaf-to-leaf connections for all branch pairs
// but one, and a Hamilton path on the residue for the reserved pair.
PipelineOutcome pipeline_unbalanced(const Graph& g, int t, const DeskScaleParams& params,
                                    std::uint64_t seed);

// Router-based nearly-balanced construction: an embedded sorting network
// threads equal loop blocks into every branching path, with integer length
// planning making the lengths agree to within one.
PipelineOutcome pipeline_balanced(const Graph& g, int t, const DeskScaleParams& params,
                                  std::uint64_t seed);

// Absorption-based spanning construction for dense joined hosts: reservoirs,
// triangle absorbers behind a robust bipartite template, an almost-spanning
// skeleton, and a final absorption round.
PipelineOutcome pipeline_joined(const Graph& g, int t, const DeskScaleParams& params,
                                std::uint64_t seed);

// Unions a random sprinkle G(n,p) onto the base and runs the joined
// construction on the result.
PipelineOutcome pipeline_perturbed(const Graph& g_base, double p, int t,
                                   const DeskScaleParams& params, std::uint64_t seed);

}  // namespace subdiv
