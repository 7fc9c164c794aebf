#pragma once

#include <optional>

#include "subdiv/graph.hpp"
#include "subdiv/subdivision.hpp"
#include "subdiv/verify.hpp"

namespace subdiv {

struct OracleResult {
  bool exists = false;
  std::optional<Subdivision> witness;  // present when exists
};

// Exhaustive K_t-subdivision search for small hosts (n <= 14): enumerates
// branch sets and backtracks over the pair paths under the requested mode.
// Ground truth for the pipelines; exponential by design.
OracleResult oracle_exists(const Graph& g, int t, SubdivMode mode,
                           long long node_budget = 200'000'000);

}  // namespace subdiv
