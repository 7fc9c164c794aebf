#pragma once

#include <string>

#include "subdiv/graph.hpp"
#include "subdiv/subdivision.hpp"

namespace subdiv {

enum class SubdivMode { any, spanning, nearly_balanced_spanning };

struct VerifyResult {
  bool ok = false;
  std::string diagnostic;  // first failed check, empty on success
  int balance = 0;         // max - min path length
  long long covered = 0;   // vertices used by branch vertices and paths

  explicit operator bool() const { return ok; }
};

// Structural verification of a K_t subdivision in g: distinct branch
// vertices, one path per pair with the right endpoints, edges present,
// internal vertices fresh and pairwise disjoint; plus coverage of V(g) for
// the spanning modes and the near-balance window (all lengths within some
// [l-1, l+1]) for the balanced mode. Length-1 paths (plain edges) are valid;
// t = 2 spanning is exactly a Hamilton path check.
VerifyResult verify(const Graph& g, const Subdivision& s, SubdivMode mode);

}  // namespace subdiv
