#pragma once

#include <optional>
#include <string>
#include <vector>

#include "subdiv/graph.hpp"
#include "subdiv/rng.hpp"

namespace subdiv {

// A partial embedding S inside a host graph: the vertex set built so far,
// its internal degrees, and the (D, m) extendability parameters. Vertices
// outside S are free; `avoid` marks vertices reserved for later stages that
// searches must not consume.
class ExtendableState {
 public:
  ExtendableState(const Graph& g, int D, int m);

  const Graph& host() const { return *g_; }
  int D() const { return D_; }
  int m() const { return m_; }
  int size() const { return size_; }

  bool contains(int v) const { return in_s_[v] != 0; }
  int state_degree(int v) const { return deg_s_[v]; }
  bool avoided(int v) const { return avoid_[v] != 0; }
  bool free(int v) const { return !in_s_[v] && !avoid_[v]; }

  void add_isolated(int v);
  void add_edge(int u, int v);              // endpoints are added as needed
  void add_path(const std::vector<int>& path);  // consecutive edges
  void set_avoided(int v, bool flag);
  void set_avoided(const std::vector<int>& vs, bool flag);

  int max_state_degree() const;
  int free_degree(int v) const;  // neighbours of v that are free

 private:
  const Graph* g_;
  int D_, m_;
  int size_ = 0;
  std::vector<char> in_s_;
  std::vector<int> deg_s_;
  std::vector<char> avoid_;
};

struct ExtendabilityWitness {
  std::vector<int> u;  // violating set
  long long lhs = 0, rhs = 0;
};

// Definition check, exhaustively over all U with 1 <= |U| <= 2m:
//   |Gamma_G(U) \ V(S)| >= (D-1)|U| - sum_{u in U ^ V(S)} (d_S(u) - 1).
// nullopt when the enumeration exceeds the budget.
std::optional<bool> is_extendable_exhaustive(const ExtendableState& s,
                                             long long budget = 20'000'000,
                                             ExtendabilityWitness* witness = nullptr);

// Sufficient condition, exhaustively: |N_G(U) \ V(S)| >= D|U| for all U with
// |U| <= 2m. Implies the definition above.
std::optional<bool> sufficient_extendability(const ExtendableState& s,
                                             long long budget = 20'000'000,
                                             ExtendabilityWitness* witness = nullptr);

// Randomized audit of the definition on `samples` random sets U.
bool extendability_sampled(const ExtendableState& s, int samples, Rng& rng,
                           ExtendabilityWitness* witness = nullptr);

struct ConnectOptions {
  int restarts = 24;
  long long nodes_per_restart = 40'000;
  bool audit = false;   // sampled extendability audit after a successful connect
  int audit_samples = 50;
};

struct ConnectResult {
  std::optional<std::vector<int>> path;  // a..b inclusive, exact length
  std::string note;                      // precondition warnings / failure reason
};

// Path of exactly `ell` edges from a to b whose interior vertices satisfy
// !blocked[v]. Does not touch any state; shared by connect() and the router
// embedder. a and b themselves may be blocked (endpoints are exempt).
std::optional<std::vector<int>> exact_free_path(const Graph& g, const std::vector<char>& blocked,
                                                int a, int b, int ell, Rng& rng,
                                                const ConnectOptions& opts = {});

// Finds a path of exactly `ell` edges between two state vertices whose
// interior vertices are free, and commits it to the state. Randomized DFS
// biased toward free degree, pruned by BFS distance-to-target over the free
// set. The paper-scale preconditions (endpoint state degree <= D/2, size
// slack) are reported in `note` when violated but the search proceeds.
ConnectResult connect(ExtendableState& s, int a, int b, int ell, Rng& rng,
                      const ConnectOptions& opts = {});

}  // namespace subdiv
