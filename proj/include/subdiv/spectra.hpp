#pragma once

#include <optional>
#include <string>
#include <vector>

#include "subdiv/graph.hpp"
#include "subdiv/rng.hpp"

namespace subdiv {

struct SpectralOptions {
  int dense_threshold = 2000;  // exact symmetric eigensolve up to this size
  bool force_iterative = false;
  double tol = 1e-8;
  int max_iterations = 100000;
};

// Second eigenvalue data of a d-regular graph: lambda = max(|mu|) over the
// nontrivial adjacency spectrum, the certified numerical residual, and the
// joinedness threshold ceil(lambda*n/d) implied by the mixing bound.
struct SpectralProfile {
  int n = 0;
  int d = 0;
  double lambda = 0.0;
  double residual = 0.0;
  int spectral_m = 0;
  bool iterative = false;
};

// Requires a regular graph (throws otherwise). Dense exact solve below the
// threshold, deflated power iteration (on the complement of the all-ones
// eigenvector) above it.
SpectralProfile spectral_profile(const Graph& g, const SpectralOptions& opts = {});

// Ordered-pair edge count between two (not necessarily disjoint) sets:
// e(A,B) = #{(a,b) : a in A, b in B, ab an edge}, so e(V,V) = 2|E|.
long long ordered_edge_count(const Graph& g, const std::vector<int>& a, const std::vector<int>& b);

struct MixingAudit {
  int pairs = 0;
  int violations = 0;
  double min_slack = 0.0;  // min over pairs of bound - defect
};

// Samples random disjoint pairs (A,B) of random sizes and checks the mixing
// bound |e(A,B) - d|A||B|/n| <= lambda*sqrt(|A||B|) up to the profile
// residual. Empty sets pass with zero margin.
MixingAudit mixing_audit(const Graph& g, const SpectralProfile& profile, int pairs, Rng& rng);

struct JoinednessWitness {
  std::vector<int> a, b;  // disjoint m-sets with no edge between them
};

// Exhaustive m-joinedness: no two disjoint m-sets without an edge between
// them. Enumerates A and checks |V \ (A u N(A))| < m; nullopt when the
// enumeration budget is exceeded.
std::optional<bool> is_joined_exhaustive(const Graph& g, int m, long long budget = 20'000'000,
                                         JoinednessWitness* witness = nullptr);

enum class CertMethod { spectral, exhaustive, assumed };

struct JoinednessCertificate {
  int m = 0;
  CertMethod method = CertMethod::assumed;
  bool holds = false;
  std::string note;
};

// Certifies m-joinedness: spectrally when ceil(lambda*n/d) <= m, else
// exhaustively when the enumeration fits the budget, else records an
// assumption flag (holds = true, method = assumed) so callers can surface it.
JoinednessCertificate certify_joined(const Graph& g, int m,
                                     const SpectralProfile* profile = nullptr,
                                     long long budget = 20'000'000);

enum class ExpanderVerdict { certified_small_sets, falsified, inconclusive };

struct ExpansionReport {
  ExpanderVerdict verdict = ExpanderVerdict::inconclusive;
  std::vector<int> witness;  // a set X with |N(X)| < C|X| when falsified
  std::string note;
};

// Checks |N(X)| >= C|X| for all X with |X| <= n/(2C): exhaustive over
// singletons and pairs (and triples when n is small), random samples beyond.
ExpansionReport expansion_check(const Graph& g, double C, int samples, Rng& rng);

// C-expander test: n/(2C)-joinedness plus the expansion condition.
ExpansionReport is_c_expander(const Graph& g, double C, int samples, Rng& rng);

}  // namespace subdiv
