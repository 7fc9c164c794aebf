#include "subdiv/partition.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace subdiv {

namespace {

VertexPartition from_assignment(int n, int k, const std::vector<int>& part_of) {
  VertexPartition vp;
  vp.part_of = part_of;
  vp.parts.assign(k, {});
  for (int v = 0; v < n; ++v) vp.parts[part_of[v]].push_back(v);
  return vp;  // parts sorted since v ascends
}

bool degrees_within(const Graph& g, const std::vector<int>& part_of, int k,
                    const std::vector<double>& fractions, double gamma) {
  int n = g.vertex_count();
  std::vector<int> counts(k);
  for (int v = 0; v < n; ++v) {
    std::fill(counts.begin(), counts.end(), 0);
    for (int w : g.neighbors(v)) ++counts[part_of[w]];
    int dv = g.degree(v);
    for (int i = 0; i < k; ++i) {
      double target = fractions[i] * dv;
      if (std::abs(counts[i] - target) > gamma * target) return false;
    }
  }
  return true;
}

}  // namespace

VertexPartition partition_with_inheritance(const Graph& g, const std::vector<double>& probabilities,
                                           double gamma, Rng& rng, int max_retries,
                                           bool check_degrees) {
  int n = g.vertex_count();
  int k = static_cast<int>(probabilities.size());
  if (k < 1) throw std::invalid_argument("partition: need at least one part");
  double sum = std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("partition: probabilities must sum to 1");
  for (double p : probabilities)
    if (p <= 0.0) throw std::invalid_argument("partition: probabilities must be positive");

  std::vector<int> part_of(n);
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    for (int v = 0; v < n; ++v) {
      double x = rng.next_double();
      int i = 0;
      while (i + 1 < k && x >= probabilities[i]) x -= probabilities[i], ++i;
      part_of[v] = i;
    }
    std::vector<int> sizes(k, 0);
    for (int v = 0; v < n; ++v) ++sizes[part_of[v]];
    bool ok = true;
    for (int i = 0; i < k && ok; ++i) {
      double target = probabilities[i] * n;
      if (std::abs(sizes[i] - target) > gamma * target) ok = false;
    }
    if (ok && check_degrees) ok = degrees_within(g, part_of, k, probabilities, gamma);
    if (ok) return from_assignment(n, k, part_of);
  }
  throw std::runtime_error("partition: rejection sampling exhausted max_retries");
}

VertexPartition partition_fixed_sizes(const Graph& g, const std::vector<int>& sizes, double gamma,
                                      Rng& rng, int max_retries, bool check_degrees) {
  int n = g.vertex_count();
  int k = static_cast<int>(sizes.size());
  long long total = 0;
  for (int s : sizes) {
    if (s < 0) throw std::invalid_argument("partition: negative size");
    total += s;
  }
  if (total != n) throw std::invalid_argument("partition: sizes must sum to n");

  std::vector<double> fractions(k);
  for (int i = 0; i < k; ++i) fractions[i] = n == 0 ? 0.0 : static_cast<double>(sizes[i]) / n;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> part_of(n);
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    rng.shuffle(order);
    int at = 0;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < sizes[i]; ++j) part_of[order[at++]] = i;
    if (!check_degrees || degrees_within(g, part_of, k, fractions, gamma))
      return from_assignment(n, k, part_of);
  }
  throw std::runtime_error("partition: rejection sampling exhausted max_retries");
}

bool partition_degrees_ok(const Graph& g, const VertexPartition& vp, double gamma) {
  int n = g.vertex_count();
  int k = vp.count();
  std::vector<double> fractions(k);
  for (int i = 0; i < k; ++i) fractions[i] = n == 0 ? 0.0 : static_cast<double>(vp.parts[i].size()) / n;
  return degrees_within(g, vp.part_of, k, fractions, gamma);
}

}  // namespace subdiv
