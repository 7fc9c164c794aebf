#include "subdiv/oracle.hpp"

#include <stdexcept>
#include <vector>

namespace subdiv {

namespace {

struct Search {
  const Graph& g;
  int n, t;
  SubdivMode mode;
  long long budget;
  std::vector<unsigned> adj;                // adjacency bitmasks
  std::vector<std::pair<int, int>> pairs;   // lexicographic
  std::vector<int> branch;
  std::vector<std::vector<int>> paths;
  std::vector<int> lens;
  bool found = false;
  Subdivision out;

  Search(const Graph& g_, int t_, SubdivMode mode_, long long budget_)
      : g(g_), n(g_.vertex_count()), t(t_), mode(mode_), budget(budget_) {
    adj.assign(n, 0);
    for (int v = 0; v < n; ++v)
      for (int w : g.neighbors(v)) adj[v] |= 1u << w;
    for (int i = 0; i < t; ++i)
      for (int j = i + 1; j < t; ++j) pairs.emplace_back(i, j);
  }

  bool balance_ok(int len) const {
    if (mode != SubdivMode::nearly_balanced_spanning) return true;
    for (int l : lens)
      if (len > l + 2 || l > len + 2) return false;
    return true;
  }

  // Extends the path for pair k from `cur` toward its target branch vertex.
  void extend(std::size_t k, int cur, unsigned used) {
    if (found || --budget < 0) return;
    int target = branch[pairs[k].second];
    auto& path = paths[k];
    if ((adj[cur] >> target) & 1u) {
      int len = static_cast<int>(path.size());
      if (balance_ok(len)) {
        path.push_back(target);
        lens.push_back(len);
        next_pair(k + 1, used);
        lens.pop_back();
        path.pop_back();
        if (found) return;
      }
    }
    if (mode == SubdivMode::nearly_balanced_spanning && !lens.empty()) {
      int len_now = static_cast<int>(path.size());
      int lmin = lens[0];
      for (int l : lens) lmin = l < lmin ? l : lmin;
      if (len_now > lmin + 2) return;  // already longer than any allowed final length
    }
    unsigned free = adj[cur] & ~used;
    while (free) {
      unsigned bit = free & (0u - free);
      free ^= bit;
      int w = __builtin_ctz(bit);
      if (w == target) continue;
      bool is_br = false;
      for (int b : branch)
        if (b == w) { is_br = true; break; }
      if (is_br) continue;
      path.push_back(w);
      extend(k, w, used | bit);
      path.pop_back();
      if (found) return;
    }
  }

  void next_pair(std::size_t k, unsigned used) {
    if (found || --budget < 0) return;
    if (k == pairs.size()) {
      if (mode != SubdivMode::any) {
        if (__builtin_popcount(used) != n - t) return;  // branch vertices not in `used`
      }
      found = true;
      out.t = t;
      out.branch = branch;
      out.paths = paths;
      return;
    }
    int s = branch[pairs[k].first];
    paths[k] = {s};
    extend(k, s, used);
    paths[k].clear();
  }

  bool run() {
    std::vector<int> idx(t);
    for (int i = 0; i < t; ++i) idx[i] = i;
    paths.assign(pairs.size(), {});
    while (true) {
      branch = idx;
      next_pair(0, 0u);
      if (found || budget < 0) return found;
      int i = t - 1;
      while (i >= 0 && idx[i] == n - t + i) --i;
      if (i < 0) return false;
      ++idx[i];
      for (int j = i + 1; j < t; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
};

}  // namespace

OracleResult oracle_exists(const Graph& g, int t, SubdivMode mode, long long node_budget) {
  int n = g.vertex_count();
  if (n > 14) throw std::invalid_argument("oracle_exists: host too large (n <= 14)");
  if (t < 2) throw std::invalid_argument("oracle_exists: t >= 2 required");
  OracleResult res;
  if (t > n) return res;
  Search s(g, t, mode, node_budget);
  bool ok = s.run();
  if (s.budget < 0) throw std::runtime_error("oracle_exists: node budget exceeded");
  res.exists = ok;
  if (ok) res.witness = s.out;
  return res;
}

}  // namespace subdiv
