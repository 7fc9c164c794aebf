#include "subdiv/verify.hpp"

#include <algorithm>

namespace subdiv {

namespace {

VerifyResult fail(const std::string& why) {
  VerifyResult r;
  r.ok = false;
  r.diagnostic = why;
  return r;
}

}  // namespace

VerifyResult verify(const Graph& g, const Subdivision& s, SubdivMode mode) {
  int n = g.vertex_count();
  if (s.t < 2) return fail("t must be at least 2");
  if (static_cast<int>(s.branch.size()) != s.t) return fail("branch vertex count differs from t");
  std::vector<char> is_branch(n, 0);
  for (int v : s.branch) {
    if (v < 0 || v >= n) return fail("branch vertex out of range");
    if (is_branch[v]) return fail("repeated branch vertex");
    is_branch[v] = 1;
  }
  if (static_cast<int>(s.paths.size()) != s.pair_count()) return fail("wrong number of paths");

  std::vector<char> used(n, 0);  // internal vertices used by some path
  int min_len = 0, max_len = 0;
  bool first = true;
  long long covered = s.t;
  for (int i = 0; i < s.t; ++i)
    for (int j = i + 1; j < s.t; ++j) {
      const auto& path = s.paths[pair_index(i, j, s.t)];
      std::string tag = "path (" + std::to_string(i) + "," + std::to_string(j) + "): ";
      if (path.size() < 2) return fail(tag + "fewer than two vertices");
      if (path.front() != s.branch[i] || path.back() != s.branch[j])
        return fail(tag + "endpoints are not the branch vertices");
      for (std::size_t k = 0; k + 1 < path.size(); ++k)
        if (!g.has_edge(path[k], path[k + 1])) return fail(tag + "missing edge in host graph");
      for (std::size_t k = 1; k + 1 < path.size(); ++k) {
        int v = path[k];
        if (v < 0 || v >= n) return fail(tag + "vertex out of range");
        if (is_branch[v]) return fail(tag + "interior touches a branch vertex");
        if (used[v]) return fail(tag + "interior vertex reused");
        used[v] = 1;
        ++covered;
      }
      int len = static_cast<int>(path.size()) - 1;
      if (first) {
        min_len = max_len = len;
        first = false;
      } else {
        min_len = std::min(min_len, len);
        max_len = std::max(max_len, len);
      }
    }

  VerifyResult r;
  r.balance = max_len - min_len;
  r.covered = covered;
  if (mode == SubdivMode::spanning || mode == SubdivMode::nearly_balanced_spanning) {
    if (covered != n) {
      r.ok = false;
      r.diagnostic = "not spanning: covers " + std::to_string(covered) + " of " + std::to_string(n);
      return r;
    }
  }
  if (mode == SubdivMode::nearly_balanced_spanning) {
    // All lengths within [l-1, l+1] for some l is exactly max-min <= 2.
    if (r.balance > 2) {
      r.ok = false;
      r.diagnostic = "not nearly balanced: lengths spread " + std::to_string(r.balance);
      return r;
    }
  }
  r.ok = true;
  return r;
}

}  // namespace subdiv
