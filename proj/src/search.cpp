#include "subdiv/search.hpp"

#include <algorithm>
#include <stdexcept>

namespace subdiv {

std::optional<StarSystem> greedy_stars(const Graph& g, const std::vector<char>& allowed, int t,
                                       int leaves_per_center) {
  if (static_cast<int>(allowed.size()) != g.vertex_count())
    throw std::invalid_argument("greedy_stars: allowed mask size mismatch");
  if (t < 1 || leaves_per_center < 0) throw std::invalid_argument("greedy_stars: bad shape");
  std::vector<char> free(allowed.begin(), allowed.end());
  auto residual_degree = [&](int v) {
    int c = 0;
    for (int w : g.neighbors(v))
      if (free[w]) ++c;
    return c;
  };
  StarSystem out;
  for (int i = 0; i < t; ++i) {
    int best = -1, best_deg = -1;
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (!free[v]) continue;
      const int dv = residual_degree(v);
      if (dv > best_deg) {
        best = v;
        best_deg = dv;
      }
    }
    if (best < 0 || best_deg < leaves_per_center) return std::nullopt;
    free[best] = 0;
    std::vector<int> leaves;
    for (int w : g.neighbors(best)) {
      if (!free[w]) continue;
      leaves.push_back(w);
      free[w] = 0;
      if (static_cast<int>(leaves.size()) == leaves_per_center) break;
    }
    if (static_cast<int>(leaves.size()) < leaves_per_center) return std::nullopt;
    out.centers.push_back(best);
    out.leaves.push_back(std::move(leaves));
  }
  return out;
}

std::vector<int> dfs_long_path(const Graph& g, const std::vector<char>& allowed, Rng& rng,
                               int certified_m, int restarts) {
  if (static_cast<int>(allowed.size()) != g.vertex_count())
    throw std::invalid_argument("dfs_long_path: allowed mask size mismatch");
  std::vector<int> pool;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (allowed[v]) pool.push_back(v);
  if (pool.empty()) return {};
  std::vector<int> best;
  std::vector<char> visited(g.vertex_count(), 0);
  struct Frame {
    int v;
    std::vector<int> nbrs;
    std::size_t next;
  };
  std::vector<Frame> stack;
  std::vector<int> cur;
  for (int attempt = 0; attempt < restarts; ++attempt) {
    std::fill(visited.begin(), visited.end(), 0);
    rng.shuffle(pool);
    stack.clear();
    auto push = [&](int v) {
      visited[v] = 1;
      cur.push_back(v);
      std::vector<int> nb;
      for (int w : g.neighbors(v))
        if (allowed[w] && !visited[w]) nb.push_back(w);
      rng.shuffle(nb);
      stack.push_back({v, std::move(nb), 0});
      if (cur.size() > best.size()) best = cur;
    };
    // Full sweep: every allowed vertex is eventually visited, so "finished"
    // and "untouched" vertices never have an edge between them at any moment.
    for (int root : pool) {
      if (visited[root]) continue;
      cur.clear();
      push(root);
      while (!stack.empty()) {
        Frame& f = stack.back();
        bool advanced = false;
        while (f.next < f.nbrs.size()) {
          const int w = f.nbrs[f.next++];
          if (visited[w]) continue;
          push(w);
          advanced = true;
          break;
        }
        if (!advanced) {
          stack.pop_back();
          cur.pop_back();
        }
      }
    }
  }
  if (certified_m >= 1) {
    const long long need = static_cast<long long>(pool.size()) - 2LL * certified_m + 1;
    if (static_cast<long long>(best.size()) < need)
      throw std::logic_error("dfs_long_path: certified joinedness contradicted by a short path");
  }
  return best;
}

namespace {

// One rotation-extension attempt for a Hamilton path from a over
// allowed \ {b}, finishing at a neighbour of b.
std::optional<std::vector<int>> posa_attempt(const Graph& g, const std::vector<char>& allowed,
                                             int a, int b, int target_size, long long rotations,
                                             Rng& rng) {
  const int n = g.vertex_count();
  std::vector<int> path{a};
  std::vector<int> pos(n, -1);  // position in path, -1 when absent
  pos[a] = 0;
  std::vector<int> cands;
  std::vector<char> tried(n, 0);  // endpoints tried since the last extension
  std::vector<int> tried_list;
  auto clear_tried = [&]() {
    for (int v : tried_list) tried[v] = 0;
    tried_list.clear();
  };
  auto rotate_to = [&](int pivot_pos) {
    // path ..., pivot, pivot+1, ..., end  becomes  ..., pivot, end, ..., pivot+1
    std::reverse(path.begin() + pivot_pos + 1, path.end());
    for (int i = pivot_pos + 1; i < static_cast<int>(path.size()); ++i) pos[path[i]] = i;
  };
  while (rotations > 0) {
    // Greedy extension at the free end.
    bool extended = true;
    while (extended) {
      extended = false;
      const int end = path.back();
      cands.clear();
      for (int w : g.neighbors(end))
        if (allowed[w] && w != b && pos[w] < 0) cands.push_back(w);
      if (!cands.empty()) {
        const int w = cands[rng.next_int(static_cast<int>(cands.size()))];
        pos[w] = static_cast<int>(path.size());
        path.push_back(w);
        clear_tried();
        extended = true;
      }
    }
    if (static_cast<int>(path.size()) == target_size) {
      if (g.has_edge(path.back(), b)) {
        path.push_back(b);
        return path;
      }
      // Full cover but wrong final vertex: rotate until the end meets N(b).
    }
    // Rotation step.
    const int end = path.back();
    if (tried[end] == 0) {
      tried[end] = 1;
      tried_list.push_back(end);
    }
    cands.clear();
    for (int w : g.neighbors(end)) {
      if (pos[w] < 0 || w == b) continue;
      const int p = pos[w];
      if (p + 1 >= static_cast<int>(path.size())) continue;
      const int new_end = path[p + 1];
      if (tried[new_end]) continue;
      cands.push_back(p);
    }
    if (cands.empty()) return std::nullopt;  // stuck: no fresh endpoint reachable
    rotate_to(cands[rng.next_int(static_cast<int>(cands.size()))]);
    --rotations;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<int>> hamilton_path(const Graph& g, const std::vector<char>& allowed,
                                              int a, int b, Rng& rng,
                                              const HamiltonOptions& opts) {
  if (static_cast<int>(allowed.size()) != g.vertex_count())
    throw std::invalid_argument("hamilton_path: allowed mask size mismatch");
  if (a == b) throw std::invalid_argument("hamilton_path: endpoints coincide");
  if (!allowed[a] || !allowed[b]) throw std::invalid_argument("hamilton_path: endpoint not allowed");
  int count = 0;
  for (char c : allowed) count += c ? 1 : 0;
  if (count == 2) {
    if (g.has_edge(a, b)) return std::vector<int>{a, b};
    return std::nullopt;
  }
  const long long rotations = opts.rotations_per_vertex * count;
  for (int attempt = 0; attempt < opts.restarts; ++attempt) {
    // Alternate which endpoint anchors the path so rotations act from both.
    const bool swap = (attempt % 2) == 1;
    auto got = posa_attempt(g, allowed, swap ? b : a, swap ? a : b, count - 1, rotations, rng);
    if (!got) continue;
    if (swap) std::reverse(got->begin(), got->end());
    const std::vector<int>& p = *got;
    if (static_cast<int>(p.size()) != count || p.front() != a || p.back() != b)
      throw std::logic_error("hamilton_path: malformed result");
    std::vector<char> seen(g.vertex_count(), 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!allowed[p[i]] || seen[p[i]]) throw std::logic_error("hamilton_path: bad cover");
      seen[p[i]] = 1;
      if (i + 1 < p.size() && !g.has_edge(p[i], p[i + 1]))
        throw std::logic_error("hamilton_path: missing edge");
    }
    return got;
  }
  return std::nullopt;
}

std::optional<ThreePathLink> three_path_link(const Graph& g, int v, int v_prime,
                                             const std::vector<char>& pool_free, int sample_size,
                                             Rng& rng, std::string* fail_note) {
  if (static_cast<int>(pool_free.size()) != g.vertex_count())
    throw std::invalid_argument("three_path_link: pool mask size mismatch");
  if (sample_size < 1) throw std::invalid_argument("three_path_link: sample size must be positive");
  ThreePathLink out;
  std::vector<int> cx, cy;
  for (int w : g.neighbors(v))
    if (pool_free[w] && w != v_prime) cx.push_back(w);
  rng.shuffle(cx);
  if (static_cast<int>(cx.size()) > sample_size) cx.resize(sample_size);
  // The candidate pools may overlap (only x != y with an x-y edge matters),
  // which keeps dense hosts from starving the second side.
  for (int w : g.neighbors(v_prime))
    if (pool_free[w] && w != v) cy.push_back(w);
  rng.shuffle(cy);
  if (static_cast<int>(cy.size()) > sample_size) cy.resize(sample_size);
  if (cx.empty() || cy.empty()) {
    if (fail_note) *fail_note = "three_path_link: empty candidate pool";
    return std::nullopt;
  }
  out.full_samples = static_cast<int>(cx.size()) == sample_size &&
                     static_cast<int>(cy.size()) == sample_size;
  if (!out.full_samples) out.note = "candidate pools smaller than requested";
  std::vector<char> in_y(g.vertex_count(), 0);
  for (int w : cy) in_y[w] = 1;
  for (int x : cx) {
    for (int w : g.neighbors(x)) {
      if (in_y[w] && w != x) {
        out.x = x;
        out.y = w;
        return out;
      }
    }
  }
  if (fail_note) *fail_note = "three_path_link: no edge between candidate pools";
  return std::nullopt;
}

}  // namespace subdiv
