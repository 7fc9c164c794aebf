#include "subdiv/extendable.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace subdiv {

ExtendableState::ExtendableState(const Graph& g, int D, int m)
    : g_(&g), D_(D), m_(m), in_s_(g.vertex_count(), 0), deg_s_(g.vertex_count(), 0), avoid_(g.vertex_count(), 0) {
  if (D < 1 || m < 1) throw std::invalid_argument("extendable state: D and m must be positive");
}

void ExtendableState::add_isolated(int v) {
  if (v < 0 || v >= g_->vertex_count()) throw std::out_of_range("state vertex out of range");
  if (!in_s_[v]) {
    in_s_[v] = 1;
    ++size_;
  }
}

void ExtendableState::add_edge(int u, int v) {
  if (!g_->has_edge(u, v)) throw std::invalid_argument("state edge not present in host graph");
  add_isolated(u);
  add_isolated(v);
  ++deg_s_[u];
  ++deg_s_[v];
}

void ExtendableState::add_path(const std::vector<int>& path) {
  if (path.size() < 2) throw std::invalid_argument("state path needs at least two vertices");
  for (std::size_t i = 0; i + 1 < path.size(); ++i) add_edge(path[i], path[i + 1]);
}

void ExtendableState::set_avoided(int v, bool flag) {
  if (v < 0 || v >= g_->vertex_count()) throw std::out_of_range("state vertex out of range");
  avoid_[v] = flag ? 1 : 0;
}

void ExtendableState::set_avoided(const std::vector<int>& vs, bool flag) {
  for (int v : vs) set_avoided(v, flag);
}

int ExtendableState::max_state_degree() const {
  int best = 0;
  for (int v = 0; v < g_->vertex_count(); ++v) best = std::max(best, deg_s_[v]);
  return best;
}

int ExtendableState::free_degree(int v) const {
  int c = 0;
  for (int w : g_->neighbors(v))
    if (free(w)) ++c;
  return c;
}

namespace {

// Evaluates one candidate set U against either the defining inequality or
// the stronger external-neighbourhood condition. Returns false on violation.
bool check_set(const ExtendableState& s, const std::vector<int>& u, bool sufficient_mode,
               std::vector<int>& mark, int& stamp, ExtendabilityWitness* witness) {
  const Graph& g = s.host();
  ++stamp;
  for (int v : u) mark[v] = stamp;  // marks U itself
  long long rhs;
  if (sufficient_mode) {
    rhs = static_cast<long long>(s.D()) * static_cast<long long>(u.size());
  } else {
    rhs = static_cast<long long>(s.D() - 1) * static_cast<long long>(u.size());
    for (int v : u)
      if (s.contains(v)) rhs -= s.state_degree(v) - 1;
  }
  long long lhs = 0;
  const int seen_base = stamp;
  ++stamp;
  for (int v : u) {
    for (int w : g.neighbors(v)) {
      if (mark[w] == stamp) continue;                      // already counted
      if (sufficient_mode && mark[w] == seen_base) continue;  // w in U: excluded from N(U)
      if (mark[w] != seen_base) mark[w] = stamp;
      if (s.contains(w)) continue;
      if (mark[w] == seen_base) mark[w] = stamp;  // U vertex outside S counts once
      ++lhs;
      if (lhs >= rhs) return true;
    }
  }
  if (lhs >= rhs) return true;
  if (witness) {
    witness->u = u;
    witness->lhs = lhs;
    witness->rhs = rhs;
  }
  return false;
}

std::optional<bool> enumerate_all(const ExtendableState& s, bool sufficient_mode,
                                  long long budget, ExtendabilityWitness* witness) {
  const Graph& g = s.host();
  const int n = g.vertex_count();
  const int max_size = std::min(n, 2 * s.m());
  std::vector<int> mark(n, 0);
  int stamp = 0;
  std::vector<int> comb;
  for (int k = 1; k <= max_size; ++k) {
    comb.resize(k);
    for (int i = 0; i < k; ++i) comb[i] = i;
    while (true) {
      long long cost = k;
      for (int v : comb) cost += g.degree(v);
      budget -= cost;
      if (budget < 0) return std::nullopt;
      if (!check_set(s, comb, sufficient_mode, mark, stamp, witness)) return false;
      int i = k - 1;
      while (i >= 0 && comb[i] == n - k + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  return true;
}

}  // namespace

std::optional<bool> is_extendable_exhaustive(const ExtendableState& s, long long budget,
                                             ExtendabilityWitness* witness) {
  return enumerate_all(s, false, budget, witness);
}

std::optional<bool> sufficient_extendability(const ExtendableState& s, long long budget,
                                             ExtendabilityWitness* witness) {
  return enumerate_all(s, true, budget, witness);
}

bool extendability_sampled(const ExtendableState& s, int samples, Rng& rng,
                           ExtendabilityWitness* witness) {
  const Graph& g = s.host();
  const int n = g.vertex_count();
  const int max_size = std::min(n, 2 * s.m());
  std::vector<int> state_vertices;
  for (int v = 0; v < n; ++v)
    if (s.contains(v)) state_vertices.push_back(v);
  std::vector<int> mark(n, 0), in_u(n, 0);
  int mark_stamp = 0, pick_stamp = 0;
  std::vector<int> u;
  for (int it = 0; it < samples; ++it) {
    const int k = 1 + rng.next_int(max_size);
    u.clear();
    ++pick_stamp;
    int guard = 0;
    while (static_cast<int>(u.size()) < k && guard < 50 * k + 100) {
      ++guard;
      int v;
      // Sets meeting S stress the degree-correction term, so bias toward S.
      if (!state_vertices.empty() && rng.next_bool(0.5)) {
        v = state_vertices[rng.next_int(static_cast<int>(state_vertices.size()))];
      } else {
        v = rng.next_int(n);
      }
      if (in_u[v] == pick_stamp) continue;
      in_u[v] = pick_stamp;
      u.push_back(v);
    }
    if (u.empty()) continue;
    if (!check_set(s, u, false, mark, mark_stamp, witness)) return false;
  }
  return true;
}

std::optional<std::vector<int>> exact_free_path(const Graph& g, const std::vector<char>& blocked,
                                                int a, int b, int ell, Rng& rng,
                                                const ConnectOptions& opts) {
  if (a == b || ell < 1) return std::nullopt;
  if (ell == 1) {
    if (g.has_edge(a, b)) return std::vector<int>{a, b};
    return std::nullopt;
  }
  // BFS distances to b through unblocked vertices; a static lower bound on
  // the true remaining distance once interiors get consumed.
  constexpr int kInf = std::numeric_limits<int>::max();
  std::vector<int> dist_b(g.vertex_count(), kInf);
  {
    std::queue<int> q;
    dist_b[b] = 0;
    q.push(b);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w : g.neighbors(v)) {
        if (dist_b[w] != kInf || blocked[w]) continue;
        dist_b[w] = dist_b[v] + 1;
        q.push(w);
      }
    }
  }
  int shortest = kInf;
  for (int w : g.neighbors(a)) {
    if (w == b)
      shortest = std::min(shortest, 1);
    else if (!blocked[w] && dist_b[w] != kInf)
      shortest = std::min(shortest, 1 + dist_b[w]);
  }
  if (shortest > ell) return std::nullopt;

  std::vector<char> used(g.vertex_count(), 0);
  std::vector<int> path;
  struct Frame {
    std::vector<int> cands;
    std::size_t next;
  };
  std::vector<Frame> stack;

  auto candidates_for = [&](int cur, int rem) {
    std::vector<int> c;
    for (int w : g.neighbors(cur)) {
      if (blocked[w] || used[w]) continue;
      if (dist_b[w] == kInf || dist_b[w] > rem - 1) continue;
      c.push_back(w);
    }
    rng.shuffle(c);
    int dmin = kInf;
    for (int w : c) dmin = std::min(dmin, dist_b[w]);
    // With little slack left, head straight for b; otherwise wander.
    if (!c.empty() && rem - 1 - dmin <= 2) {
      std::stable_sort(c.begin(), c.end(), [&](int x, int y) { return dist_b[x] < dist_b[y]; });
    }
    return c;
  };

  for (int attempt = 0; attempt < opts.restarts; ++attempt) {
    long long nodes = opts.nodes_per_restart;
    std::fill(used.begin(), used.end(), 0);
    path.assign(1, a);
    used[a] = 1;
    stack.clear();
    stack.push_back({candidates_for(a, ell), 0});
    while (!stack.empty()) {
      Frame& f = stack.back();
      const int depth = static_cast<int>(path.size()) - 1;  // edges used
      const int rem = ell - depth;
      if (rem == 1) {
        if (g.has_edge(path.back(), b)) {
          path.push_back(b);
          return path;
        }
        stack.pop_back();
        used[path.back()] = 0;
        path.pop_back();
        continue;
      }
      if (--nodes < 0) break;
      bool advanced = false;
      while (f.next < f.cands.size()) {
        int w = f.cands[f.next++];
        if (used[w]) continue;
        used[w] = 1;
        path.push_back(w);
        stack.push_back({candidates_for(w, rem - 1), 0});
        advanced = true;
        break;
      }
      if (!advanced) {
        stack.pop_back();
        if (path.size() > 1) {
          used[path.back()] = 0;
          path.pop_back();
        }
      }
    }
  }
  return std::nullopt;
}

ConnectResult connect(ExtendableState& s, int a, int b, int ell, Rng& rng,
                      const ConnectOptions& opts) {
  ConnectResult res;
  const Graph& g = s.host();
  if (a == b) {
    res.note = "connect: endpoints coincide";
    return res;
  }
  if (!s.contains(a) || !s.contains(b)) {
    res.note = "connect: endpoints must belong to the state";
    return res;
  }
  if (ell < 1) {
    res.note = "connect: length must be positive";
    return res;
  }
  if (s.state_degree(a) > s.D() / 2 || s.state_degree(b) > s.D() / 2) {
    res.note = "warn: endpoint state degree exceeds D/2; ";
  }
  std::vector<char> blocked(g.vertex_count(), 0);
  for (int v = 0; v < g.vertex_count(); ++v) blocked[v] = s.free(v) ? 0 : 1;
  auto path = exact_free_path(g, blocked, a, b, ell, rng, opts);
  if (!path) {
    res.note += "connect: exact-length search exhausted";
    return res;
  }
  s.add_path(*path);
  res.path = std::move(path);
  if (opts.audit) {
    ExtendabilityWitness w;
    Rng audit_rng = rng.fork(0x61756469);
    if (!extendability_sampled(s, opts.audit_samples, audit_rng, &w)) {
      res.note += "warn: sampled extendability audit found a violating set; ";
    }
  }
  return res;
}

}  // namespace subdiv
