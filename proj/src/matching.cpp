#include "subdiv/matching.hpp"

#include <limits>
#include <queue>
#include <stdexcept>

namespace subdiv {

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

struct Hk {
  int nl, nr;
  const std::vector<std::vector<int>>& adj;
  std::vector<int> ml, mr, dist;

  Hk(int nl_, int nr_, const std::vector<std::vector<int>>& adj_)
      : nl(nl_), nr(nr_), adj(adj_), ml(nl_, -1), mr(nr_, -1), dist(nl_) {}

  bool bfs() {
    std::queue<int> q;
    for (int l = 0; l < nl; ++l) {
      dist[l] = ml[l] == -1 ? 0 : kInf;
      if (ml[l] == -1) q.push(l);
    }
    bool found = false;
    while (!q.empty()) {
      int l = q.front();
      q.pop();
      for (int r : adj[l]) {
        int l2 = mr[r];
        if (l2 == -1) {
          found = true;
        } else if (dist[l2] == kInf) {
          dist[l2] = dist[l] + 1;
          q.push(l2);
        }
      }
    }
    return found;
  }

  bool dfs(int l) {
    for (int r : adj[l]) {
      int l2 = mr[r];
      if (l2 == -1 || (dist[l2] == dist[l] + 1 && dfs(l2))) {
        ml[l] = r;
        mr[r] = l;
        return true;
      }
    }
    dist[l] = kInf;
    return false;
  }
};

}  // namespace

MatchingResult max_bipartite_matching(int n_left, int n_right,
                                      const std::vector<std::vector<int>>& adj) {
  if (static_cast<int>(adj.size()) != n_left)
    throw std::invalid_argument("matching: adjacency size mismatch");
  Hk hk(n_left, n_right, adj);
  int size = 0;
  while (hk.bfs())
    for (int l = 0; l < n_left; ++l)
      if (hk.ml[l] == -1 && hk.dfs(l)) ++size;

  MatchingResult res;
  res.match_left = hk.ml;
  res.match_right = hk.mr;
  res.size = size;
  if (size < n_left) {
    // Alternating reachability from unmatched left slots; the reachable left
    // side S has N(S) exactly the reachable right side, and |N(S)| = |S| -
    // (number of unmatched roots), a Hall violator.
    std::vector<char> seen_l(n_left, 0), seen_r(n_right, 0);
    std::queue<int> q;
    for (int l = 0; l < n_left; ++l)
      if (hk.ml[l] == -1) {
        seen_l[l] = 1;
        q.push(l);
      }
    while (!q.empty()) {
      int l = q.front();
      q.pop();
      for (int r : adj[l]) {
        if (seen_r[r]) continue;
        seen_r[r] = 1;
        int l2 = hk.mr[r];
        if (l2 != -1 && !seen_l[l2]) {
          seen_l[l2] = 1;
          q.push(l2);
        }
      }
    }
    for (int l = 0; l < n_left; ++l)
      if (seen_l[l]) res.hall_violator.push_back(l);
  }
  return res;
}

MatchingResult bipartite_graph_matching(const Graph& g, const std::vector<int>& left,
                                        const std::vector<int>& right) {
  std::vector<int> right_slot(g.vertex_count(), -1);
  for (int i = 0; i < static_cast<int>(right.size()); ++i) right_slot[right[i]] = i;
  std::vector<std::vector<int>> adj(left.size());
  for (int i = 0; i < static_cast<int>(left.size()); ++i)
    for (int w : g.neighbors(left[i]))
      if (right_slot[w] != -1) adj[i].push_back(right_slot[w]);
  return max_bipartite_matching(static_cast<int>(left.size()), static_cast<int>(right.size()), adj);
}

}  // namespace subdiv
