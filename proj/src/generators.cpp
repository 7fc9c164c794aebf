#include "subdiv/generators.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace subdiv {

namespace {

// One pairing-model draw followed by swap repair. Returns false if repair
// stalls (caller redraws). Multisets of half-edge pairs are repaired by
// swapping a bad pair with a uniformly random good pair when the swap
// removes the defect without creating a new one.
bool pairing_attempt(int n, int d, Rng& rng, std::vector<std::pair<int, int>>& out) {
  std::vector<int> stubs(static_cast<std::size_t>(n) * d);
  for (int v = 0; v < n; ++v)
    for (int i = 0; i < d; ++i) stubs[static_cast<std::size_t>(v) * d + i] = v;
  rng.shuffle(stubs);

  std::size_t m = stubs.size() / 2;
  std::vector<std::pair<int, int>> pairs(m);
  std::set<std::pair<int, int>> seen;  // keys owned by good pairs only
  std::vector<std::size_t> bad;
  std::vector<char> is_bad(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    int u = stubs[2 * i], v = stubs[2 * i + 1];
    pairs[i] = {u, v};
    auto key = std::minmax(u, v);
    if (u == v || !seen.insert({key.first, key.second}).second) {
      bad.push_back(i);
      is_bad[i] = 1;
    }
  }

  std::uint64_t budget = 400 * (bad.size() + 1) + 1000;
  while (!bad.empty() && budget-- > 0) {
    std::size_t bi = bad.back();
    auto [a, b] = pairs[bi];
    std::size_t gi = rng.next_below(m);
    if (gi == bi || is_bad[gi]) continue;
    auto [c, e] = pairs[gi];
    // Propose (a,c) and (b,e). A bad pair owns no key in `seen`; the good
    // pair owns exactly its own key, so the exchange below is consistent.
    if (a == c || b == e) continue;
    auto k1 = std::minmax(a, c);
    auto k2 = std::minmax(b, e);
    if (k1 == k2) continue;
    if (seen.count({k1.first, k1.second}) || seen.count({k2.first, k2.second})) continue;
    auto kg = std::minmax(c, e);
    seen.erase({kg.first, kg.second});
    pairs[bi] = {a, c};
    pairs[gi] = {b, e};
    seen.insert({k1.first, k1.second});
    seen.insert({k2.first, k2.second});
    is_bad[bi] = 0;
    bad.pop_back();
  }
  if (!bad.empty()) return false;
  out = std::move(pairs);
  return true;
}

}  // namespace

Graph random_regular(int n, int d, Rng& rng) {
  if (d < 0 || d >= n) throw std::invalid_argument("random_regular: need 0 <= d < n");
  if ((static_cast<long long>(n) * d) % 2 != 0) throw std::invalid_argument("random_regular: n*d must be even");
  if (d == 0) return Graph(n, {});
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<std::pair<int, int>> pairs;
    if (pairing_attempt(n, d, rng, pairs)) return Graph(n, pairs);
  }
  throw std::runtime_error("random_regular: pairing repair failed repeatedly");
}

Graph paley_graph(int q) {
  if (q < 5) throw std::invalid_argument("paley_graph: q too small");
  for (int f = 2; static_cast<long long>(f) * f <= q; ++f)
    if (q % f == 0) throw std::invalid_argument("paley_graph: q must be prime");
  if (q % 4 != 1) throw std::invalid_argument("paley_graph: q must be 1 mod 4");
  std::vector<char> residue(q, 0);
  for (long long x = 1; x < q; ++x) residue[static_cast<int>((x * x) % q)] = 1;
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < q; ++u)
    for (int v = u + 1; v < q; ++v)
      if (residue[(v - u) % q]) edges.emplace_back(u, v);
  return Graph(q, edges);
}

Graph gnp(int n, double p, Rng& rng) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("gnp: p outside [0,1]");
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.next_bool(p)) edges.emplace_back(u, v);
  return Graph(n, edges);
}

Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph(n, edges);
}

Graph cycle_graph(int n) {
  if (n < 3) throw std::invalid_argument("cycle_graph: n >= 3 required");
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return Graph(n, edges);
}

Graph petersen_graph() {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < 5; ++v) {
    edges.emplace_back(v, (v + 1) % 5);          // outer cycle
    edges.emplace_back(5 + v, 5 + (v + 2) % 5);  // inner pentagram
    edges.emplace_back(v, 5 + v);                // spokes
  }
  return Graph(10, edges);
}

Graph two_cliques(int n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("two_cliques: n must be even and >= 2");
  int h = n / 2;
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < h; ++u)
    for (int v = u + 1; v < h; ++v) {
      edges.emplace_back(u, v);
      edges.emplace_back(h + u, h + v);
    }
  return Graph(n, edges);
}

Graph union_graphs(const Graph& a, const Graph& b) {
  if (a.vertex_count() != b.vertex_count())
    throw std::invalid_argument("union_graphs: vertex sets differ");
  auto ea = a.edges();
  auto eb = b.edges();
  std::vector<std::pair<int, int>> merged;
  merged.reserve(ea.size() + eb.size());
  std::set_union(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(merged));
  return Graph(a.vertex_count(), merged);
}

}  // namespace subdiv
