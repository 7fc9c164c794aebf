#include "subdiv/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace subdiv {

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges) : n_(n), adj_(n) {
  if (n < 0) throw std::invalid_argument("graph: negative vertex count");
  std::vector<std::pair<int, int>> norm;
  norm.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw std::invalid_argument("graph: endpoint out of range");
    if (u == v) throw std::invalid_argument("graph: loop edge");
    norm.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(norm.begin(), norm.end());
  if (std::adjacent_find(norm.begin(), norm.end()) != norm.end())
    throw std::invalid_argument("graph: duplicate edge");
  m_ = norm.size();
  for (auto [u, v] : norm) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) return false;
  const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
  int w = adj_[u].size() <= adj_[v].size() ? v : u;
  return std::binary_search(a.begin(), a.end(), w);
}

bool Graph::is_regular(int* d_out) const {
  if (n_ == 0) return true;
  int d = degree(0);
  for (int v = 1; v < n_; ++v)
    if (degree(v) != d) return false;
  if (d_out) *d_out = d;
  return true;
}

int Graph::min_degree() const {
  int md = n_ == 0 ? 0 : degree(0);
  for (int v = 1; v < n_; ++v) md = std::min(md, degree(v));
  return md;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(m_);
  for (int u = 0; u < n_; ++u)
    for (int v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;  // adjacency lists are sorted, so this is lexicographic
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("edge list: empty input");
  std::istringstream head(line);
  long long n = -1, m = -1;
  if (!(head >> n >> m) || n < 0 || m < 0) throw std::invalid_argument("edge list: bad header");
  std::string tail;
  if (head >> tail) throw std::invalid_argument("edge list: trailing tokens in header");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!std::getline(in, line)) throw std::invalid_argument("edge list: fewer edges than declared");
    std::istringstream ls(line);
    long long u, v;
    if (!(ls >> u >> v)) throw std::invalid_argument("edge list: bad edge line");
    if (ls >> tail) throw std::invalid_argument("edge list: trailing tokens in edge line");
    if (u < 0 || v < 0 || u >= n || v >= n) throw std::invalid_argument("edge list: endpoint out of range");
    if (!(u < v)) throw std::invalid_argument("edge list: edges must satisfy u < v");
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    if (ls >> tail) throw std::invalid_argument("edge list: extra nonempty lines after edges");
  }
  return Graph(static_cast<int>(n), edges);  // ctor re-checks duplicates
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("edge list: cannot open " + path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void write_edge_list_file(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("edge list: cannot write " + path);
  write_edge_list(out, g);
}

}  // namespace subdiv
