#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace subdiv {

// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
// Immutable after construction; no loops, no parallel edges.
class Graph {
 public:
  Graph() = default;
  // Edges may arrive in any order and orientation; duplicates/loops throw.
  Graph(int n, const std::vector<std::pair<int, int>>& edges);

  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return m_; }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  bool has_edge(int u, int v) const;

  // True when every degree equals d.
  bool is_regular(int* d_out = nullptr) const;
  int min_degree() const;

  // Sorted "u v" lines with u < v, lexicographic; canonical for hashing.
  std::vector<std::pair<int, int>> edges() const;

 private:
  int n_ = 0;
  std::size_t m_ = 0;
  std::vector<std::vector<int>> adj_;
};

// Text edge-list format: first line "n m", then one "u v" line per edge with
// 0 <= u < v < n. Reading rejects malformed lines, out-of-range endpoints,
// loops and duplicates; writing emits edges sorted lexicographically so a
// read/write round trip is byte-identical.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list_file(const std::string& path, const Graph& g);

}  // namespace subdiv
