#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace subdiv {

// A K_t subdivision: t distinct branch vertices and one path per pair,
// stored as the full vertex sequence from branch[i] to branch[j] for i < j,
// indexed by pair_index.
struct Subdivision {
  int t = 0;
  std::vector<int> branch;
  std::vector<std::vector<int>> paths;

  int pair_count() const { return t * (t - 1) / 2; }
};

// Lexicographic rank of the pair (i, j), 0 <= i < j < t.
int pair_index(int i, int j, int t);

// Text format (all ids 0-based):
//   line 1: t
//   line 2: the t branch vertices
//   then one line per pair in lexicographic order: "i j: v0 v1 ... vk"
// where v0..vk is the full path between branch i and branch j.
Subdivision read_subdivision(std::istream& in);
Subdivision read_subdivision_file(const std::string& path);
void write_subdivision(std::ostream& out, const Subdivision& s);
void write_subdivision_file(const std::string& path, const Subdivision& s);

}  // namespace subdiv
