#include "subdiv/subdivision.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace subdiv {

int pair_index(int i, int j, int t) {
  if (!(0 <= i && i < j && j < t)) throw std::invalid_argument("pair_index: need 0 <= i < j < t");
  // pairs (0,1),(0,2),...,(0,t-1),(1,2),...
  return i * t - i * (i + 1) / 2 + (j - i - 1);
}

Subdivision read_subdivision(std::istream& in) {
  Subdivision s;
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("subdivision: empty input");
  {
    std::istringstream ls(line);
    if (!(ls >> s.t) || s.t < 2) throw std::invalid_argument("subdivision: bad t");
    std::string extra;
    if (ls >> extra) throw std::invalid_argument("subdivision: trailing tokens after t");
  }
  if (!std::getline(in, line)) throw std::invalid_argument("subdivision: missing branch line");
  {
    std::istringstream ls(line);
    int v;
    while (ls >> v) s.branch.push_back(v);
    if (static_cast<int>(s.branch.size()) != s.t)
      throw std::invalid_argument("subdivision: branch line must list exactly t vertices");
  }
  s.paths.assign(s.pair_count(), {});
  for (int i = 0; i < s.t; ++i)
    for (int j = i + 1; j < s.t; ++j) {
      if (!std::getline(in, line)) throw std::invalid_argument("subdivision: missing path line");
      std::istringstream ls(line);
      int pi, pj;
      char colon;
      if (!(ls >> pi >> pj >> colon) || colon != ':')
        throw std::invalid_argument("subdivision: path line must start with 'i j:'");
      if (pi != i || pj != j)
        throw std::invalid_argument("subdivision: path lines must appear in pair order");
      std::vector<int> path;
      int v;
      while (ls >> v) path.push_back(v);
      if (path.size() < 2) throw std::invalid_argument("subdivision: path needs at least two vertices");
      s.paths[pair_index(i, j, s.t)] = std::move(path);
    }
  return s;
}

Subdivision read_subdivision_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("subdivision: cannot open " + path);
  return read_subdivision(in);
}

void write_subdivision(std::ostream& out, const Subdivision& s) {
  out << s.t << '\n';
  for (int i = 0; i < s.t; ++i) out << s.branch[i] << (i + 1 == s.t ? '\n' : ' ');
  for (int i = 0; i < s.t; ++i)
    for (int j = i + 1; j < s.t; ++j) {
      out << i << ' ' << j << ':';
      for (int v : s.paths[pair_index(i, j, s.t)]) out << ' ' << v;
      out << '\n';
    }
}

void write_subdivision_file(const std::string& path, const Subdivision& s) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("subdivision: cannot write " + path);
  write_subdivision(out, s);
}

}  // namespace subdiv
