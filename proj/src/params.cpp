#include "subdiv/params.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace subdiv {

namespace {

void check_fraction(double v, const char* name) {
  if (!(v > 0.0 && v <= 1.0)) throw std::invalid_argument(std::string("params: ") + name + " must lie in (0,1]");
}

}  // namespace

void DeskScaleParams::validate() const {
  if (!(C >= 1.0)) throw std::invalid_argument("params: C must be >= 1");
  // c scales the t caps (c*d, c*sqrt(n)); values above 1 deliberately loosen
  // them for tiny-host experiments, so only positivity is enforced.
  if (!(c > 0.0)) throw std::invalid_argument("params: c must be positive");
  check_fraction(epsilon, "epsilon");
  check_fraction(p, "p");
  check_fraction(gamma, "gamma");
  check_fraction(mu, "mu");
  check_fraction(alpha, "alpha");
  check_fraction(theta, "theta");
  if (!(beta_log >= 1.0)) throw std::invalid_argument("params: beta_log must be >= 1");
  if (!(beta_log3 >= 1.0)) throw std::invalid_argument("params: beta_log3 must be >= 1");
  if (absorb_path_size < 8) throw std::invalid_argument("params: absorb_path_size must be >= 8");
  if (absorbers_per_vertex < 1) throw std::invalid_argument("params: absorbers_per_vertex must be >= 1");
  if (template_fanout < 1) throw std::invalid_argument("params: template_fanout must be >= 1");
  if (template_degree < 1) throw std::invalid_argument("params: template_degree must be >= 1");
  if (max_retries < 1) throw std::invalid_argument("params: max_retries must be >= 1");
}

int DeskScaleParams::scaled_log(int n) const {
  double l = std::log10(std::max(n, 2));
  return std::max(2, static_cast<int>(std::floor(beta_log * l)));
}

int DeskScaleParams::scaled_log3(int n) const {
  double l = std::log10(std::max(n, 2));
  return std::max(2, static_cast<int>(std::floor(beta_log3 * l * l * l)));
}

bool set_param(DeskScaleParams& p, const std::string& key, const std::string& value) {
  try {
    if (key == "C") p.C = std::stod(value);
    else if (key == "c") p.c = std::stod(value);
    else if (key == "epsilon") p.epsilon = std::stod(value);
    else if (key == "p") p.p = std::stod(value);
    else if (key == "gamma") p.gamma = std::stod(value);
    else if (key == "mu") p.mu = std::stod(value);
    else if (key == "alpha") p.alpha = std::stod(value);
    else if (key == "theta") p.theta = std::stod(value);
    else if (key == "beta_log") p.beta_log = std::stod(value);
    else if (key == "beta_log3") p.beta_log3 = std::stod(value);
    else if (key == "absorb_path_size") p.absorb_path_size = std::stoi(value);
    else if (key == "absorbers_per_vertex") p.absorbers_per_vertex = std::stoi(value);
    else if (key == "template_fanout") p.template_fanout = std::stoi(value);
    else if (key == "template_degree") p.template_degree = std::stoi(value);
    else if (key == "max_retries") p.max_retries = std::stoi(value);
    else if (key == "rng_seed") p.rng_seed = std::stoull(value);
    else return false;
  } catch (const std::exception&) {
    throw std::invalid_argument("params: bad value for " + key);
  }
  return true;
}

DeskScaleParams parse_params(std::istream& in) {
  DeskScaleParams p;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key, eq, value;
    if (!(ls >> key)) continue;  // blank line
    if (!(ls >> eq >> value) || eq != "=")
      throw std::invalid_argument("params: line " + std::to_string(lineno) + ": expected 'key = value'");
    std::string extra;
    if (ls >> extra) throw std::invalid_argument("params: line " + std::to_string(lineno) + ": trailing tokens");
    if (!set_param(p, key, value))
      throw std::invalid_argument("params: unknown key '" + key + "'");
  }
  p.validate();
  return p;
}

DeskScaleParams parse_params_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("params: cannot open " + path);
  return parse_params(in);
}

void print_params(std::ostream& out, const DeskScaleParams& p) {
  out << "C = " << p.C << '\n'
      << "c = " << p.c << '\n'
      << "epsilon = " << p.epsilon << '\n'
      << "p = " << p.p << '\n'
      << "gamma = " << p.gamma << '\n'
      << "mu = " << p.mu << '\n'
      << "alpha = " << p.alpha << '\n'
      << "theta = " << p.theta << '\n'
      << "beta_log = " << p.beta_log << '\n'
      << "beta_log3 = " << p.beta_log3 << '\n'
      << "absorb_path_size = " << p.absorb_path_size << '\n'
      << "absorbers_per_vertex = " << p.absorbers_per_vertex << '\n'
      << "template_fanout = " << p.template_fanout << '\n'
      << "template_degree = " << p.template_degree << '\n'
      << "max_retries = " << p.max_retries << '\n'
      << "rng_seed = " << p.rng_seed << '\n';
}

}  // namespace subdiv
