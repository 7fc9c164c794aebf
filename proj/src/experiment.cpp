#include "subdiv/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "subdiv/generators.hpp"
#include "subdiv/pipelines.hpp"
#include "subdiv/rng.hpp"

namespace subdiv {

namespace {

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

bool parse_bool(const std::string& v) {
  if (v == "1" || v == "true" || v == "on") return true;
  if (v == "0" || v == "false" || v == "off") return false;
  throw std::invalid_argument("not a boolean");
}

// Applies one assignment; harness keys first, parameter keys as fallback.
bool set_config(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  try {
    if (key == "pipeline") cfg.pipeline = value;
    else if (key == "family") cfg.family = value;
    else if (key == "n") cfg.n = std::stoi(value);
    else if (key == "d") cfg.d = std::stoi(value);
    else if (key == "q") cfg.q = std::stoi(value);
    else if (key == "family_p") cfg.family_p = std::stod(value);
    else if (key == "graph") cfg.graph_file = value;
    else if (key == "perturb_p") cfg.perturb_p = std::stod(value);
    else if (key == "t") cfg.t_values = parse_int_list(value);
    else if (key == "seeds") cfg.seed_count = std::stoi(value);
    else if (key == "seed_begin") cfg.seed_begin = std::stoull(value);
    else if (key == "workers") cfg.workers = std::stoi(value);
    else if (key == "deterministic_timing") cfg.deterministic_timing = parse_bool(value);
    else if (key == "out") cfg.out_path = value;
    else return set_param(cfg.params, key, value);
  } catch (const std::exception&) {
    throw std::invalid_argument("experiment: bad value for " + key);
  }
  return true;
}

bool known_family(const std::string& f) {
  return f == "random_regular" || f == "paley" || f == "gnp" || f == "complete" ||
         f == "cycle" || f == "petersen" || f == "two_cliques" || f == "file";
}

}  // namespace

void ExperimentConfig::validate() const {
  if (pipeline != "unbalanced" && pipeline != "balanced" && pipeline != "joined" &&
      pipeline != "perturbed")
    throw std::invalid_argument("experiment: unknown pipeline '" + pipeline + "'");
  if (!known_family(family))
    throw std::invalid_argument("experiment: unknown family '" + family + "'");
  bool sized = family == "random_regular" || family == "gnp" || family == "complete" ||
               family == "cycle" || family == "two_cliques";
  if (sized && n < 1)
    throw std::invalid_argument("experiment: family '" + family + "' needs n >= 1");
  if (family == "random_regular" && d < 1)
    throw std::invalid_argument("experiment: family 'random_regular' needs d >= 1");
  if (family == "paley" && q < 5)
    throw std::invalid_argument("experiment: family 'paley' needs q >= 5");
  if (family == "gnp" && !(family_p >= 0.0 && family_p <= 1.0))
    throw std::invalid_argument("experiment: family_p must lie in [0,1]");
  if (family == "file" && graph_file.empty())
    throw std::invalid_argument("experiment: family 'file' needs graph = <path>");
  if (pipeline == "perturbed" && !(perturb_p >= 0.0 && perturb_p <= 1.0))
    throw std::invalid_argument("experiment: perturb_p must lie in [0,1]");
  if (t_values.empty())
    throw std::invalid_argument("experiment: at least one t value is required");
  for (int t : t_values)
    if (t < 2) throw std::invalid_argument("experiment: every t must be >= 2");
  if (seed_count < 1) throw std::invalid_argument("experiment: seeds must be >= 1");
  if (workers < 1) throw std::invalid_argument("experiment: workers must be >= 1");
  params.validate();
}

ExperimentConfig parse_experiment(std::istream& in) {
  ExperimentConfig cfg;
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
      throw std::invalid_argument("experiment: line " + std::to_string(lineno) +
                                  ": expected 'key = value'");
    std::string extra;
    if (ls >> extra)
      throw std::invalid_argument("experiment: line " + std::to_string(lineno) +
                                  ": trailing tokens");
    if (!set_config(cfg, key, value))
      throw std::invalid_argument("experiment: unknown key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig parse_experiment_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("experiment: cannot open " + path);
  return parse_experiment(in);
}

Graph family_graph(const ExperimentConfig& config, std::uint64_t seed) {
  // Same generation lane the single-trial tools use, so a harness row can be
  // reproduced in isolation from (config, t, seed) alone.
  Rng lane = Rng(config.params.rng_seed).fork(seed).fork(1);
  if (config.family == "random_regular") return random_regular(config.n, config.d, lane);
  if (config.family == "paley") return paley_graph(config.q);
  if (config.family == "gnp") return gnp(config.n, config.family_p, lane);
  if (config.family == "complete") return complete_graph(config.n);
  if (config.family == "cycle") return cycle_graph(config.n);
  if (config.family == "petersen") return petersen_graph();
  if (config.family == "two_cliques") return two_cliques(config.n);
  return read_edge_list_file(config.graph_file);
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  std::optional<Graph> preloaded;
  if (config.family == "file") preloaded = read_edge_list_file(config.graph_file);

  const int n_t = static_cast<int>(config.t_values.size());
  const int per_t = config.seed_count;
  const int total = n_t * per_t;
  std::vector<TrialReport> reports(total);

  auto run_one = [&](int idx) {
    const int t = config.t_values[idx / per_t];
    const std::uint64_t seed = config.seed_begin + static_cast<std::uint64_t>(idx % per_t);
    Graph host = preloaded ? *preloaded : family_graph(config, seed);
    PipelineOutcome out;
    if (config.pipeline == "unbalanced") out = pipeline_unbalanced(host, t, config.params, seed);
    else if (config.pipeline == "balanced") out = pipeline_balanced(host, t, config.params, seed);
    else if (config.pipeline == "joined") out = pipeline_joined(host, t, config.params, seed);
    else out = pipeline_perturbed(host, config.perturb_p, t, config.params, seed);
    reports[idx] = std::move(out.report);
  };

  const int workers = std::min(config.workers, std::max(total, 1));
  if (workers <= 1) {
    for (int i = 0; i < total; ++i) run_one(i);
  } else {
    // Strided trial-level fan-out; every write lands at the trial's own index,
    // so the emitted order never depends on scheduling.
    std::vector<std::string> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (int i = w; i < total; i += workers) run_one(i);
        } catch (const std::exception& e) {
          errors[w] = e.what();
        }
      });
    for (auto& th : pool) th.join();
    for (const auto& err : errors)
      if (!err.empty()) throw std::runtime_error(err);
  }

  std::ostringstream csv;
  csv << "pipeline,n,t,seed,outcome,stage,balance,coverage,millis\n";
  ExperimentResult result;
  result.trials = total;
  for (int ti = 0; ti < n_t; ++ti) {
    int block_success = 0;
    for (int si = 0; si < per_t; ++si) {
      const TrialReport& rep = reports[ti * per_t + si];
      block_success += rep.success ? 1 : 0;
      const long long ms = config.deterministic_timing ? 0 : rep.millis;
      csv << rep.pipeline << ',' << rep.n << ',' << rep.t << ',' << rep.seed << ','
          << (rep.success ? "success" : "failure") << ',' << rep.stage << ',' << rep.balance
          << ',' << rep.coverage << ',' << ms << '\n';
    }
    result.successes += block_success;
    char rate[32];
    std::snprintf(rate, sizeof(rate), "rate=%.4f", static_cast<double>(block_success) / per_t);
    const TrialReport& first = reports[ti * per_t];
    csv << first.pipeline << ',' << first.n << ',' << first.t << ",summary," << rate << ",,,,\n";
  }
  result.csv = csv.str();
  return result;
}

}  // namespace subdiv
