#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "subdiv/graph.hpp"
#include "subdiv/params.hpp"

namespace subdiv {

// Batch description: one pipeline, one host family, a (t, seed) grid, and
// parameter overrides. Written as flat `key = value` text so a run's full
// provenance fits in one diff-able file.
struct ExperimentConfig {
  std::string pipeline = "joined";  // unbalanced | balanced | joined | perturbed
  std::string family = "random_regular";
  // families: random_regular | paley | gnp | complete | cycle | petersen |
  //           two_cliques | file
  int n = 0;
  int d = 0;               // random_regular degree
  int q = 0;               // paley prime power
  double family_p = 0.0;   // gnp edge probability
  std::string graph_file;  // family = file
  double perturb_p = 0.0;  // sprinkle probability for the perturbed pipeline
  std::vector<int> t_values{3};
  std::uint64_t seed_begin = 0;
  int seed_count = 1;
  int workers = 1;
  bool deterministic_timing = true;  // zero the millis column
  std::string out_path;              // optional CSV destination
  DeskScaleParams params;

  void validate() const;  // throws std::invalid_argument
};

// Flat `key = value` lines with '#' comments; unknown keys fall through to
// the DeskScaleParams parser, so one file carries the whole run.
ExperimentConfig parse_experiment(std::istream& in);
ExperimentConfig parse_experiment_file(const std::string& path);

struct ExperimentResult {
  std::string csv;
  int trials = 0;
  int successes = 0;

  int exit_code() const { return successes == trials ? 0 : 3; }
};

// One CSV row per (t, seed) in grid order, each t block followed by its
// summary row. Deterministic for a fixed config, including under workers > 1.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Host graph for one trial: random families draw from the trial's dedicated
// generation lane, fixed families ignore the seed.
Graph family_graph(const ExperimentConfig& config, std::uint64_t seed);

}  // namespace subdiv
