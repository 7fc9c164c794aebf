#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace subdiv {

// Working-scale knobs for the construction pipelines. The asymptotic
// hierarchy of the underlying analysis collapses at graph sizes small enough
// to run on a desk, so the constants become explicit configuration. The
// "beta" multipliers replace the 100.log n / 100.log^3 n length scales;
// desk-scale length formulas evaluate logs in base 10 (see README), the only
// base at which the mandated test sizes leave the length windows non-empty.
struct DeskScaleParams {
  double C = 10.0;        // expander strength / perturbation scale (p >= C/n)
  double c = 0.2;         // t-cap scale (t <= c*d etc.); > 1 loosens tiny hosts
  double epsilon = 0.01;  // joinedness/leftover scale (m = eps*n regimes)
  double p = 0.1;         // reserved-fraction for the unbalanced split
  double gamma = 0.2;     // relative tolerance for partition inheritance
  double mu = 0.15;       // minimum-degree fraction (delta(G) >= mu*n)
  double alpha = 0.1;     // connector-reservoir fraction
  double theta = 0.004;   // absorber-reservoir fraction (r = theta*n)
  double beta_log = 4.0;   // multiplier standing in for the paper-scale 100.log n
  double beta_log3 = 4.0;  // multiplier standing in for the paper-scale 100.log^3 n
  int absorb_path_size = 20;     // exact absorbing-path size (paper scale: 1000)
  int absorbers_per_vertex = 100;  // cap on absorbers designated per reservoir vertex
  int template_fanout = 40;        // sampled left-degree when building templates
  int template_degree = 100;       // hard cap on template degrees
  int max_retries = 64;
  std::uint64_t rng_seed = 0;

  // Throws std::invalid_argument when a field is out of its legal range:
  // fractions in (0,1], c and C positive scales, beta_* >= 1, positive
  // integer knobs.
  void validate() const;

  // Desk-scale stand-ins for the paper's length scales, on n vertices.
  int scaled_log(int n) const;    // beta_log * log10(n), floored, >= 2
  int scaled_log3(int n) const;   // beta_log3 * log10(n)^3, floored, >= 2
};

// Applies one "key = value" assignment; false when the key is unknown,
// throws std::invalid_argument on an unparsable value.
bool set_param(DeskScaleParams& p, const std::string& key, const std::string& value);

// Flat "key = value" text config. Unknown keys are rejected; '#' starts a
// comment; missing keys keep their defaults.
DeskScaleParams parse_params(std::istream& in);
DeskScaleParams parse_params_file(const std::string& path);
void print_params(std::ostream& out, const DeskScaleParams& p);

}  // namespace subdiv
