// Acceptance gate: one property-based check per shipped guarantee, each
// printed as a single PASS/FAIL line. Exits nonzero when any check fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "subdiv/absorption.hpp"
#include "subdiv/experiment.hpp"
#include "subdiv/extendable.hpp"
#include "subdiv/generators.hpp"
#include "subdiv/graph.hpp"
#include "subdiv/oracle.hpp"
#include "subdiv/params.hpp"
#include "subdiv/pipelines.hpp"
#include "subdiv/routing.hpp"
#include "subdiv/search.hpp"
#include "subdiv/spectra.hpp"
#include "subdiv/subdivision.hpp"
#include "subdiv/verify.hpp"

using namespace subdiv;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, ...) {
  char buf[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof buf, pattern, args);
  va_end(args);
  return buf;
}

// ---------------------------------------------------------------- criterion 1

Outcome spectral_soundness() {
  auto t0 = Clock::now();
  Rng rng(101);
  std::vector<Graph> graphs;
  const int degrees[3] = {3, 10, 40};
  for (int i = 0; i < 97; ++i) {
    int d = degrees[i % 3];
    int n = 60 + 2 * static_cast<int>(rng.next_below(121));  // even, 60..300
    graphs.push_back(random_regular(n, d, rng));
  }
  for (int q : {13, 17, 29}) graphs.push_back(paley_graph(q));

  int floor_violations = 0, mixing_violations = 0;
  long long pairs_total = 0;
  for (const Graph& g : graphs) {
    SpectralProfile prof = spectral_profile(g);
    double floor_bound =
        std::sqrt(static_cast<double>(prof.d) * (prof.n - prof.d) / (prof.n - 1));
    if (prof.lambda + 1e-6 < floor_bound) ++floor_violations;
    MixingAudit audit = mixing_audit(g, prof, 1000, rng);
    mixing_violations += audit.violations;
    pairs_total += audit.pairs;
  }
  double secs = seconds_since(t0);
  Outcome out;
  out.pass = graphs.size() == 100 && floor_violations == 0 && mixing_violations == 0 &&
             secs < 60.0;
  out.detail = fmt("%zu graphs, %d eigenvalue floor violations, %d mixing violations over "
                   "%lld sampled pairs, %.1fs",
                   graphs.size(), floor_violations, mixing_violations, pairs_total, secs);
  return out;
}

// ---------------------------------------------------------------- criterion 2

Outcome extendability_implication() {
  Rng rng(202);
  int tested = 0, sufficient_hits = 0, counterexamples = 0;
  while (tested < 500) {
    int n = 10 + static_cast<int>(rng.next_below(21));
    double p = 0.2 + 0.5 * (rng.next_below(1000) / 1000.0);
    Graph g = gnp(n, p, rng);
    auto es = g.edges();
    if (es.empty()) continue;
    int D = 3 + static_cast<int>(rng.next_below(2));
    ExtendableState state(g, D, 1);
    int adds = 1 + static_cast<int>(rng.next_below(3));
    for (int k = 0; k < adds; ++k) {
      auto [u, v] = es[rng.next_below(es.size())];
      if (!state.contains(u) || !state.contains(v) || !g.has_edge(u, v)) state.add_edge(u, v);
    }
    auto sufficient = sufficient_extendability(state);
    auto exhaustive = is_extendable_exhaustive(state);
    if (!sufficient.has_value() || !exhaustive.has_value()) continue;
    ++tested;
    if (*sufficient) {
      ++sufficient_hits;
      if (!*exhaustive) ++counterexamples;
    }
  }
  Outcome out;
  out.pass = counterexamples == 0 && sufficient_hits > 0;
  out.detail = fmt("500 random states, %d satisfied the sufficient condition, "
                   "%d implication counterexamples",
                   sufficient_hits, counterexamples);
  return out;
}

// ---------------------------------------------------------------- criterion 3

struct EmbeddedRouter {
  Graph g;
  SortingRouter router;
};

EmbeddedRouter embed_width(int host_n, int width, Rng& rng) {
  EmbeddedRouter out{complete_graph(host_n), {}};
  ComparatorNetwork net = build_comparator_network(width);
  std::vector<int> vs(host_n);
  std::iota(vs.begin(), vs.end(), 0);
  rng.shuffle(vs);
  std::vector<int> tin(vs.begin(), vs.begin() + width);
  std::vector<int> tout(vs.begin() + width, vs.begin() + 2 * width);
  ExtendableState state(out.g, 10, 1);
  for (int v : tin) state.add_isolated(v);
  for (int v : tout) state.add_isolated(v);
  EmbedResult er = embed_router(state, tin, tout, net, rng);
  if (!er.router) throw std::runtime_error("router embedding failed: " + er.note);
  out.router = *er.router;
  return out;
}

// One routed family checked in full; returns an empty string when clean.
std::string routed_family_defect(const Graph& g, const SortingRouter& router,
                                 const std::vector<int>& sigma,
                                 const std::vector<std::vector<int>>& paths) {
  if (static_cast<int>(paths.size()) != router.width) return "wrong family size";
  std::set<int> seen;
  for (int w = 0; w < router.width; ++w) {
    const auto& p = paths[w];
    if (static_cast<int>(p.size()) != router.path_length + 1) return "length mismatch";
    if (p.front() != router.terminals_in[w]) return "wrong start terminal";
    int dest = w < static_cast<int>(sigma.size()) ? sigma[w] : w;
    if (p.back() != router.terminals_out[dest]) return "wrong end terminal";
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
      if (!g.has_edge(p[i], p[i + 1])) return "non-edge step";
    for (int v : p) {
      if (seen.count(v)) return "vertex reused across paths";
      seen.insert(v);
    }
  }
  if (static_cast<int>(seen.size()) != router.vertex_count()) return "coverage gap";
  return "";
}

Outcome router_totality() {
  Rng rng(303);
  int families = 0;
  for (int width : {2, 3, 4}) {
    EmbeddedRouter er = embed_width(250, width, rng);
    std::vector<int> sigma(width);
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
      auto paths = route(er.router, sigma);
      std::string defect = routed_family_defect(er.g, er.router, sigma, paths);
      if (!defect.empty())
        return {false, fmt("width %d: %s", width, defect.c_str())};
      ++families;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  }

  EmbeddedRouter er = embed_width(500, 8, rng);
  std::vector<int> sigma(8);
  std::iota(sigma.begin(), sigma.end(), 0);
  for (int trial = 0; trial < 1000; ++trial) {
    rng.shuffle(sigma);
    auto paths = route(er.router, sigma);
    std::string defect = routed_family_defect(er.g, er.router, sigma, paths);
    if (!defect.empty()) return {false, fmt("width 8 trial %d: %s", trial, defect.c_str())};
    ++families;
  }
  return {true, fmt("%d routed families verified (2 + 6 + 24 exhaustive, 1000 random at "
                    "width 8), all disjoint equal-length covers",
                    families)};
}

// ---------------------------------------------------------------- criterion 4

Outcome length_plan_exactness() {
  DeskScaleParams params;
  Rng rng(404);
  int balanced_ok = 0, unbalanced_ok = 0, redraws = 0;

  while (balanced_ok < 500) {
    int n = 1200 + static_cast<int>(rng.next_below(6801));
    int t = 2 + static_cast<int>(rng.next_below(4));
    int b = t * (t - 1) / 2;
    int k = static_cast<int>(rng.next_below(4));
    int router_len = 10 + static_cast<int>(rng.next_below(41));
    int m_prime = static_cast<int>(rng.next_below(11));
    int m = b + m_prime;
    LengthPlan plan;
    try {
      plan = plan_lengths_balanced(n, t, k, router_len, m_prime, m, params);
    } catch (const std::exception&) {
      ++redraws;
      continue;
    }
    long long g = params.scaled_log(n);
    if (plan.M != g + router_len + k + 1) return {false, "loop segment length off"};
    if (static_cast<int>(plan.q.size()) != b) return {false, "wrong q count"};
    long long loops = std::accumulate(plan.loop_counts.begin(), plan.loop_counts.end(), 0LL);
    if (loops != m_prime) return {false, "loop counts do not sum to m_prime"};
    long long target = static_cast<long long>(n) - static_cast<long long>(t) * t -
                       static_cast<long long>(router_len + 1) * m - m -
                       static_cast<long long>(m_prime) * (g - 1) -
                       static_cast<long long>(k) * m + 2LL * b;
    long long q_sum = 0, len_min = 0, len_max = 0;
    for (int p = 0; p < b; ++p) {
      auto [q_ij, q_ji] = plan.q[p];
      if (q_ji < params.scaled_log3(n)) return {false, "q below the scaled-log3 floor"};
      if (q_ij > static_cast<long long>(std::floor(0.99 * n)))
        return {false, "q above the 0.99n cap"};
      q_sum += q_ij + q_ji;
      long long len = q_ij + q_ji + static_cast<long long>(plan.loop_counts[p]) * plan.M;
      if (p == 0) len_min = len_max = len;
      len_min = std::min(len_min, len);
      len_max = std::max(len_max, len);
    }
    if (q_sum != target) return {false, fmt("vertex identity off by %lld", q_sum - target)};
    if (len_max - len_min > 1) return {false, "near-balance violated"};
    ++balanced_ok;
  }

  while (unbalanced_ok < 500) {
    int n = 300 + static_cast<int>(rng.next_below(8701));
    int t = 3 + static_cast<int>(rng.next_below(4));
    LengthPlan plan;
    try {
      plan = plan_lengths_unbalanced(n, t, params);
    } catch (const std::exception&) {
      ++redraws;
      continue;
    }
    long long pairs = static_cast<long long>(t) * (t - 1) / 2 - 1;
    if (static_cast<long long>(plan.ell.size()) != pairs) return {false, "wrong pair count"};
    for (auto [i, j] : plan.pair_keys)
      if (i == 0 && j == t - 1) return {false, "reserved pair was planned"};
    long long total = 0;
    for (long long ell : plan.ell) {
      if (ell < params.scaled_log(n)) return {false, "length below the scaled-log floor"};
      total += ell;
    }
    double nn = n;
    long long lo = static_cast<long long>(
        std::ceil((1.0 - params.p) * nn - 2.0 * params.beta_log * params.epsilon * nn - 1e-9));
    long long hi = static_cast<long long>(
        std::floor((1.0 - params.p) * nn - params.beta_log * params.epsilon * nn + 1e-9));
    if (total != plan.total || total < lo || total > hi)
      return {false, fmt("total %lld outside [%lld,%lld]", total, lo, hi)};
    ++unbalanced_ok;
  }

  return {true, fmt("500 balanced + 500 unbalanced plans integer-exact (%d infeasible "
                    "draws redrawn)",
                    redraws)};
}

// ---------------------------------------------------------------- criterion 5

Outcome absorber_variants() {
  DeskScaleParams params;
  ExperimentConfig host_cfg;
  host_cfg.family = "random_regular";
  host_cfg.n = 2000;
  host_cfg.d = 500;
  Graph g = family_graph(host_cfg, 0);
  Rng rng(505);

  std::string note;
  auto res = pick_reservoirs(g, 3, params, rng, &note);
  if (!res) return {false, "reservoirs: " + note};

  int n_z = res->r + res->k_res;
  std::vector<int> offsets(n_z);
  std::iota(offsets.begin(), offsets.end(), 0);
  rng.shuffle(offsets);
  TemplateOptions topts;
  topts.fanout = std::min(params.template_fanout, (params.absorb_path_size + 2) / 4);
  topts.degree_cap = std::min(params.template_degree, params.absorbers_per_vertex);
  topts.resample_budget = 1;
  topts.min_pass = 0.0;
  topts.planned_zprime.assign(offsets.begin(), offsets.begin() + res->r);
  auto tpl = build_template(res->r, res->k_res, rng, topts, &note);
  if (!tpl) return {false, "template: " + note};

  std::vector<int> counts(tpl->right_count());
  for (int s = 0; s < tpl->right_count(); ++s)
    counts[s] = static_cast<int>(tpl->right_adj[s].size());
  std::vector<char> forbidden(g.vertex_count(), 0);
  auto absorbers = build_absorbers(g, *res, counts, forbidden, 200, rng, &note);
  if (!absorbers) return {false, "absorbers: " + note};
  auto paths = assemble_absorbing_paths(g, *tpl, *absorbers, *res, params.absorb_path_size,
                                        forbidden, 256, rng, &note);
  if (!paths) return {false, "assembly: " + note};

  if (static_cast<int>(paths->paths.size()) != 3 * res->r)
    return {false, fmt("expected %d absorbing paths, got %zu", 3 * res->r,
                       paths->paths.size())};

  auto is_host_path = [&](const std::vector<int>& seq) {
    std::set<int> distinct(seq.begin(), seq.end());
    if (distinct.size() != seq.size()) return false;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
      if (!g.has_edge(seq[i], seq[i + 1])) return false;
    return true;
  };
  auto slot_vertex = [&](int slot) {
    int r1 = static_cast<int>(res->r1.size());
    return slot < r1 ? res->r1[slot] : res->r2[slot - r1];
  };

  int size_defects = 0, variant_checks = 0, variant_defects = 0;
  std::set<int> used;
  for (const auto& ap : paths->paths) {
    if (static_cast<int>(ap.vertices.size()) != params.absorb_path_size) ++size_defects;
    if (!is_host_path(ap.vertices)) ++variant_defects;
    for (int v : ap.vertices) {
      if (used.count(v)) ++variant_defects;
      used.insert(v);
    }
    if (ap.hosted.empty()) ++variant_defects;
    for (const auto& [slot, pr] : ap.hosted) {
      int owner = slot_vertex(slot);
      // Variant without the designated vertex: the path itself, with the
      // pair consecutive somewhere inside it.
      bool consecutive = false;
      std::vector<int> detour;
      for (std::size_t i = 0; i + 1 < ap.vertices.size(); ++i) {
        bool fwd = ap.vertices[i] == pr.first && ap.vertices[i + 1] == pr.second;
        bool rev = ap.vertices[i] == pr.second && ap.vertices[i + 1] == pr.first;
        if (fwd || rev) {
          consecutive = true;
          // Variant with the designated vertex spliced into the pair.
          detour = ap.vertices;
          detour.insert(detour.begin() + i + 1, owner);
        }
      }
      variant_checks += 2;
      if (!consecutive || detour.empty() || !is_host_path(detour) ||
          std::count(ap.vertices.begin(), ap.vertices.end(), owner) > 0)
        ++variant_defects;
    }
  }

  Outcome out;
  out.pass = size_defects == 0 && variant_defects == 0;
  out.detail = fmt("%zu absorbing paths of exactly absorb_path_size = %d vertices; "
                   "%d spliced/unspliced traversal variants verified, %d defects",
                   paths->paths.size(), params.absorb_path_size, variant_checks,
                   variant_defects);
  return out;
}

// ---------------------------------------------------------------- criterion 6

Outcome template_robustness() {
  int first_build_passes = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    TemplateOptions opts;  // samples = 200, min_pass = 1.0
    opts.resample_budget = 1;
    auto tpl = build_template(8, 4, rng, opts);
    if (tpl && tpl->sampled_robustness == 1.0) ++first_build_passes;
  }
  Outcome out;
  out.pass = first_build_passes >= 18;
  out.detail = fmt("%d/20 template seeds pass 200 sampled leftover matchings first-build",
                   first_build_passes);
  return out;
}

// ---------------------------------------------------------------- criterion 7

Outcome long_path_bound() {
  Rng rng(707);
  int done = 0, defects = 0;
  while (done < 50) {
    int n = 8 + static_cast<int>(rng.next_below(11));
    double p = 0.25 + 0.55 * (rng.next_below(1000) / 1000.0);
    Graph g = gnp(n, p, rng);
    int certified = 0;
    for (int m : {1, 2, 3}) {
      auto joined = is_joined_exhaustive(g, m);
      if (joined.has_value() && *joined) {
        certified = m;
        break;
      }
    }
    if (certified == 0) continue;
    std::vector<char> allowed(n, 1);
    ++done;
    try {
      auto path = dfs_long_path(g, allowed, rng, certified);
      if (static_cast<int>(path.size()) < n - 2 * certified + 1) ++defects;
    } catch (const std::exception&) {
      ++defects;
    }
  }
  Outcome out;
  out.pass = defects == 0;
  out.detail = fmt("50 exhaustively certified hosts (n <= 18, m in {1,2,3}), "
                   "%d paths below n - 2m edges",
                   defects);
  return out;
}

// ---------------------------------------------------------------- criterion 8

bool is_connected(const Graph& g) {
  int n = g.vertex_count();
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : g.neighbors(v))
      if (!seen[u]) {
        seen[u] = 1;
        ++count;
        stack.push_back(u);
      }
  }
  return count == n;
}

Outcome oracle_agreement() {
  DeskScaleParams tiny;
  tiny.c = 2.0;    // lets t in {3,4} through the c*sqrt(n) cap on n <= 8
  tiny.mu = 0.01;  // sparse tiny hosts stay above the degree floor
  Rng rng(808);
  int sampled = 0, successes = 0, unconfirmed = 0;
  while (sampled < 500) {
    int n = 5 + static_cast<int>(rng.next_below(4));
    double p = 0.3 + 0.55 * (rng.next_below(1000) / 1000.0);
    Graph g = gnp(n, p, rng);
    if (!is_connected(g)) continue;
    int t = 3 + static_cast<int>(rng.next_below(2));
    if (n < t + 1) continue;
    ++sampled;
    PipelineOutcome out = pipeline_joined(g, t, tiny, sampled);
    if (!out.report.success) continue;
    ++successes;
    OracleResult oracle = oracle_exists(g, t, SubdivMode::nearly_balanced_spanning);
    if (!oracle.exists) ++unconfirmed;
  }

  // Corrupted fixtures: a valid structure on K_8, relabeled per fixture, then
  // broken one way per kind; every corruption must be rejected.
  int rejected = 0, fixture_count = 0, sane = 0;
  for (int k = 0; k < 50; ++k) {
    auto rho = [&](int v) { return (v + k) % 8; };
    Graph k8 = complete_graph(8);
    Subdivision base;
    base.t = 3;
    base.branch = {rho(0), rho(1), rho(2)};
    base.paths = {{rho(0), rho(3), rho(1)},
                  {rho(0), rho(4), rho(2)},
                  {rho(1), rho(5), rho(6), rho(7), rho(2)}};
    if (verify(k8, base, SubdivMode::nearly_balanced_spanning).ok) ++sane;

    ++fixture_count;
    int kind = k % 4;
    if (kind == 0) {
      // Edge deletion: the host loses an edge the structure uses.
      std::vector<std::pair<int, int>> edges;
      for (auto [u, v] : k8.edges())
        if (!((u == rho(5) && v == rho(6)) || (u == rho(6) && v == rho(5))))
          edges.push_back({u, v});
      Graph hollowed(8, edges);
      if (!verify(hollowed, base, SubdivMode::any).ok) ++rejected;
    } else if (kind == 1) {
      // Interior overlap: two branching paths share an interior vertex.
      Subdivision bad = base;
      bad.paths[1] = {rho(0), rho(3), rho(2)};
      if (!verify(k8, bad, SubdivMode::any).ok) ++rejected;
    } else if (kind == 2) {
      // Coverage gap: one vertex dropped from the long path.
      Subdivision bad = base;
      bad.paths[2] = {rho(1), rho(5), rho(6), rho(2)};
      if (!verify(k8, bad, SubdivMode::spanning).ok) ++rejected;
    } else {
      // Imbalance: lengths 1, 1, 6 admit no single +-1 window.
      Subdivision bad = base;
      bad.paths[0] = {rho(0), rho(1)};
      bad.paths[1] = {rho(0), rho(2)};
      bad.paths[2] = {rho(1), rho(3), rho(4), rho(5), rho(6), rho(7), rho(2)};
      if (!verify(k8, bad, SubdivMode::nearly_balanced_spanning).ok) ++rejected;
    }
  }

  Outcome out;
  out.pass = unconfirmed == 0 && successes > 0 && rejected == 50 && sane == 50;
  out.detail = fmt("500 connected hosts on n <= 8: %d constructive successes, %d without "
                   "oracle confirmation; %d/%d corrupted fixtures rejected",
                   successes, unconfirmed, rejected, fixture_count);
  return out;
}

// ---------------------------------------------------------------- criterion 9

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

// Summary-row rate for one t, or -1 when absent.
double csv_rate(const std::string& csv, int t) {
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    auto f = split_csv_line(line);
    if (f.size() >= 5 && f[3] == "summary" && f[2] == std::to_string(t) &&
        f[4].rfind("rate=", 0) == 0)
      return std::stod(f[4].substr(5));
  }
  return -1.0;
}

int csv_max_success_balance(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  int worst = -1;
  while (std::getline(in, line)) {
    auto f = split_csv_line(line);
    if (f.size() >= 7 && f[4] == "success") worst = std::max(worst, std::stoi(f[6]));
  }
  return worst;
}

Outcome construction_success_rates() {
  auto t0 = Clock::now();

  ExperimentConfig joined;
  joined.pipeline = "joined";
  joined.family = "random_regular";
  joined.n = 2000;
  joined.d = 500;
  joined.t_values = {3, 4, 5};
  joined.seed_count = 30;
  ExperimentResult joined_run = run_experiment(joined);
  double j3 = csv_rate(joined_run.csv, 3);
  double j4 = csv_rate(joined_run.csv, 4);
  double j5 = csv_rate(joined_run.csv, 5);

  ExperimentConfig unb;
  unb.pipeline = "unbalanced";
  unb.family = "random_regular";
  unb.n = 1000;
  unb.d = 50;
  unb.t_values = {3};
  unb.seed_count = 30;
  ExperimentResult unb_run = run_experiment(unb);
  double u3 = csv_rate(unb_run.csv, 3);

  ExperimentConfig bal;
  bal.pipeline = "balanced";
  bal.family = "random_regular";
  bal.n = 4000;
  bal.d = 200;
  bal.t_values = {3};
  bal.seed_count = 30;
  ExperimentResult bal_run = run_experiment(bal);
  double b3 = csv_rate(bal_run.csv, 3);
  int bal_worst = csv_max_success_balance(bal_run.csv);

  double secs = seconds_since(t0);
  Outcome out;
  out.pass = j3 >= 0.70 && j4 >= 0.70 && j5 >= 0.70 && u3 >= 0.70 && b3 >= 0.0 &&
             bal_worst <= 1 && secs < 1800.0;
  out.detail = fmt("joined(2000,500) t=3/4/5 rates %.2f/%.2f/%.2f, unbalanced(1000,50) t=3 "
                   "rate %.2f, balanced(4000,200) t=3 rate %.2f with max success balance %d, "
                   "%.0fs",
                   j3, j4, j5, u3, b3, bal_worst, secs);
  return out;
}

// --------------------------------------------------------------- criterion 10

Outcome perturbed_model() {
  ExperimentConfig cfg;
  cfg.pipeline = "perturbed";
  cfg.family = "two_cliques";
  cfg.n = 2000;
  cfg.perturb_p = 50.0 / 2000.0;
  cfg.t_values = {3};
  cfg.seed_count = 30;
  ExperimentResult sprinkled = run_experiment(cfg);
  double rate = csv_rate(sprinkled.csv, 3);

  cfg.perturb_p = 0.0;
  ExperimentResult control = run_experiment(cfg);
  double control_rate = csv_rate(control.csv, 3);

  Outcome out;
  out.pass = rate >= 0.60 && control_rate == 0.0;
  out.detail = fmt("two disjoint K_1000: sprinkle p=0.025 rate %.2f over 30 seeds, "
                   "p=0 control rate %.2f",
                   rate, control_rate);
  return out;
}

// --------------------------------------------------------------- criterion 11

std::optional<std::string> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(SUBDIV_BIN) + " " + args + " >/dev/null 2>&1";
  return std::system(cmd.c_str());
}

Outcome cli_determinism() {
  struct Step {
    std::string label;
    std::string args;  // %s expands to the output path
  };
  // Fixture graphs written once up front.
  if (run_cli("generate --family complete --n 40 --out acc11_k40.edges") != 0)
    return {false, "fixture generation failed"};
  if (run_cli("generate --family cycle --n 6 --out acc11_c6.edges") != 0)
    return {false, "fixture generation failed"};
  {
    std::ofstream conf("acc11_exp.conf");
    conf << "pipeline = joined\nfamily = complete\nn = 20\nt = 2,3\nseeds = 2\n";
    std::ofstream sig("acc11_sigma.txt");
    sig << "1 0\n";
  }
  if (run_cli("route --graph acc11_k40.edges --width 2 --seed 4 --json-out acc11_r.json") != 0)
    return {false, "router embedding failed"};

  std::vector<Step> steps = {
      {"generate", "generate --family random_regular --n 300 --d 12 --seed 3 --out %s"},
      {"find-subdivision",
       "find-subdivision --pipeline joined --t 3 --seed 1 --graph acc11_k40.edges --out %s"},
      {"experiment", "experiment --config acc11_exp.conf --out %s"},
      {"oracle", "oracle --graph acc11_c6.edges --t 3 --mode nearly_balanced_spanning --out %s"},
      {"route", "route --graph acc11_k40.edges --width 2 --seed 4 --json-out %s"},
      {"route-paths", "route --json acc11_r.json --sigma acc11_sigma.txt --out %s"},
  };

  std::vector<std::string> mismatched;
  for (const auto& step : steps) {
    std::string out_a = "acc11_" + step.label + "_a.out";
    std::string out_b = "acc11_" + step.label + "_b.out";
    char args_a[512], args_b[512];
    std::snprintf(args_a, sizeof args_a, step.args.c_str(), out_a.c_str());
    std::snprintf(args_b, sizeof args_b, step.args.c_str(), out_b.c_str());
    int rc_a = run_cli(args_a);
    int rc_b = run_cli(args_b);
    auto bytes_a = slurp(out_a);
    auto bytes_b = slurp(out_b);
    if (rc_a != rc_b || !bytes_a || !bytes_b || *bytes_a != *bytes_b)
      mismatched.push_back(step.label);
    std::remove(out_a.c_str());
    std::remove(out_b.c_str());
  }
  for (const char* f : {"acc11_k40.edges", "acc11_c6.edges", "acc11_exp.conf",
                        "acc11_sigma.txt", "acc11_r.json"})
    std::remove(f);

  Outcome out;
  out.pass = mismatched.empty();
  if (out.pass) {
    out.detail = fmt("%zu command repetitions byte-identical", steps.size());
  } else {
    out.detail = "mismatched outputs:";
    for (const auto& label : mismatched) out.detail += " " + label;
  }
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria = {
      {1, "spectral-soundness", spectral_soundness},
      {2, "extendability-implication", extendability_implication},
      {3, "router-totality", router_totality},
      {4, "length-plan-exactness", length_plan_exactness},
      {5, "absorber-variants", absorber_variants},
      {6, "template-robustness", template_robustness},
      {7, "long-path-bound", long_path_bound},
      {8, "oracle-agreement", oracle_agreement},
      {9, "construction-success-rates", construction_success_rates},
      {10, "perturbed-model", perturbed_model},
      {11, "cli-determinism", cli_determinism},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    Outcome outcome;
    try {
      outcome = criterion.check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failures;
    std::printf("criterion %2d %s: %s - %s\n", criterion.id, criterion.name,
                outcome.pass ? "PASS" : "FAIL", outcome.detail.c_str());
    std::fflush(stdout);
  }
  if (failures) std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
