#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "subdiv/experiment.hpp"
#include "subdiv/extendable.hpp"
#include "subdiv/generators.hpp"
#include "subdiv/graph.hpp"
#include "subdiv/oracle.hpp"
#include "subdiv/params.hpp"
#include "subdiv/pipelines.hpp"
#include "subdiv/rng.hpp"
#include "subdiv/routing.hpp"
#include "subdiv/spectra.hpp"
#include "subdiv/subdivision.hpp"
#include "subdiv/verify.hpp"

namespace {

using namespace subdiv;

constexpr const char* kCsvHeader = "pipeline,n,t,seed,outcome,stage,balance,coverage,millis";

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

SubdivMode parse_mode(const std::string& name) {
  if (name == "any") return SubdivMode::any;
  if (name == "spanning") return SubdivMode::spanning;
  return SubdivMode::nearly_balanced_spanning;
}

PipelineOutcome run_named_pipeline(const std::string& name, const Graph& g, double perturb_p,
                                   int t, const DeskScaleParams& params, std::uint64_t seed) {
  if (name == "unbalanced") return pipeline_unbalanced(g, t, params, seed);
  if (name == "balanced") return pipeline_balanced(g, t, params, seed);
  if (name == "joined") return pipeline_joined(g, t, params, seed);
  return pipeline_perturbed(g, perturb_p, t, params, seed);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
}

int cmd_generate(const std::string& family, int n, int d, int q, double family_p,
                 std::uint64_t seed, std::uint64_t rng_seed, const std::string& out_path) {
  if (family == "file")
    throw std::invalid_argument("generate produces edge lists; family 'file' reads one instead");
  ExperimentConfig cfg;
  cfg.family = family;
  cfg.n = n;
  cfg.d = d;
  cfg.q = q;
  cfg.family_p = family_p;
  cfg.params.rng_seed = rng_seed;
  cfg.validate();
  // Same generation lane as the experiment harness, so a harness row can be
  // regenerated from (family, seed) alone.
  Graph g = family_graph(cfg, seed);
  std::ostringstream text;
  write_edge_list(text, g);
  write_text(out_path, text.str());
  return 0;
}

int cmd_analyze(const std::string& graph_path, bool header) {
  Graph g = read_edge_list_file(graph_path);
  SpectralProfile prof = spectral_profile(g);
  if (header) std::cout << "n,d,lambda,residual,spectral_m\n";
  std::cout << prof.n << ',' << prof.d << ',' << fmt_g(prof.lambda) << ','
            << fmt_g(prof.residual) << ',' << prof.spectral_m << '\n';
  return 0;
}

int cmd_find(const std::string& pipeline, int t, std::uint64_t seed,
             const std::string& params_path, const std::string& graph_path, double perturb_p,
             const std::string& out_path, bool timing) {
  DeskScaleParams params = params_path.empty() ? DeskScaleParams{} : parse_params_file(params_path);
  Graph g = read_edge_list_file(graph_path);
  PipelineOutcome out = run_named_pipeline(pipeline, g, perturb_p, t, params, seed);
  const TrialReport& rep = out.report;
  for (const auto& w : rep.warnings) std::cerr << "warning: " << w << '\n';
  if (!rep.success) std::cerr << "failed at " << rep.stage << ": " << rep.reason << '\n';
  std::cout << kCsvHeader << '\n'
            << rep.pipeline << ',' << rep.n << ',' << rep.t << ',' << rep.seed << ','
            << (rep.success ? "success" : "failure") << ',' << rep.stage << ',' << rep.balance
            << ',' << rep.coverage << ',' << (timing ? rep.millis : 0) << '\n';
  if (rep.success && !out_path.empty()) write_subdivision_file(out_path, *out.subdivision);
  return rep.success ? 0 : 2;
}

int cmd_verify(const std::string& graph_path, const std::string& sub_path,
               const std::string& mode) {
  Graph g = read_edge_list_file(graph_path);
  Subdivision s = read_subdivision_file(sub_path);
  VerifyResult r = verify(g, s, parse_mode(mode));
  if (r.ok) {
    std::cout << "valid t=" << s.t << " balance=" << r.balance << " coverage=" << r.covered
              << '\n';
    return 0;
  }
  std::cout << "invalid: " << r.diagnostic << '\n';
  return 2;
}

int cmd_oracle(const std::string& graph_path, int t, const std::string& mode, long long budget,
               const std::string& out_path) {
  Graph g = read_edge_list_file(graph_path);
  OracleResult r = oracle_exists(g, t, parse_mode(mode), budget);
  if (!r.exists) {
    std::cout << "none\n";
    return 2;
  }
  std::cout << "exists\n";
  if (!out_path.empty()) write_subdivision_file(out_path, *r.witness);
  return 0;
}

int cmd_route_embed(const std::string& graph_path, int width, std::uint64_t seed,
                    const std::string& json_out) {
  Graph g = read_edge_list_file(graph_path);
  ComparatorNetwork net = build_comparator_network(width);
  if (2 * net.width > g.vertex_count())
    throw std::invalid_argument("host too small for " + std::to_string(net.width) +
                                " padded wires");
  Rng rng(seed);
  std::vector<int> vs(g.vertex_count());
  std::iota(vs.begin(), vs.end(), 0);
  rng.shuffle(vs);
  std::vector<int> tin(vs.begin(), vs.begin() + net.width);
  std::vector<int> tout(vs.begin() + net.width, vs.begin() + 2 * net.width);
  ExtendableState state(g, 10, 1);
  for (int v : tin) state.add_isolated(v);
  for (int v : tout) state.add_isolated(v);
  EmbedResult er = embed_router(state, tin, tout, net, rng);
  if (!er.router) {
    std::cerr << "router embedding failed: " << er.note << '\n';
    return 1;
  }
  std::cerr << "router width=" << er.router->width << " path_length=" << er.router->path_length
            << " vertices=" << er.router->vertex_count() << '\n';
  write_text(json_out, router_to_json(*er.router) + "\n");
  return 0;
}

int cmd_route_paths(const std::string& json_path, const std::string& sigma_path,
                    const std::string& out_path) {
  std::ifstream jf(json_path);
  if (!jf) throw std::runtime_error("cannot open " + json_path);
  std::stringstream jbuf;
  jbuf << jf.rdbuf();
  SortingRouter router = router_from_json(jbuf.str());

  std::string line;
  if (sigma_path.empty()) {
    std::getline(std::cin, line);
  } else {
    std::ifstream sf(sigma_path);
    if (!sf) throw std::runtime_error("cannot open " + sigma_path);
    std::getline(sf, line);
  }
  std::istringstream ls(line);
  std::vector<int> sigma;
  int image = 0;
  while (ls >> image) sigma.push_back(image);
  if (static_cast<int>(sigma.size()) != router.width)
    throw std::invalid_argument("permutation has " + std::to_string(sigma.size()) +
                                " entries, router width is " + std::to_string(router.width));

  std::vector<std::vector<int>> paths = route(router, sigma);
  std::ostringstream text;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    text << i << ' ' << sigma[i] << ':';
    for (int v : paths[i]) text << ' ' << v;
    text << '\n';
  }
  write_text(out_path, text.str());
  return 0;
}

int cmd_experiment(const std::string& config_path, int workers_override,
                   const std::string& out_override) {
  ExperimentConfig cfg = parse_experiment_file(config_path);
  if (workers_override > 0) cfg.workers = workers_override;
  if (!out_override.empty()) cfg.out_path = out_override;
  ExperimentResult res = run_experiment(cfg);
  write_text(cfg.out_path, res.csv);
  std::cerr << res.successes << "/" << res.trials << " trials succeeded\n";
  return res.exit_code();
}

int cmd_print_defaults() {
  std::cout << "# construction parameters\n";
  print_params(std::cout, DeskScaleParams{});
  std::cout << "\n# experiment harness keys (defaults shown; uncomment to override)\n"
            << "# pipeline = joined            (unbalanced | balanced | joined | perturbed)\n"
            << "# family = random_regular      (random_regular | paley | gnp | complete |\n"
            << "#                               cycle | petersen | two_cliques | file)\n"
            << "# n = 0\n"
            << "# d = 0                        (random_regular degree)\n"
            << "# q = 0                        (paley prime power)\n"
            << "# family_p = 0                 (gnp edge probability)\n"
            << "# graph = <edge-list path>     (family = file)\n"
            << "# perturb_p = 0                (sprinkle probability, perturbed pipeline)\n"
            << "# t = 3                        (comma-separated list)\n"
            << "# seeds = 1\n"
            << "# seed_begin = 0\n"
            << "# workers = 1\n"
            << "# deterministic_timing = true  (zero the millis column)\n"
            << "# out = <csv path>\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"constructive spanning clique-subdivision toolkit"};
  app.require_subcommand(1);
  int code = 0;

  auto* gen = app.add_subcommand("generate", "write a host graph as an edge list");
  std::string gen_family = "random_regular", gen_out;
  int gen_n = 0, gen_d = 0, gen_q = 0;
  double gen_p = 0.0;
  std::uint64_t gen_seed = 0, gen_rng_seed = 0;
  gen->add_option("--family", gen_family, "graph family")->capture_default_str();
  gen->add_option("--n", gen_n, "vertex count");
  gen->add_option("--d", gen_d, "degree (random_regular)");
  gen->add_option("--q", gen_q, "prime power (paley)");
  gen->add_option("--p", gen_p, "edge probability (gnp)");
  gen->add_option("--seed", gen_seed, "trial seed (generation lane)")->capture_default_str();
  gen->add_option("--rng-seed", gen_rng_seed, "base rng_seed of the lane")->capture_default_str();
  gen->add_option("--out", gen_out, "output path (stdout when omitted)");
  gen->callback([&] {
    code = cmd_generate(gen_family, gen_n, gen_d, gen_q, gen_p, gen_seed, gen_rng_seed, gen_out);
  });

  auto* ana = app.add_subcommand("analyze", "spectral profile of a regular host as one CSV row");
  std::string ana_graph;
  bool ana_header = false;
  ana->add_option("--graph", ana_graph, "edge-list path")->required();
  ana->add_flag("--header", ana_header, "print the column header line first");
  ana->callback([&] { code = cmd_analyze(ana_graph, ana_header); });

  auto* find = app.add_subcommand("find-subdivision", "run one construction trial");
  std::string find_pipeline, find_params, find_graph, find_out;
  int find_t = 0;
  std::uint64_t find_seed = 0;
  double find_perturb = 0.0;
  bool find_timing = false;
  find->add_option("--pipeline", find_pipeline, "construction pipeline")
      ->required()
      ->check(CLI::IsMember({"unbalanced", "balanced", "joined", "perturbed"}));
  find->add_option("--t", find_t, "branch vertex count")->required();
  find->add_option("--seed", find_seed, "trial seed")->capture_default_str();
  find->add_option("--params", find_params, "parameter config file");
  find->add_option("--graph", find_graph, "edge-list path")->required();
  find->add_option("--perturb-p", find_perturb, "sprinkle probability (perturbed pipeline)");
  find->add_option("--out", find_out, "write the subdivision here on success");
  find->add_flag("--timing", find_timing, "report measured wall time in the millis column");
  find->callback([&] {
    code = cmd_find(find_pipeline, find_t, find_seed, find_params, find_graph, find_perturb,
                    find_out, find_timing);
  });

  auto* ver = app.add_subcommand("verify", "check a claimed subdivision against a host");
  std::string ver_graph, ver_sub, ver_mode = "any";
  ver->add_option("--graph", ver_graph, "edge-list path")->required();
  ver->add_option("--sub", ver_sub, "subdivision file")->required();
  ver->add_option("--mode", ver_mode, "validity mode")
      ->capture_default_str()
      ->check(CLI::IsMember({"any", "spanning", "nearly_balanced_spanning"}));
  ver->callback([&] { code = cmd_verify(ver_graph, ver_sub, ver_mode); });

  auto* ora = app.add_subcommand("oracle", "exhaustive existence check on a tiny host");
  std::string ora_graph, ora_mode = "any", ora_out;
  int ora_t = 0;
  long long ora_budget = 200'000'000;
  ora->add_option("--graph", ora_graph, "edge-list path")->required();
  ora->add_option("--t", ora_t, "branch vertex count")->required();
  ora->add_option("--mode", ora_mode, "validity mode")
      ->capture_default_str()
      ->check(CLI::IsMember({"any", "spanning", "nearly_balanced_spanning"}));
  ora->add_option("--budget", ora_budget, "search node budget")->capture_default_str();
  ora->add_option("--out", ora_out, "write the witness here when one exists");
  ora->callback([&] { code = cmd_oracle(ora_graph, ora_t, ora_mode, ora_budget, ora_out); });

  auto* rt = app.add_subcommand("route",
                                "embed a permutation router (--graph) or route a "
                                "permutation through one (--json)");
  std::string rt_graph, rt_json_out, rt_json, rt_sigma, rt_out;
  int rt_width = 2;
  std::uint64_t rt_seed = 0;
  rt->add_option("--graph", rt_graph, "edge-list path (embed form)");
  rt->add_option("--width", rt_width, "wire count (embed form)")->capture_default_str();
  rt->add_option("--seed", rt_seed, "embedding seed")->capture_default_str();
  rt->add_option("--json-out", rt_json_out, "router description output (embed form)");
  rt->add_option("--json", rt_json, "router description input (route form)");
  rt->add_option("--sigma", rt_sigma, "permutation file: one line, space-separated image "
                                      "(stdin when omitted)");
  rt->add_option("--out", rt_out, "path family output (route form)");
  rt->callback([&] {
    if (!rt_json.empty()) code = cmd_route_paths(rt_json, rt_sigma, rt_out);
    else if (!rt_graph.empty()) code = cmd_route_embed(rt_graph, rt_width, rt_seed, rt_json_out);
    else throw CLI::ValidationError("route", "pass --graph (embed form) or --json (route form)");
  });

  auto* exp = app.add_subcommand("experiment", "run a batch config and emit the trial CSV");
  std::string exp_config, exp_out;
  int exp_workers = 0;
  exp->add_option("--config", exp_config, "experiment config file")->required();
  exp->add_option("--workers", exp_workers, "override the config's worker count");
  exp->add_option("--out", exp_out, "override the config's output path");
  exp->callback([&] { code = cmd_experiment(exp_config, exp_workers, exp_out); });

  auto* pd = app.add_subcommand("print-defaults", "print the default config keys");
  pd->callback([&] { code = cmd_print_defaults(); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return code;
}
