#include "subdiv/routing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "subdiv/matching.hpp"

namespace subdiv {

namespace {

int next_pow2(int w) {
  int p = 1;
  while (p < w) p <<= 1;
  return p;
}

}  // namespace

ComparatorNetwork build_comparator_network(int width) {
  if (width < 1) throw std::invalid_argument("comparator network: width must be positive");
  ComparatorNetwork net;
  net.width = next_pow2(width);
  const int w = net.width;
  for (int k = 2; k <= w; k <<= 1) {
    for (int j = k >> 1; j > 0; j >>= 1) {
      std::vector<Comparator> layer;
      for (int i = 0; i < w; ++i) {
        const int l = i ^ j;
        if (l > i) layer.push_back({i, l, (i & k) == 0});
      }
      net.layers.push_back(std::move(layer));
    }
  }
  return net;
}

std::vector<int> apply_network(const ComparatorNetwork& net, std::vector<int> values) {
  if (static_cast<int>(values.size()) != net.width)
    throw std::invalid_argument("apply_network: value count != width");
  for (const auto& layer : net.layers) {
    for (const Comparator& c : layer) {
      const bool in_order = c.min_to_lo ? values[c.lo] <= values[c.hi] : values[c.lo] >= values[c.hi];
      if (!in_order) std::swap(values[c.lo], values[c.hi]);
    }
  }
  return values;
}

bool network_sorts_all_01(const ComparatorNetwork& net) {
  if (net.width > 20) throw std::invalid_argument("network_sorts_all_01: width too large");
  for (long long mask = 0; mask < (1LL << net.width); ++mask) {
    std::vector<int> v(net.width);
    for (int i = 0; i < net.width; ++i) v[i] = (mask >> i) & 1;
    v = apply_network(net, v);
    if (!std::is_sorted(v.begin(), v.end())) return false;
  }
  return true;
}

std::vector<int> SortingRouter::vertices() const {
  std::vector<int> out;
  out.insert(out.end(), terminals_in.begin(), terminals_in.end());
  for (const auto& layer : layers) {
    for (const auto& gd : layer.gadgets) {
      out.insert(out.end(), gd.tail_a.begin(), gd.tail_a.end());
      out.insert(out.end(), gd.tail_b.begin(), gd.tail_b.end());
      out.push_back(gd.port_a);
      out.push_back(gd.port_b);
    }
  }
  for (const auto& h : hookups) out.insert(out.end(), h.begin(), h.end());
  out.insert(out.end(), terminals_out.begin(), terminals_out.end());
  return out;
}

namespace {

// Uniform random walk of `steps` fresh vertices from z; marks them in
// layer_used. Returns nullopt (and unmarks) on a dead end.
std::optional<std::vector<int>> walk_tail(const ExtendableState& state, int z, int steps,
                                          std::vector<char>& layer_used, Rng& rng) {
  const Graph& g = state.host();
  std::vector<int> walk;
  int cur = z;
  std::vector<int> cands;
  for (int s = 0; s < steps; ++s) {
    cands.clear();
    for (int w : g.neighbors(cur))
      if (state.free(w) && !layer_used[w]) cands.push_back(w);
    if (cands.empty()) {
      for (int v : walk) layer_used[v] = 0;
      return std::nullopt;
    }
    cur = cands[rng.next_int(static_cast<int>(cands.size()))];
    layer_used[cur] = 1;
    walk.push_back(cur);
  }
  return walk;
}

std::vector<int> common_free_neighbors(const ExtendableState& state, int a, int b,
                                       const std::vector<char>& layer_used) {
  const Graph& g = state.host();
  const auto& na = g.neighbors(a);
  const auto& nb = g.neighbors(b);
  std::vector<int> inter;
  std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(), std::back_inserter(inter));
  std::vector<int> out;
  for (int v : inter)
    if (state.free(v) && !layer_used[v]) out.push_back(v);
  return out;
}

int pick_filler(const ExtendableState& state, Rng& rng) {
  const Graph& g = state.host();
  for (int tries = 0; tries < 400; ++tries) {
    const int v = rng.next_int(g.vertex_count());
    if (state.free(v) && state.free_degree(v) >= 2) return v;
  }
  for (int v = 0; v < g.vertex_count(); ++v)
    if (state.free(v)) return v;
  return -1;
}

}  // namespace

EmbedResult embed_router(ExtendableState& state, const std::vector<int>& terminals_in,
                         const std::vector<int>& terminals_out, const ComparatorNetwork& net,
                         Rng& rng, const EmbedOptions& opts) {
  EmbedResult res;
  const Graph& g = state.host();
  if (terminals_in.size() != terminals_out.size()) {
    res.note = "embed: terminal lists differ in size";
    return res;
  }
  const int real = static_cast<int>(terminals_in.size());
  if (real < 1) {
    res.note = "embed: no terminals";
    return res;
  }
  if (net.width < real) {
    res.note = "embed: network narrower than terminal lists";
    return res;
  }
  for (int v : terminals_in)
    if (!state.contains(v)) {
      res.note = "embed: input terminal not in state";
      return res;
    }
  for (int v : terminals_out)
    if (!state.contains(v)) {
      res.note = "embed: output terminal not in state";
      return res;
    }

  SortingRouter router;
  router.real_width = real;
  router.width = net.width;
  router.terminals_in = terminals_in;
  router.terminals_out = terminals_out;
  for (int i = real; i < net.width; ++i) {
    const int fin = pick_filler(state, rng);
    if (fin < 0) {
      res.note = "embed: no free vertex for a padding input terminal";
      return res;
    }
    state.add_isolated(fin);
    router.terminals_in.push_back(fin);
    const int fout = pick_filler(state, rng);
    if (fout < 0) {
      res.note = "embed: no free vertex for a padding output terminal";
      return res;
    }
    state.add_isolated(fout);
    router.terminals_out.push_back(fout);
  }

  std::vector<int> pos = router.terminals_in;
  std::vector<char> layer_used(g.vertex_count(), 0);

  // Single wire: the router degenerates to one bare path.
  if (net.width == 1) {
    for (int h = 1; h <= opts.max_hookup; ++h) {
      std::vector<char> blocked(g.vertex_count(), 0);
      for (int v = 0; v < g.vertex_count(); ++v) blocked[v] = state.free(v) ? 0 : 1;
      auto p = exact_free_path(g, blocked, pos[0], router.terminals_out[0], h, rng);
      if (p) {
        state.add_path(*p);
        router.hookups.assign(1, std::vector<int>(p->begin() + 1, p->end() - 1));
        router.path_length = h;
        res.router = std::move(router);
        return res;
      }
    }
    res.note = "embed: single-wire hookup failed at every length";
    return res;
  }

  int total_len = 0;
  for (std::size_t li = 0; li < net.layers.size(); ++li) {
    bool layer_done = false;
    for (int stage = opts.min_stage_length; stage <= opts.max_stage_length && !layer_done;
         ++stage) {
      std::fill(layer_used.begin(), layer_used.end(), 0);
      RouterLayer built;
      built.stage_length = stage;
      bool ok = true;
      for (const Comparator& c : net.layers[li]) {
        RouterGadget gd;
        gd.wire_a = c.lo;
        gd.wire_b = c.hi;
        gd.min_to_lo = c.min_to_lo;
        bool found = false;
        for (int attempt = 0; attempt < opts.gadget_retries && !found; ++attempt) {
          auto ta = walk_tail(state, pos[c.lo], stage - 1, layer_used, rng);
          if (!ta) continue;
          auto tb = walk_tail(state, pos[c.hi], stage - 1, layer_used, rng);
          if (!tb) {
            for (int v : *ta) layer_used[v] = 0;
            continue;
          }
          auto ports = common_free_neighbors(state, ta->back(), tb->back(), layer_used);
          if (static_cast<int>(ports.size()) < 2) {
            for (int v : *ta) layer_used[v] = 0;
            for (int v : *tb) layer_used[v] = 0;
            continue;
          }
          rng.shuffle(ports);
          gd.tail_a = std::move(*ta);
          gd.tail_b = std::move(*tb);
          gd.port_a = ports[0];
          gd.port_b = ports[1];
          layer_used[gd.port_a] = 1;
          layer_used[gd.port_b] = 1;
          found = true;
        }
        if (!found) {
          ok = false;
          break;
        }
        built.gadgets.push_back(std::move(gd));
      }
      if (!ok) continue;
      // Commit the whole layer to the state.
      for (const RouterGadget& gd : built.gadgets) {
        int cur = pos[gd.wire_a];
        for (int v : gd.tail_a) {
          state.add_edge(cur, v);
          cur = v;
        }
        const int ua = cur;
        cur = pos[gd.wire_b];
        for (int v : gd.tail_b) {
          state.add_edge(cur, v);
          cur = v;
        }
        const int ub = cur;
        state.add_edge(ua, gd.port_a);
        state.add_edge(ua, gd.port_b);
        state.add_edge(ub, gd.port_a);
        state.add_edge(ub, gd.port_b);
        pos[gd.wire_a] = gd.port_a;
        pos[gd.wire_b] = gd.port_b;
      }
      total_len += stage;
      router.layers.push_back(std::move(built));
      layer_done = true;
    }
    if (!layer_done) {
      res.note = "embed: layer " + std::to_string(li) + " failed at every stage length";
      return res;
    }
  }

  // Hookups: all wires must reach their output terminals with one common
  // length; retried at increasing lengths as a block.
  for (int h = opts.min_hookup; h <= opts.max_hookup; ++h) {
    std::vector<char> blocked(g.vertex_count(), 0);
    for (int v = 0; v < g.vertex_count(); ++v) blocked[v] = state.free(v) ? 0 : 1;
    std::vector<std::vector<int>> full(net.width);
    bool ok = true;
    for (int w = 0; w < net.width && ok; ++w) {
      auto p = exact_free_path(g, blocked, pos[w], router.terminals_out[w], h, rng);
      if (!p) {
        ok = false;
        break;
      }
      for (std::size_t i = 1; i + 1 < p->size(); ++i) blocked[(*p)[i]] = 1;
      full[w] = std::move(*p);
    }
    if (!ok) continue;
    router.hookups.resize(net.width);
    for (int w = 0; w < net.width; ++w) {
      state.add_path(full[w]);
      router.hookups[w].assign(full[w].begin() + 1, full[w].end() - 1);
    }
    router.path_length = total_len + h;
    res.router = std::move(router);
    return res;
  }
  res.note = "embed: hookup stage failed at every length";
  return res;
}

std::vector<std::vector<int>> route(const SortingRouter& router, const std::vector<int>& sigma) {
  const int w = router.width;
  if (static_cast<int>(sigma.size()) != router.real_width)
    throw std::invalid_argument("route: sigma size != real width");
  std::vector<int> val(w);
  std::vector<char> seen(w, 0);
  for (int i = 0; i < router.real_width; ++i) {
    if (sigma[i] < 0 || sigma[i] >= router.real_width || seen[sigma[i]])
      throw std::invalid_argument("route: sigma is not a bijection");
    seen[sigma[i]] = 1;
    val[i] = sigma[i];
  }
  for (int i = router.real_width; i < w; ++i) val[i] = i;

  std::vector<std::vector<int>> paths(w);
  std::vector<int> carrier(w);  // which path currently occupies each wire
  for (int i = 0; i < w; ++i) {
    paths[i].push_back(router.terminals_in[i]);
    carrier[i] = i;
  }
  for (const RouterLayer& layer : router.layers) {
    for (const RouterGadget& gd : layer.gadgets) {
      const int pa = carrier[gd.wire_a], pb = carrier[gd.wire_b];
      for (int v : gd.tail_a) paths[pa].push_back(v);
      for (int v : gd.tail_b) paths[pb].push_back(v);
      const int va = val[gd.wire_a], vb = val[gd.wire_b];
      const bool straight = gd.min_to_lo ? va < vb : va > vb;
      if (straight) {
        paths[pa].push_back(gd.port_a);
        paths[pb].push_back(gd.port_b);
      } else {
        paths[pa].push_back(gd.port_b);
        paths[pb].push_back(gd.port_a);
        std::swap(carrier[gd.wire_a], carrier[gd.wire_b]);
        std::swap(val[gd.wire_a], val[gd.wire_b]);
      }
    }
  }
  for (int wire = 0; wire < w; ++wire) {
    if (val[wire] != wire) throw std::logic_error("route: network failed to sort destinations");
    auto& p = paths[carrier[wire]];
    for (int v : router.hookups[wire]) p.push_back(v);
    p.push_back(router.terminals_out[wire]);
  }
  // Full verification: uniform length, endpoints, disjoint exact coverage.
  std::vector<int> all;
  for (int i = 0; i < w; ++i) {
    if (static_cast<int>(paths[i].size()) != router.path_length + 1)
      throw std::logic_error("route: non-uniform path length");
    if (paths[i].front() != router.terminals_in[i])
      throw std::logic_error("route: wrong start terminal");
    const int dest = i < router.real_width ? sigma[i] : i;
    if (paths[i].back() != router.terminals_out[dest])
      throw std::logic_error("route: wrong destination terminal");
    all.insert(all.end(), paths[i].begin(), paths[i].end());
  }
  std::vector<int> expect = router.vertices();
  std::sort(all.begin(), all.end());
  std::sort(expect.begin(), expect.end());
  if (all != expect) throw std::logic_error("route: paths do not cover the router exactly");
  for (std::size_t i = 1; i < all.size(); ++i)
    if (all[i] == all[i - 1]) throw std::logic_error("route: repeated vertex across paths");
  return paths;
}

std::string router_to_json(const SortingRouter& router) {
  nlohmann::json j;
  j["real_width"] = router.real_width;
  j["width"] = router.width;
  j["path_length"] = router.path_length;
  j["terminals_in"] = router.terminals_in;
  j["terminals_out"] = router.terminals_out;
  j["hookups"] = router.hookups;
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& layer : router.layers) {
    nlohmann::json jl;
    jl["stage_length"] = layer.stage_length;
    nlohmann::json gads = nlohmann::json::array();
    for (const auto& gd : layer.gadgets) {
      gads.push_back({{"wire_a", gd.wire_a},
                      {"wire_b", gd.wire_b},
                      {"min_to_lo", gd.min_to_lo},
                      {"tail_a", gd.tail_a},
                      {"tail_b", gd.tail_b},
                      {"port_a", gd.port_a},
                      {"port_b", gd.port_b}});
    }
    jl["gadgets"] = std::move(gads);
    layers.push_back(std::move(jl));
  }
  j["layers"] = std::move(layers);
  return j.dump(2);
}

SortingRouter router_from_json(const std::string& text) {
  SortingRouter router;
  try {
    nlohmann::json j = nlohmann::json::parse(text);
    router.real_width = j.at("real_width").get<int>();
    router.width = j.at("width").get<int>();
    router.path_length = j.at("path_length").get<int>();
    router.terminals_in = j.at("terminals_in").get<std::vector<int>>();
    router.terminals_out = j.at("terminals_out").get<std::vector<int>>();
    router.hookups = j.at("hookups").get<std::vector<std::vector<int>>>();
    for (const auto& jl : j.at("layers")) {
      RouterLayer layer;
      layer.stage_length = jl.at("stage_length").get<int>();
      for (const auto& jg : jl.at("gadgets")) {
        RouterGadget gd;
        gd.wire_a = jg.at("wire_a").get<int>();
        gd.wire_b = jg.at("wire_b").get<int>();
        gd.min_to_lo = jg.at("min_to_lo").get<bool>();
        gd.tail_a = jg.at("tail_a").get<std::vector<int>>();
        gd.tail_b = jg.at("tail_b").get<std::vector<int>>();
        gd.port_a = jg.at("port_a").get<int>();
        gd.port_b = jg.at("port_b").get<int>();
        layer.gadgets.push_back(std::move(gd));
      }
      router.layers.push_back(std::move(layer));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("router description malformed: ") + e.what());
  }
  if (router.width < 1 || router.real_width < 1 || router.real_width > router.width ||
      static_cast<int>(router.terminals_in.size()) != router.width ||
      static_cast<int>(router.terminals_out.size()) != router.width ||
      static_cast<int>(router.hookups.size()) != router.width)
    throw std::runtime_error("router description malformed: inconsistent widths");
  return router;
}

LengthPlan plan_lengths_unbalanced(int n, int t, const DeskScaleParams& params) {
  if (t < 2) throw std::invalid_argument("length plan: t must be at least 2");
  LengthPlan plan;
  plan.mode = LengthPlan::Mode::unbalanced;
  const long long b = static_cast<long long>(t) * (t - 1) / 2;
  for (int i = 0; i < t; ++i)
    for (int j = i + 1; j < t; ++j)
      if (!(i == 0 && j == t - 1)) plan.pair_keys.emplace_back(i, j);
  const long long pairs = b - 1;
  const double nn = static_cast<double>(n);
  const long long lo = static_cast<long long>(
      std::ceil((1.0 - params.p) * nn - 2.0 * params.beta_log * params.epsilon * nn - 1e-9));
  const long long hi = static_cast<long long>(
      std::floor((1.0 - params.p) * nn - params.beta_log * params.epsilon * nn + 1e-9));
  if (lo > hi)
    throw std::runtime_error("length plan infeasible: empty window [" + std::to_string(lo) + "," +
                             std::to_string(hi) + "]");
  const long long g_min = params.scaled_log(n);
  if (pairs == 0) {
    if (lo <= 0 && 0 <= hi) return plan;
    throw std::runtime_error(
        "length plan infeasible: no pairs available but the window excludes 0");
  }
  long long total = std::max(lo, pairs * g_min);
  if (total > hi)
    throw std::runtime_error("length plan infeasible: " + std::to_string(pairs) +
                             " pair lengths of at least " + std::to_string(g_min) +
                             " cannot stay within [" + std::to_string(lo) + "," +
                             std::to_string(hi) + "]");
  const long long base = total / pairs;
  const long long rem = total % pairs;
  for (long long i = 0; i < pairs; ++i) plan.ell.push_back(base + (i < rem ? 1 : 0));
  plan.total = total;
  return plan;
}

LengthPlan plan_lengths_balanced(int n, int t, int k, int router_len, int m_prime, int m,
                                 const DeskScaleParams& params) {
  if (t < 2) throw std::invalid_argument("length plan: t must be at least 2");
  if (k < 0 || router_len < 1 || m_prime < 0)
    throw std::invalid_argument("length plan: bad chain/router shape");
  LengthPlan plan;
  plan.mode = LengthPlan::Mode::balanced;
  plan.k = k;
  plan.m_prime = m_prime;
  const long long b = static_cast<long long>(t) * (t - 1) / 2;
  if (m != m_prime + b)
    throw std::invalid_argument("length plan: wire count must equal pair count plus loop count");
  for (int i = 0; i < t; ++i)
    for (int j = i + 1; j < t; ++j) plan.pair_keys.emplace_back(i, j);

  const long long g = params.scaled_log(n);
  plan.M = g + router_len + k + 1;
  const long long base_j = m_prime / b;
  const long long rem_j = m_prime % b;
  long long j_max = base_j + (rem_j > 0 ? 1 : 0);
  long long spread_t = 0;  // sum of (j_max - |J_p|)
  for (long long p = 0; p < b; ++p) {
    const long long jp = base_j + (p < rem_j ? 1 : 0);
    plan.loop_counts.push_back(static_cast<int>(jp));
    spread_t += j_max - jp;
  }

  // Exact vertex budget left for the 2B q-paths.
  const long long target = static_cast<long long>(n) - static_cast<long long>(t) * t -
                           static_cast<long long>(router_len + 1) * m - m -
                           static_cast<long long>(m_prime) * (g - 1) -
                           static_cast<long long>(k) * m + 2 * b;
  plan.total = target;
  const long long base_num = target - plan.M * spread_t;
  if (base_num < 2 * b)
    throw std::runtime_error("length plan infeasible: remaining budget " +
                             std::to_string(base_num) + " cannot fund " + std::to_string(2 * b) +
                             " q-paths");
  const long long base = base_num / b;
  const long long rem = base_num % b;
  const long long q_lo = params.scaled_log3(n);
  const long long q_hi = static_cast<long long>(std::floor(0.99 * n));
  long long check_sum = 0;
  long long len_min = 0, len_max = 0;
  for (long long p = 0; p < b; ++p) {
    const long long y = base + (j_max - plan.loop_counts[p]) * plan.M + (p < rem ? 1 : 0);
    const long long q_ij = (y + 1) / 2;
    const long long q_ji = y / 2;
    if (q_ji < q_lo)
      throw std::runtime_error("length plan infeasible: q = " + std::to_string(q_ji) +
                               " below the floor " + std::to_string(q_lo));
    if (q_ij > q_hi)
      throw std::runtime_error("length plan infeasible: q = " + std::to_string(q_ij) +
                               " above the cap " + std::to_string(q_hi));
    plan.q.emplace_back(q_ij, q_ji);
    check_sum += y;
    const long long len = q_ij + q_ji + plan.loop_counts[p] * plan.M;
    if (p == 0) {
      len_min = len_max = len;
    } else {
      len_min = std::min(len_min, len);
      len_max = std::max(len_max, len);
    }
  }
  if (check_sum != target) throw std::logic_error("length plan: q sum drifted off the identity");
  if (len_max - len_min > 1) throw std::logic_error("length plan: near-balance violated");
  return plan;
}

std::optional<MatchingChain> matching_chain(const Graph& g, const std::vector<int>& v_in,
                                            const std::vector<std::vector<int>>& layers,
                                            const std::vector<int>& v_out,
                                            std::string* fail_note) {
  const std::size_t m = v_in.size();
  std::vector<const std::vector<int>*> seq;
  seq.push_back(&v_in);
  for (const auto& l : layers) seq.push_back(&l);
  seq.push_back(&v_out);
  for (const auto* part : seq)
    if (part->size() != m) throw std::invalid_argument("matching chain: layer sizes differ");

  MatchingChain chain;
  std::vector<std::vector<int>> slot_maps;  // per layer pair: left slot -> right slot
  for (std::size_t s = 0; s + 1 < seq.size(); ++s) {
    MatchingResult mr = bipartite_graph_matching(g, *seq[s], *seq[s + 1]);
    if (!mr.left_saturated(static_cast<int>(m))) {
      if (fail_note) {
        *fail_note = "matching chain: layer " + std::to_string(s) +
                     " has no perfect matching; deficient set of size " +
                     std::to_string(mr.hall_violator.size());
      }
      return std::nullopt;
    }
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < m; ++i)
      edges.emplace_back((*seq[s])[i], (*seq[s + 1])[mr.match_left[i]]);
    chain.matchings.push_back(std::move(edges));
    slot_maps.push_back(std::move(mr.match_left));
  }
  chain.paths.resize(m);
  chain.composition.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    int slot = static_cast<int>(i);
    chain.paths[i].push_back((*seq[0])[slot]);
    for (std::size_t s = 0; s < slot_maps.size(); ++s) {
      slot = slot_maps[s][slot];
      chain.paths[i].push_back((*seq[s + 1])[slot]);
    }
    chain.composition[i] = slot;
  }
  return chain;
}

std::vector<int> assemble_sigma(const std::vector<int>& j_sizes, int m_prime) {
  const int b = static_cast<int>(j_sizes.size());
  long long sum = 0;
  for (int s : j_sizes) {
    if (s < 0) throw std::invalid_argument("assemble_sigma: negative block size");
    sum += s;
  }
  if (sum != m_prime)
    throw std::invalid_argument("assemble_sigma: block sizes do not sum to the loop count");
  const int m = b + m_prime;
  std::vector<int> sigma(m, -1);
  int offset = 0;
  for (int p = 0; p < b; ++p) {
    const int s = j_sizes[p];
    if (s == 0) {
      sigma[p] = p;
    } else {
      sigma[p] = b + offset;
      for (int z = 0; z + 1 < s; ++z) sigma[b + offset + z] = b + offset + z + 1;
      sigma[b + offset + s - 1] = p;
    }
    offset += s;
  }
  std::vector<char> seen(m, 0);
  for (int v : sigma) {
    if (v < 0 || v >= m || seen[v]) throw std::logic_error("assemble_sigma: not a bijection");
    seen[v] = 1;
  }
  return sigma;
}

}  // namespace subdiv
