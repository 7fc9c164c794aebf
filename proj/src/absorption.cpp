#include "subdiv/absorption.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "subdiv/matching.hpp"
#include "subdiv/search.hpp"

namespace subdiv {

namespace {

constexpr int kR1 = 0, kR2 = 1, kR3 = 2;

int slot_vertex(const ReservoirSystem& res, int slot) {
  int n1 = static_cast<int>(res.r1.size());
  return slot < n1 ? res.r1[slot] : res.r2[slot - n1];
}

// Degree of every vertex into the set marked by `mask`.
std::vector<int> degrees_into(const Graph& g, const std::vector<char>& mask) {
  std::vector<int> deg(g.vertex_count(), 0);
  for (int v = 0; v < g.vertex_count(); ++v)
    for (int u : g.neighbors(v))
      if (mask[u]) ++deg[v];
  return deg;
}

struct ReservoirDraw {
  std::vector<int> sets[3];
  std::vector<char> masks[3];
  std::vector<int> degs[3];
  std::vector<char> any;

  void rebuild(const Graph& g) {
    any.assign(g.vertex_count(), 0);
    for (int i = 0; i < 3; ++i) {
      masks[i].assign(g.vertex_count(), 0);
      for (int v : sets[i]) masks[i][v] = any[v] = 1;
      degs[i] = degrees_into(g, masks[i]);
    }
  }
};

// Swaps members of reservoir `i` for neighbours of deficient vertices. Evicts
// the member whose removal endangers the fewest currently-tight vertices.
bool repair_reservoir(const Graph& g, ReservoirDraw& d, int i, double thresh, Rng& rng,
                      int budget) {
  auto deficient = [&](int v) { return d.degs[i][v] < thresh; };
  for (int step = 0; step < budget; ++step) {
    int bad = -1;
    for (int v = 0; v < g.vertex_count(); ++v)
      if (deficient(v)) {
        bad = v;
        break;
      }
    if (bad < 0) return true;

    std::vector<int> fresh;
    for (int u : g.neighbors(bad))
      if (!d.any[u]) fresh.push_back(u);
    if (fresh.empty()) return false;
    int incoming = fresh[rng.next_below(fresh.size())];

    int evict_pos = -1, evict_cost = -1;
    for (int pos = 0; pos < static_cast<int>(d.sets[i].size()); ++pos) {
      int w = d.sets[i][pos];
      int cost = 0;
      for (int x : g.neighbors(w))
        if (d.degs[i][x] - 1 < thresh) ++cost;
      if (evict_cost < 0 || cost < evict_cost) {
        evict_cost = cost;
        evict_pos = pos;
      }
    }
    int outgoing = d.sets[i][evict_pos];
    d.sets[i][evict_pos] = incoming;
    d.masks[i][outgoing] = 0;
    d.any[outgoing] = 0;
    d.masks[i][incoming] = 1;
    d.any[incoming] = 1;
    for (int x : g.neighbors(outgoing)) --d.degs[i][x];
    for (int x : g.neighbors(incoming)) ++d.degs[i][x];
  }
  return false;
}

}  // namespace

std::optional<ReservoirSystem> pick_reservoirs(const Graph& g, int t,
                                               const DeskScaleParams& params, Rng& rng,
                                               std::string* note) {
  auto fail = [&](const std::string& msg) -> std::optional<ReservoirSystem> {
    if (note) *note = msg;
    return std::nullopt;
  };
  int n = g.vertex_count();
  if (t < 2) return fail("pick_reservoirs: need t >= 2");
  int r = std::max(1, static_cast<int>(std::floor(params.theta * n)));
  int pairs = t * (t - 1) / 2;
  // Insertion fuel: 4 vertices per path segment plus 4 per leftover single,
  // so the single count 2*eps*n is rounded once and multiplied back by 4.
  int singles = static_cast<int>(std::llround(2.0 * params.epsilon * n));
  int k_res = 4 * pairs + 4 * singles;
  int s1 = 2 * r, s2 = r + k_res, s3 = static_cast<int>(std::llround(params.alpha * n));
  if (s1 + s2 + s3 >= n) return fail("pick_reservoirs: reservoirs would exhaust the graph");

  int mindeg = n;
  for (int v = 0; v < n; ++v) mindeg = std::min(mindeg, g.degree(v));
  if (mindeg < params.mu * n)
    return fail("pick_reservoirs: minimum degree " + std::to_string(mindeg) +
                " below mu*n = " + std::to_string(params.mu * n));

  const int sizes[3] = {s1, s2, s3};
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);

  for (int attempt = 0; attempt < params.max_retries; ++attempt) {
    rng.shuffle(order);
    ReservoirDraw d;
    int at = 0;
    for (int i = 0; i < 3; ++i) {
      d.sets[i].assign(order.begin() + at, order.begin() + at + sizes[i]);
      at += sizes[i];
    }
    d.rebuild(g);

    // Incoming-degree floors apply to the link reservoirs (r2, r3) and the
    // complement; nothing ever links into r1, whose members are absorption
    // targets supported by bulk triangles, and at working scale a set of 2r
    // vertices cannot double-dominate the whole host anyway.
    bool ok = true;
    for (int i = 1; i < 3 && ok; ++i) {
      double thresh = params.mu * sizes[i] / 2.0;
      ok = repair_reservoir(g, d, i, thresh, rng, 4 * n);
    }
    if (!ok) continue;

    // Exhaustive final check of the degree conditions.
    d.rebuild(g);
    for (int v = 0; v < n && ok; ++v) {
      for (int i = 1; i < 3; ++i)
        if (d.degs[i][v] < params.mu * sizes[i] / 2.0) ok = false;
      int outside = g.degree(v) - d.degs[0][v] - d.degs[1][v] - d.degs[2][v];
      if (outside < params.mu * n / 2.0) ok = false;
    }
    if (!ok) continue;

    ReservoirSystem res;
    res.r1 = std::move(d.sets[kR1]);
    res.r2 = std::move(d.sets[kR2]);
    res.r3 = std::move(d.sets[kR3]);
    res.r = r;
    res.k_res = k_res;
    return res;
  }
  return fail("pick_reservoirs: degree conditions unsatisfied after " +
              std::to_string(params.max_retries) + " draws");
}

bool template_matches(const BipTemplate& tpl, const std::vector<int>& zprime_offsets,
                      std::vector<int>* match_out) {
  int n_left = 3 * tpl.r;
  int n_y = 2 * tpl.r;
  std::vector<int> right_id(tpl.right_count(), -1);
  int active = 0;
  for (int s = 0; s < n_y; ++s) right_id[s] = active++;
  for (int off : zprime_offsets) {
    if (off < 0 || n_y + off >= tpl.right_count() || right_id[n_y + off] >= 0)
      throw std::invalid_argument("template_matches: bad leftover offsets");
    right_id[n_y + off] = active++;
  }
  std::vector<std::vector<int>> adj(n_left);
  for (int i = 0; i < n_left; ++i)
    for (int s : tpl.left_adj[i])
      if (right_id[s] >= 0) adj[i].push_back(right_id[s]);
  MatchingResult m = max_bipartite_matching(n_left, active, adj);
  if (!m.left_saturated(n_left)) return false;
  if (match_out) {
    // Translate right ids back to template slots.
    std::vector<int> inv(active, -1);
    for (int s = 0; s < tpl.right_count(); ++s)
      if (right_id[s] >= 0) inv[right_id[s]] = s;
    match_out->assign(n_left, -1);
    for (int i = 0; i < n_left; ++i) (*match_out)[i] = inv[m.match_left[i]];
  }
  return true;
}

std::optional<BipTemplate> build_template(int r, int k_res, Rng& rng, const TemplateOptions& opts,
                                          std::string* note) {
  auto fail = [&](const std::string& msg) -> std::optional<BipTemplate> {
    if (note) *note = msg;
    return std::nullopt;
  };
  if (r < 1 || k_res < 0) return fail("build_template: need r >= 1 and k_res >= 0");
  if (opts.fanout < 1 || opts.degree_cap < 1)
    return fail("build_template: fanout and degree cap must be positive");
  int n_left = 3 * r, n_y = 2 * r, n_z = r + k_res, n_right = n_y + n_z;
  if (!opts.planned_zprime.empty()) {
    if (static_cast<int>(opts.planned_zprime.size()) != r)
      return fail("build_template: planned leftover must have size r");
    std::vector<char> seen(n_z, 0);
    for (int off : opts.planned_zprime) {
      if (off < 0 || off >= n_z || seen[off])
        return fail("build_template: planned leftover offsets invalid");
      seen[off] = 1;
    }
  }

  double best = -1.0;
  for (int draw = 0; draw < opts.resample_budget; ++draw) {
    BipTemplate tpl;
    tpl.r = r;
    tpl.k_res = k_res;
    tpl.left_adj.assign(n_left, {});
    std::vector<int> right_deg(n_right, 0);
    std::vector<std::vector<char>> has(n_left, std::vector<char>(n_right, 0));
    auto add = [&](int i, int s) {
      tpl.left_adj[i].push_back(s);
      has[i][s] = 1;
      ++right_deg[s];
    };

    // A planned leftover anchors one guaranteed system of distinct
    // representatives: paths [0,2r) pair off with the permanent slots and
    // paths [2r,3r) with the planned residual slots.
    if (!opts.planned_zprime.empty()) {
      for (int i = 0; i < n_y; ++i) add(i, i);
      for (int q = 0; q < r; ++q) add(n_y + q, n_y + opts.planned_zprime[q]);
    }

    int target = std::min({opts.fanout, opts.degree_cap, n_right});
    for (int i = 0; i < n_left; ++i) {
      int tries = 40 * target;
      while (static_cast<int>(tpl.left_adj[i].size()) < target && tries-- > 0) {
        int s = static_cast<int>(rng.next_below(n_right));
        if (has[i][s] || right_deg[s] >= opts.degree_cap) continue;
        add(i, s);
      }
      if (tpl.left_adj[i].empty()) return fail("build_template: isolated path index");
    }

    tpl.right_adj.assign(n_right, {});
    for (int i = 0; i < n_left; ++i)
      for (int s : tpl.left_adj[i]) tpl.right_adj[s].push_back(i);

    int passes = 0;
    std::vector<int> offs(n_z);
    std::iota(offs.begin(), offs.end(), 0);
    for (int it = 0; it < opts.samples; ++it) {
      rng.shuffle(offs);
      std::vector<int> zprime(offs.begin(), offs.begin() + r);
      if (template_matches(tpl, zprime)) ++passes;
    }
    tpl.sampled_robustness = opts.samples > 0 ? double(passes) / opts.samples : 1.0;
    best = std::max(best, tpl.sampled_robustness);

    if (!opts.planned_zprime.empty() && !template_matches(tpl, opts.planned_zprime))
      throw std::logic_error("build_template: anchored matching missing");
    if (tpl.sampled_robustness + 1e-12 >= opts.min_pass) return tpl;
  }
  return fail("build_template: sampled robustness stayed below threshold after " +
              std::to_string(opts.resample_budget) + " draws (best " + std::to_string(best) +
              ")");
}

std::optional<AbsorberSet> build_absorbers(const Graph& g, const ReservoirSystem& res,
                                           const std::vector<int>& counts,
                                           const std::vector<char>& forbidden, int sample_size,
                                           Rng& rng, std::string* note) {
  auto fail = [&](const std::string& msg) -> std::optional<AbsorberSet> {
    if (note) *note = msg;
    return std::nullopt;
  };
  int n_right = static_cast<int>(res.r1.size() + res.r2.size());
  if (static_cast<int>(counts.size()) != n_right)
    return fail("build_absorbers: one count per reservoir slot expected");
  if (sample_size < 1) return fail("build_absorbers: sample size must be positive");

  std::vector<char> used = forbidden;
  used.resize(g.vertex_count(), 0);
  for (int v : res.r1) used[v] = 1;
  for (int v : res.r2) used[v] = 1;
  for (int v : res.r3) used[v] = 1;

  AbsorberSet out;
  out.pairs.assign(n_right, {});
  std::vector<char> in_x(g.vertex_count(), 0);
  for (int slot = 0; slot < n_right; ++slot) {
    int v = slot_vertex(res, slot);
    for (int q = 0; q < counts[slot]; ++q) {
      std::vector<int> cands;
      for (int u : g.neighbors(v))
        if (!used[u]) cands.push_back(u);
      rng.shuffle(cands);
      int half = std::min<int>(sample_size, static_cast<int>(cands.size()) / 2);
      // X = first window, Y = second window; look for one edge across.
      for (int i = 0; i < half; ++i) in_x[cands[i]] = 1;
      int a = -1, b = -1;
      for (int j = half; j < std::min<int>(2 * half + (sample_size - half), cands.size()) && a < 0;
           ++j) {
        for (int u : g.neighbors(cands[j]))
          if (u != v && in_x[u]) {
            a = u;
            b = cands[j];
            break;
          }
      }
      for (int i = 0; i < half; ++i) in_x[cands[i]] = 0;
      if (a < 0)
        return fail("build_absorbers: no edge inside the neighbourhood sample of vertex " +
                    std::to_string(v) + " (absorber " + std::to_string(q + 1) + " of " +
                    std::to_string(counts[slot]) + ")");
      used[a] = used[b] = 1;
      out.pairs[slot].push_back({a, b});
    }
  }
  return out;
}

std::optional<AbsorbingPaths> assemble_absorbing_paths(const Graph& g, const BipTemplate& tpl,
                                                       const AbsorberSet& absorbers,
                                                       const ReservoirSystem& res, int path_size,
                                                       std::vector<char>& forbidden,
                                                       int sample_size, Rng& rng,
                                                       std::string* note) {
  auto fail = [&](const std::string& msg) -> std::optional<AbsorbingPaths> {
    if (note) *note = msg;
    return std::nullopt;
  };
  int n_left = 3 * tpl.r;
  std::vector<char> used = forbidden;
  used.resize(g.vertex_count(), 0);
  for (int v : res.r1) used[v] = 1;
  for (int v : res.r2) used[v] = 1;
  for (int v : res.r3) used[v] = 1;

  // Position of each path index inside every right slot's listing.
  std::vector<std::unordered_map<int, int>> slot_rank(tpl.right_count());
  for (int s = 0; s < tpl.right_count(); ++s)
    for (int j = 0; j < static_cast<int>(tpl.right_adj[s].size()); ++j)
      slot_rank[s][tpl.right_adj[s][j]] = j;

  AbsorbingPaths out;
  out.paths.resize(n_left);
  std::vector<char> pool = used;  // evolving free mask, 1 = blocked
  // Every designated pair is reserved up front so links and padding for one
  // path can never consume another path's absorbers.
  for (const auto& slot_pairs : absorbers.pairs)
    for (auto [a, b] : slot_pairs) pool[a] = pool[b] = 1;
  auto free_mask = [&]() {
    std::vector<char> f(g.vertex_count(), 1);
    for (int v = 0; v < g.vertex_count(); ++v) f[v] = !pool[v];
    return f;
  };

  for (int i = 0; i < n_left; ++i) {
    int q = static_cast<int>(tpl.left_adj[i].size());
    if (q < 1) return fail("assemble_absorbing_paths: path index without designated pairs");
    if (4 * q - 2 > path_size)
      return fail("assemble_absorbing_paths: path size " + std::to_string(path_size) +
                  " too small for " + std::to_string(q) + " designated pairs");

    std::vector<std::pair<int, int>> chain;
    for (int s : tpl.left_adj[i]) {
      auto it = slot_rank[s].find(i);
      if (it == slot_rank[s].end() ||
          it->second >= static_cast<int>(absorbers.pairs[s].size()))
        return fail("assemble_absorbing_paths: absorber listing misses a designated pair");
      chain.push_back(absorbers.pairs[s][it->second]);
    }

    std::vector<int> verts;
    for (int j = 0; j < q; ++j) {
      auto [a, b] = chain[j];
      if (j > 0) {
        int prev = verts.back();
        auto link = three_path_link(g, prev, a, free_mask(), sample_size, rng);
        if (!link) {
          std::swap(a, b);  // the pair is a triangle with its owner; either end links
          link = three_path_link(g, prev, a, free_mask(), sample_size, rng);
        }
        if (!link)
          return fail("assemble_absorbing_paths: no length-3 link between absorbers of path " +
                      std::to_string(i));
        verts.push_back(link->x);
        verts.push_back(link->y);
        pool[link->x] = pool[link->y] = 1;
        chain[j] = {a, b};
      }
      verts.push_back(a);
      verts.push_back(b);
      pool[a] = pool[b] = 1;
    }

    // Pad to the exact size with a backtracking walk from the tail.
    int pad = path_size - static_cast<int>(verts.size());
    if (pad > 0) {
      int base = static_cast<int>(verts.size());
      std::vector<std::vector<int>> stk;  // stk[k]: untried extensions at depth k
      auto push_cands = [&]() {
        std::vector<int> c;
        for (int u : g.neighbors(verts.back()))
          if (!pool[u]) c.push_back(u);
        rng.shuffle(c);
        stk.push_back(std::move(c));
      };
      push_cands();
      long long nodes = 200000;
      bool stuck = false;
      while (static_cast<int>(verts.size()) - base < pad) {
        if (nodes-- <= 0) {
          stuck = true;
          break;
        }
        if (stk.back().empty()) {
          stk.pop_back();
          if (static_cast<int>(verts.size()) > base) {
            pool[verts.back()] = 0;
            verts.pop_back();
          }
          if (stk.empty()) {
            stuck = true;
            break;
          }
          continue;
        }
        int u = stk.back().back();
        stk.back().pop_back();
        if (pool[u]) continue;
        verts.push_back(u);
        pool[u] = 1;
        push_cands();
      }
      if (stuck)
        return fail("assemble_absorbing_paths: padding walk stuck on path " + std::to_string(i));
    }

    AbsorbingPath ap;
    ap.vertices = verts;
    for (int j = 0; j < q; ++j) ap.hosted.push_back({tpl.left_adj[i][j], chain[j]});

    // Invariants: a real path, each designated pair consecutive, the pair's
    // owner adjacent to both ends of its detour.
    if (static_cast<int>(ap.vertices.size()) != path_size)
      throw std::logic_error("assemble_absorbing_paths: wrong final size");
    for (size_t j = 1; j < ap.vertices.size(); ++j)
      if (!g.has_edge(ap.vertices[j - 1], ap.vertices[j]))
        throw std::logic_error("assemble_absorbing_paths: chain is not a path");
    for (auto& [slot, pr] : ap.hosted) {
      int owner = slot_vertex(res, slot);
      bool consecutive = false;
      for (size_t j = 1; j < ap.vertices.size(); ++j)
        if ((ap.vertices[j - 1] == pr.first && ap.vertices[j] == pr.second) ||
            (ap.vertices[j - 1] == pr.second && ap.vertices[j] == pr.first))
          consecutive = true;
      if (!consecutive || !g.has_edge(owner, pr.first) || !g.has_edge(owner, pr.second))
        throw std::logic_error("assemble_absorbing_paths: detour invariant violated");
    }
    out.paths[i] = std::move(ap);
  }

  forbidden = pool;
  return out;
}

std::optional<Subdivision> absorb(const Subdivision& sub, const Graph& g, const BipTemplate& tpl,
                                  const AbsorbingPaths& paths, const ReservoirSystem& res,
                                  const std::vector<int>& leftover_vertices, std::string* note) {
  auto fail = [&](const std::string& msg) -> std::optional<Subdivision> {
    if (note) *note = msg;
    return std::nullopt;
  };
  int n_left = 3 * tpl.r;
  if (static_cast<int>(leftover_vertices.size()) != n_left)
    return fail("absorb: leftover must have exactly 3r vertices, got " +
                std::to_string(leftover_vertices.size()));

  std::unordered_map<int, int> vertex_slot;
  for (int s = 0; s < static_cast<int>(res.r1.size()); ++s) vertex_slot[res.r1[s]] = s;
  for (int s = 0; s < static_cast<int>(res.r2.size()); ++s)
    vertex_slot[res.r2[s]] = static_cast<int>(res.r1.size()) + s;

  int n_y = 2 * tpl.r;
  std::vector<int> zprime;
  std::vector<char> seen_y(n_y, 0);
  for (int v : leftover_vertices) {
    auto it = vertex_slot.find(v);
    if (it == vertex_slot.end())
      return fail("absorb: leftover vertex " + std::to_string(v) + " is not a reservoir vertex");
    if (it->second < n_y)
      seen_y[it->second] = 1;
    else
      zprime.push_back(it->second - n_y);
  }
  for (int s = 0; s < n_y; ++s)
    if (!seen_y[s]) return fail("absorb: a permanent absorption target is missing from leftover");
  if (static_cast<int>(zprime.size()) != tpl.r)
    return fail("absorb: residual flexible set has the wrong size");

  std::vector<int> match;
  if (!template_matches(tpl, zprime, &match))
    return fail("absorb: no perfect matching for the realized leftover (template robustness "
                "violated; resample the template and retry)");

  Subdivision out = sub;
  for (int i = 0; i < n_left; ++i) {
    int slot = match[i];
    int v = slot_vertex(res, slot);
    const AbsorbingPath& ap = paths.paths[i];
    std::pair<int, int> pr{-1, -1};
    for (auto& [s, p] : ap.hosted)
      if (s == slot) pr = p;
    if (pr.first < 0)
      throw std::logic_error("absorb: matched slot has no hosted pair on its path");
    if (!g.has_edge(v, pr.first) || !g.has_edge(v, pr.second))
      throw std::logic_error("absorb: detour endpoints are not both adjacent to their owner");

    bool placed = false;
    for (auto& path : out.paths) {
      for (size_t j = 1; j < path.size() && !placed; ++j) {
        if ((path[j - 1] == pr.first && path[j] == pr.second) ||
            (path[j - 1] == pr.second && path[j] == pr.first)) {
          path.insert(path.begin() + j, v);
          placed = true;
        }
      }
      if (placed) break;
    }
    if (!placed)
      return fail("absorb: designated pair of path " + std::to_string(i) +
                  " is not consecutive in any branching path");
  }
  return out;
}

}  // namespace subdiv
