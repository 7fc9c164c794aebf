#include <set>
#include <utility>
#include <vector>

#include "doctest.h"
#include "subdiv/absorption.hpp"
#include "subdiv/generators.hpp"
#include "subdiv/params.hpp"
#include "subdiv/rng.hpp"

using namespace subdiv;

namespace {

// Right slot -> reservoir vertex: r1 in slot order, then r2.
int slot_vertex(const ReservoirSystem& res, int slot) {
  int r1_size = static_cast<int>(res.r1.size());
  return slot < r1_size ? res.r1[slot] : res.r2[slot - r1_size];
}

struct Stage {
  Graph g;
  ReservoirSystem res;
};

Stage reservoir_stage() {
  Rng rng(12);
  Stage st{random_regular(600, 150, rng), {}};
  DeskScaleParams params;
  Rng lane(7);
  std::string note;
  auto res = pick_reservoirs(st.g, 3, params, lane, &note);
  REQUIRE_MESSAGE(res.has_value(), note);
  st.res = *res;
  return st;
}

}  // namespace

TEST_CASE("reservoirs are disjoint with the documented sizes and degree floors") {
  Stage st = reservoir_stage();
  const ReservoirSystem& res = st.res;
  int n = st.g.vertex_count();
  CHECK(res.r == 2);  // floor(0.004 * 600)
  int singles = 12;   // round(2 * 0.01 * 600)
  CHECK(res.k_res == 4 * 3 + 4 * singles);
  CHECK(static_cast<int>(res.r1.size()) == 2 * res.r);
  CHECK(static_cast<int>(res.r2.size()) == res.r + res.k_res);
  CHECK(res.r3.size() == 60u);  // round(0.1 * 600)

  std::set<int> all;
  for (const auto* part : {&res.r1, &res.r2, &res.r3})
    for (int v : *part) {
      CHECK(!all.count(v));
      all.insert(v);
    }

  // Every vertex keeps mu*|set|/2 edges into each link reservoir and mu*n/2
  // edges outside all three.
  DeskScaleParams params;
  std::vector<char> m1(n, 0), m2(n, 0), m3(n, 0);
  for (int v : res.r1) m1[v] = 1;
  for (int v : res.r2) m2[v] = 1;
  for (int v : res.r3) m3[v] = 1;
  for (int v = 0; v < n; ++v) {
    int d1 = 0, d2 = 0, d3 = 0;
    for (int u : st.g.neighbors(v)) {
      d1 += m1[u];
      d2 += m2[u];
      d3 += m3[u];
    }
    CHECK(d2 >= params.mu * res.r2.size() / 2.0);
    CHECK(d3 >= params.mu * res.r3.size() / 2.0);
    CHECK(st.g.degree(v) - d1 - d2 - d3 >= params.mu * n / 2.0);
  }
}

TEST_CASE("reservoir picking reports infeasible hosts") {
  Rng rng(3);
  DeskScaleParams params;
  std::string note;
  // A sparse cycle misses the minimum-degree floor mu*n.
  CHECK(!pick_reservoirs(cycle_graph(200), 3, params, rng, &note).has_value());
  CHECK(!note.empty());
}

TEST_CASE("template anchoring guarantees the planned leftover matches") {
  Rng rng(5);
  TemplateOptions opts;
  opts.fanout = 6;
  opts.degree_cap = 12;
  opts.samples = 100;
  opts.min_pass = 0.0;
  opts.resample_budget = 1;
  opts.planned_zprime = {0, 2, 5, 7, 9, 10, 11, 3};
  auto tpl = build_template(8, 4, rng, opts);
  REQUIRE(tpl.has_value());
  CHECK(tpl->r == 8);
  CHECK(tpl->right_count() == 28);
  std::vector<int> match;
  CHECK(template_matches(*tpl, opts.planned_zprime, &match));
  REQUIRE(match.size() == 24u);
  // The assignment is a system of distinct slots drawn from template edges.
  std::set<int> used;
  for (int i = 0; i < 24; ++i) {
    int slot = match[i];
    CHECK(!used.count(slot));
    used.insert(slot);
    bool edge = false;
    for (int s : tpl->left_adj[i]) edge |= (s == slot);
    CHECK(edge);
  }
}

TEST_CASE("template matching rejects malformed leftovers") {
  Rng rng(5);
  TemplateOptions opts;
  opts.min_pass = 0.0;
  opts.resample_budget = 1;
  auto tpl = build_template(4, 2, rng, opts);
  REQUIRE(tpl.has_value());
  CHECK_THROWS(template_matches(*tpl, {0, 0, 1, 2}));   // duplicate offset
  CHECK_THROWS(template_matches(*tpl, {0, 1, 2, 99}));  // out of range
}

TEST_CASE("default template build passes the full robustness gate") {
  Rng rng(31);
  auto tpl = build_template(8, 4, rng);
  REQUIRE(tpl.has_value());
  CHECK(tpl->sampled_robustness == 1.0);
}

TEST_CASE("absorbers are disjoint host triangles outside the reservoirs") {
  Stage st = reservoir_stage();
  std::vector<char> reserved(st.g.vertex_count(), 0);
  for (const auto* part : {&st.res.r1, &st.res.r2, &st.res.r3})
    for (int v : *part) reserved[v] = 1;

  std::vector<int> counts(3 * st.res.r + st.res.k_res, 2);
  std::vector<char> forbidden(st.g.vertex_count(), 0);
  Rng rng(9);
  std::string note;
  auto aset = build_absorbers(st.g, st.res, counts, forbidden, 64, rng, &note);
  REQUIRE_MESSAGE(aset.has_value(), note);
  REQUIRE(aset->pairs.size() == counts.size());
  std::set<int> used;
  for (std::size_t slot = 0; slot < aset->pairs.size(); ++slot) {
    int v = slot_vertex(st.res, static_cast<int>(slot));
    CHECK(aset->pairs[slot].size() == 2u);
    for (auto [a, b] : aset->pairs[slot]) {
      CHECK(st.g.has_edge(v, a));
      CHECK(st.g.has_edge(v, b));
      CHECK(st.g.has_edge(a, b));
      for (int x : {a, b}) {
        CHECK(!reserved[x]);
        CHECK(!used.count(x));
        used.insert(x);
      }
    }
  }
}

TEST_CASE("absorber counts must cover every reservoir slot") {
  Stage st = reservoir_stage();
  std::vector<int> counts(5, 1);  // wrong length
  std::vector<char> forbidden(st.g.vertex_count(), 0);
  Rng rng(9);
  CHECK(!build_absorbers(st.g, st.res, counts, forbidden, 64, rng).has_value());
}

TEST_CASE("assembled absorbing paths have the exact size and host their pairs") {
  Stage st = reservoir_stage();
  DeskScaleParams params;
  std::vector<char> forbidden(st.g.vertex_count(), 0);

  Rng rng(13);
  TemplateOptions topts;
  // A path of size s fits at most (s + 2) / 4 designated pairs.
  topts.fanout = (params.absorb_path_size + 2) / 4;
  topts.degree_cap = 40;
  topts.min_pass = 0.0;
  topts.resample_budget = 4;
  auto tpl = build_template(st.res.r, st.res.k_res, rng, topts);
  REQUIRE(tpl.has_value());

  std::vector<int> counts(tpl->right_count());
  for (std::size_t s = 0; s < counts.size(); ++s)
    counts[s] = static_cast<int>(tpl->right_adj[s].size());
  std::string note;
  auto absorbers = build_absorbers(st.g, st.res, counts, forbidden, 64, rng, &note);
  REQUIRE_MESSAGE(absorbers.has_value(), note);

  auto paths = assemble_absorbing_paths(st.g, *tpl, *absorbers, st.res, params.absorb_path_size,
                                        forbidden, 128, rng, &note);
  REQUIRE_MESSAGE(paths.has_value(), note);
  REQUIRE(static_cast<int>(paths->paths.size()) == 3 * st.res.r);

  std::set<int> used;
  for (const auto& ap : paths->paths) {
    CHECK(static_cast<int>(ap.vertices.size()) == params.absorb_path_size);
    for (std::size_t i = 0; i + 1 < ap.vertices.size(); ++i)
      CHECK(st.g.has_edge(ap.vertices[i], ap.vertices[i + 1]));
    for (int v : ap.vertices) {
      CHECK(!used.count(v));
      used.insert(v);
      CHECK(forbidden[v]);  // consumption is recorded for later stages
    }
    CHECK(!ap.hosted.empty());
    for (const auto& [slot, pr] : ap.hosted) {
      bool consecutive = false;
      for (std::size_t i = 0; i + 1 < ap.vertices.size(); ++i) {
        if ((ap.vertices[i] == pr.first && ap.vertices[i + 1] == pr.second) ||
            (ap.vertices[i] == pr.second && ap.vertices[i + 1] == pr.first))
          consecutive = true;
      }
      CHECK(consecutive);
      int v = slot_vertex(st.res, slot);
      CHECK(st.g.has_edge(v, pr.first));
      CHECK(st.g.has_edge(v, pr.second));
    }
  }
}
