#include <sstream>

#include "doctest.h"
#include "subdiv/generators.hpp"
#include "subdiv/oracle.hpp"
#include "subdiv/subdivision.hpp"
#include "subdiv/verify.hpp"

using namespace subdiv;

namespace {

// Hamilton cycle of C_6 seen as three branch vertices with three paths.
Subdivision c6_triangle() {
  Subdivision s;
  s.t = 3;
  s.branch = {0, 2, 4};
  s.paths = {{0, 1, 2}, {0, 5, 4}, {2, 3, 4}};
  return s;
}

}  // namespace

TEST_CASE("pair index ranks pairs lexicographically") {
  CHECK(pair_index(0, 1, 4) == 0);
  CHECK(pair_index(0, 3, 4) == 2);
  CHECK(pair_index(1, 2, 4) == 3);
  CHECK(pair_index(2, 3, 4) == 5);
}

TEST_CASE("hamilton cycle of a six cycle is a valid balanced triangle subdivision") {
  VerifyResult r = verify(cycle_graph(6), c6_triangle(), SubdivMode::nearly_balanced_spanning);
  CHECK(r.ok);
  CHECK(r.balance == 0);
  CHECK(r.covered == 6);
}

TEST_CASE("verifier rejects each corruption with a diagnostic") {
  Graph g = cycle_graph(6);
  SUBCASE("missing host edge") {
    Graph broken(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});  // edge 5-0 removed
    VerifyResult r = verify(broken, c6_triangle(), SubdivMode::any);
    CHECK(!r.ok);
    CHECK(!r.diagnostic.empty());
  }
  SUBCASE("interior reuse across paths") {
    Subdivision s = c6_triangle();
    Graph host(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}, {1, 4}});
    s.paths[2] = {2, 1, 4};  // vertex 1 already interior to path 0
    VerifyResult r = verify(host, s, SubdivMode::any);
    CHECK(!r.ok);
  }
  SUBCASE("branch vertex used as an interior") {
    Graph host = complete_graph(6);
    Subdivision s = c6_triangle();
    s.paths[1] = {0, 2, 4};  // branch vertex 2 in the interior
    CHECK(!verify(host, s, SubdivMode::any).ok);
  }
  SUBCASE("coverage gap in spanning mode") {
    // The six cycle plus one extra vertex the subdivision never touches.
    Graph seven(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
    Subdivision s = c6_triangle();
    CHECK(!verify(seven, s, SubdivMode::spanning).ok);
    CHECK(verify(seven, s, SubdivMode::any).ok);
  }
  SUBCASE("imbalance outside the window") {
    Graph host = complete_graph(8);
    Subdivision s;
    s.t = 3;
    s.branch = {0, 1, 2};
    s.paths = {{0, 1}, {0, 2}, {1, 3, 4, 5, 6, 7, 2}};  // lengths 1, 1, 6
    CHECK(verify(host, s, SubdivMode::spanning).ok);
    VerifyResult r = verify(host, s, SubdivMode::nearly_balanced_spanning);
    CHECK(!r.ok);
  }
  SUBCASE("wrong endpoints") {
    Subdivision s = c6_triangle();
    s.paths[0] = {0, 1, 2, 3};  // must end at branch 2
    CHECK(!verify(g, s, SubdivMode::any).ok);
  }
  SUBCASE("duplicate branch vertices") {
    Subdivision s = c6_triangle();
    s.branch = {0, 2, 2};
    CHECK(!verify(g, s, SubdivMode::any).ok);
  }
}

TEST_CASE("two branch vertices spanning mode is a hamilton path check") {
  Graph g = cycle_graph(6);
  Subdivision s;
  s.t = 2;
  s.branch = {0, 5};
  s.paths = {{0, 1, 2, 3, 4, 5}};
  CHECK(verify(g, s, SubdivMode::spanning).ok);
  s.paths = {{0, 5}};
  CHECK(!verify(g, s, SubdivMode::spanning).ok);
  CHECK(verify(g, s, SubdivMode::any).ok);
}

TEST_CASE("length one paths are legal and plain edges form complete graph subdivisions") {
  Graph g = complete_graph(5);
  Subdivision s;
  s.t = 4;
  s.branch = {0, 1, 2, 3};
  s.paths = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  CHECK(verify(g, s, SubdivMode::any).ok);
  CHECK(!verify(g, s, SubdivMode::spanning).ok);  // vertex 4 uncovered
}

TEST_CASE("subdivision text io round trips and rejects malformed input") {
  Subdivision s = c6_triangle();
  std::ostringstream first;
  write_subdivision(first, s);
  std::istringstream in(first.str());
  Subdivision back = read_subdivision(in);
  CHECK(back.t == 3);
  CHECK(back.branch == s.branch);
  CHECK(back.paths == s.paths);
  std::ostringstream second;
  write_subdivision(second, back);
  CHECK(first.str() == second.str());

  std::istringstream missing_pair("3\n0 2 4\n0 1: 0 1 2\n");
  CHECK_THROWS(read_subdivision(missing_pair));
  std::istringstream bad_label("2\n0 3\n0 2: 0 1 2 3\n");
  CHECK_THROWS(read_subdivision(bad_label));
}

TEST_CASE("oracle matches hand-checked tiny instances") {
  // C_6 hosts a spanning triangle subdivision (the cycle itself).
  OracleResult c6 = oracle_exists(cycle_graph(6), 3, SubdivMode::spanning);
  CHECK(c6.exists);
  REQUIRE(c6.witness.has_value());
  CHECK(verify(cycle_graph(6), *c6.witness, SubdivMode::spanning).ok);

  // A path hosts no triangle subdivision at all.
  Graph path(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  CHECK(!oracle_exists(path, 3, SubdivMode::any).exists);

  // K_4 minus an edge still hosts a K_3 subdivision but not a spanning K_4 one.
  Graph diamond(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}});
  CHECK(oracle_exists(diamond, 3, SubdivMode::any).exists);
  CHECK(!oracle_exists(diamond, 4, SubdivMode::any).exists);

  // The petersen graph famously hosts K_4 subdivisions but has no triangle.
  OracleResult pet = oracle_exists(petersen_graph(), 4, SubdivMode::any);
  CHECK(pet.exists);
  CHECK(verify(petersen_graph(), *pet.witness, SubdivMode::any).ok);
}

TEST_CASE("oracle spanning verdicts respect the mode") {
  // C_7 with a chord: any-mode triangle subdivision exists; the spanning one
  // must cover all seven vertices.
  Graph g(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 0}, {0, 3}});
  OracleResult any = oracle_exists(g, 3, SubdivMode::any);
  CHECK(any.exists);
  OracleResult spanning = oracle_exists(g, 3, SubdivMode::spanning);
  CHECK(spanning.exists);
  CHECK(verify(g, *spanning.witness, SubdivMode::spanning).ok);
  CHECK(verify(g, *spanning.witness, SubdivMode::spanning).covered == 7);
}
