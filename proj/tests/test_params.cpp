#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "subdiv/params.hpp"

using namespace subdiv;

TEST_CASE("params text round trips through the printer") {
  DeskScaleParams p;
  p.C = 12.5;
  p.theta = 0.008;
  p.absorb_path_size = 24;
  p.rng_seed = 42;
  std::ostringstream out;
  print_params(out, p);
  std::istringstream in(out.str());
  DeskScaleParams q = parse_params(in);
  CHECK(q.C == 12.5);
  CHECK(q.theta == 0.008);
  CHECK(q.absorb_path_size == 24);
  CHECK(q.rng_seed == 42);
}

TEST_CASE("params parser enforces the line shape") {
  std::istringstream unknown("zeta = 3\n");
  CHECK_THROWS_AS(parse_params(unknown), std::invalid_argument);
  std::istringstream glued("C=10\n");
  CHECK_THROWS_AS(parse_params(glued), std::invalid_argument);
  std::istringstream trailing("C = 10 extra\n");
  CHECK_THROWS_AS(parse_params(trailing), std::invalid_argument);
  std::istringstream bad_value("max_retries = soon\n");
  CHECK_THROWS_AS(parse_params(bad_value), std::invalid_argument);
  std::istringstream fine("# comment only\n\nC = 11 # trailing comment\n");
  CHECK(parse_params(fine).C == 11.0);
}

TEST_CASE("params validation guards every range") {
  DeskScaleParams p;
  p.epsilon = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.p = 1.5;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.c = -0.1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.c = 2.0;  // above 1 is allowed: it only loosens the t caps
  CHECK_NOTHROW(p.validate());
  p = {};
  p.absorb_path_size = 4;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.beta_log = 0.5;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("scaled lengths grow with n and respect the floor of two") {
  DeskScaleParams p;
  CHECK(p.scaled_log(10) == 4);
  CHECK(p.scaled_log(1000) == 12);
  CHECK(p.scaled_log(2) == 2);
  CHECK(p.scaled_log3(1000) == 108);
  CHECK(p.scaled_log3(10) == 4);
  p.beta_log = 1.0;
  CHECK(p.scaled_log(10) == 2);  // floor keeps lengths usable
}

TEST_CASE("set_param distinguishes unknown keys from bad values") {
  DeskScaleParams p;
  CHECK(!set_param(p, "nope", "1"));
  CHECK(set_param(p, "mu", "0.3"));
  CHECK(p.mu == 0.3);
  CHECK_THROWS_AS(set_param(p, "mu", "many"), std::invalid_argument);
}
