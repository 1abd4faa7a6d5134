#include "helpers.hpp"

#include "bagg/lp.hpp"

#include <doctest.h>

using namespace bagg;
using namespace bagg::testutil;

TEST_CASE("simple bounded maximum") {
  // max x + y s.t. x + 2y <= 4, 3x + y <= 6, x,y >= 0 -> (8/5, 6/5), value 14/5.
  LinearProgram lp = LinearProgram::make(2);
  lp.objective = {Rat(1), Rat(1)};
  lp.add_le({Rat(1), Rat(2)}, Rat(4));
  lp.add_le({Rat(3), Rat(1)}, Rat(6));
  auto sol = lp_solve(lp);
  REQUIRE(sol.has_value());
  CHECK(sol->value == R("14/5"));
  CHECK(sol->x == alloc({"8/5", "6/5"}));
}

TEST_CASE("equality constraints and degenerate optima") {
  // max 2x + 3y s.t. x + y = 1 -> (0,1), value 3.
  LinearProgram lp = LinearProgram::make(2);
  lp.objective = {Rat(2), Rat(3)};
  lp.add_eq({Rat(1), Rat(1)}, Rat(1));
  auto sol = lp_solve(lp);
  REQUIRE(sol.has_value());
  CHECK(sol->value == 3);
  CHECK(sol->x[0] + sol->x[1] == 1);
}

TEST_CASE("infeasibility is detected") {
  LinearProgram lp = LinearProgram::make(1);
  lp.objective = {Rat(1)};
  lp.add_eq({Rat(1)}, Rat(2));
  lp.add_le({Rat(1)}, Rat(1));
  CHECK(!lp_solve(lp).has_value());
}

TEST_CASE("unboundedness throws") {
  LinearProgram lp = LinearProgram::make(1);
  lp.objective = {Rat(1)};
  CHECK_THROWS_AS(lp_solve(lp), UnboundedError);
}

TEST_CASE("variable bounds, including negative lower bounds") {
  // max x + y with x in [-2, -1], y in [0, 1/3].
  LinearProgram lp = LinearProgram::make(2);
  lp.objective = {Rat(1), Rat(1)};
  lp.lower[0] = Rat(-2);
  lp.upper[0] = Rat(-1);
  lp.upper[1] = R("1/3");
  auto sol = lp_solve(lp);
  REQUIRE(sol.has_value());
  CHECK(sol->x == alloc({"-1", "1/3"}));
  CHECK(sol->value == R("-2/3"));
}

TEST_CASE("pinned variables via equal bounds") {
  LinearProgram lp = LinearProgram::make(2);
  lp.objective = {Rat(5), Rat(1)};
  lp.lower[0] = R("1/7");
  lp.upper[0] = R("1/7");
  lp.add_le({Rat(0), Rat(1)}, R("2/7"));
  auto sol = lp_solve(lp);
  REQUIRE(sol.has_value());
  CHECK(sol->x == alloc({"1/7", "2/7"}));
  CHECK(sol->value == Rat(1));
}

TEST_CASE("negative right-hand sides are normalized correctly") {
  // max x s.t. -x <= -3, x <= 5 -> x = 5; feasibility requires x >= 3.
  LinearProgram lp = LinearProgram::make(1);
  lp.objective = {Rat(1)};
  lp.add_le({Rat(-1)}, Rat(-3));
  lp.add_le({Rat(1)}, Rat(5));
  auto sol = lp_solve(lp);
  REQUIRE(sol.has_value());
  CHECK(sol->x[0] == 5);

  // Minimizing instead (objective -x) must land on the >= 3 face.
  lp.objective = {Rat(-1)};
  sol = lp_solve(lp);
  REQUIRE(sol.has_value());
  CHECK(sol->x[0] == 3);
}

TEST_CASE("transportation-style LP with exact rational data") {
  // Two suppliers (1/2 each), three consumers (1/3 each); max total shipped
  // with one forbidden lane.
  LinearProgram lp = LinearProgram::make(6);  // x[s][c] at 3s + c
  for (int v = 0; v < 6; ++v) lp.objective[v] = Rat(1);
  for (int s = 0; s < 2; ++s) {
    std::vector<Rat> coeffs(6, Rat(0));
    for (int c = 0; c < 3; ++c) coeffs[3 * s + c] = 1;
    lp.add_le(coeffs, R("1/2"));
  }
  for (int c = 0; c < 3; ++c) {
    std::vector<Rat> coeffs(6, Rat(0));
    for (int s = 0; s < 2; ++s) coeffs[3 * s + c] = 1;
    lp.add_le(coeffs, R("1/3"));
  }
  lp.upper[2] = Rat(0);  // forbid supplier 1 -> consumer 3
  auto sol = lp_solve(lp);
  REQUIRE(sol.has_value());
  CHECK(sol->value == 1);
}
