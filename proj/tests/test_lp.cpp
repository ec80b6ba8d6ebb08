#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "copos/lp.hpp"
#include "copos/rng.hpp"

using copos::LpProblem;
using copos::LpResult;
using copos::LpStatus;
using copos::solve_lp;
using copos::SplitMix64;

TEST_CASE("simple optimum") {
  LpProblem p;
  p.objective = {-1.0, 0.0};
  p.eq_matrix = {{1.0, 1.0}};
  p.eq_rhs = {1.0};
  LpResult r = solve_lp(p);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == doctest::Approx(-1.0));
  CHECK(r.x[0] == doctest::Approx(1.0));
  CHECK(r.x[1] == doctest::Approx(0.0));
}

TEST_CASE("unbounded without constraints") {
  LpProblem p;
  p.objective = {-1.0};
  LpResult r = solve_lp(p);
  REQUIRE(r.status == LpStatus::Unbounded);
  REQUIRE(r.ray.size() == 1);
  CHECK(r.ray[0] > 0.0);
}

TEST_CASE("infeasible") {
  LpProblem p;
  p.objective = {0.0};
  p.eq_matrix = {{1.0}};
  p.eq_rhs = {-1.0};
  LpResult r = solve_lp(p);
  CHECK(r.status == LpStatus::Infeasible);
}

TEST_CASE("degenerate and redundant rows") {
  LpProblem p;
  p.objective = {1.0, 1.0, 0.0};
  p.eq_matrix = {{1.0, 1.0, 1.0}, {2.0, 2.0, 2.0}};
  p.eq_rhs = {1.0, 2.0};
  LpResult r = solve_lp(p);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == doctest::Approx(0.0));
  CHECK(r.x[2] == doctest::Approx(1.0));
}

TEST_CASE("weak duality spot check on random feasible programs") {
  SplitMix64 rng(404);
  for (int round = 0; round < 30; ++round) {
    const int n = rng.uniform_int(2, 6);
    const int m = rng.uniform_int(1, 3);
    // Build a feasible instance: pick x* >= 0, set b = A x*.
    std::vector<std::vector<double>> a(m, std::vector<double>(n));
    std::vector<double> xstar(n);
    for (double& v : xstar) v = rng.uniform(0.0, 2.0);
    std::vector<double> b(m, 0.0);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) {
        a[i][j] = rng.uniform_int(-2, 3);
        b[i] += a[i][j] * xstar[j];
      }
    }
    std::vector<double> c(n);
    for (double& v : c) v = rng.uniform_int(0, 4);  // nonnegative cost keeps it bounded

    LpProblem p{c, a, b};
    LpResult r = solve_lp(p);
    REQUIRE(r.status == LpStatus::Optimal);

    // Any feasible point bounds the optimum from above.
    double at_xstar = 0.0;
    for (int j = 0; j < n; ++j) at_xstar += c[j] * xstar[j];
    CHECK(r.value <= at_xstar + 1e-8);

    // The returned point is feasible.
    for (double v : r.x) CHECK(v >= -1e-8);
    for (int i = 0; i < m; ++i) {
      double s = -b[i];
      for (int j = 0; j < n; ++j) s += a[i][j] * r.x[j];
      CHECK(std::abs(s) <= 1e-8);
    }
  }
}

TEST_CASE("deterministic pivots") {
  LpProblem p;
  p.objective = {-1.0, -1.0, 0.0, 2.0};
  p.eq_matrix = {{1.0, 2.0, 1.0, 0.0}, {0.0, 1.0, -1.0, 1.0}};
  p.eq_rhs = {4.0, 1.0};
  LpResult first = solve_lp(p);
  LpResult second = solve_lp(p);
  REQUIRE(first.status == second.status);
  CHECK(first.value == second.value);
  CHECK(first.x == second.x);
}
