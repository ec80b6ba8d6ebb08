#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "copos/demos.hpp"
#include "copos/hierarchy.hpp"
#include "copos/oracle.hpp"

using copos::brute_force_qop;
using copos::demo_combinatorial_pop;
using copos::demo_simplex_qop;
using copos::grid_search_pop;
using copos::grid_search_pop_with_eqs;
using copos::Interval;
using copos::OracleResult;
using copos::Polynomial;
using copos::QopModel;

TEST_CASE("binary enumeration on the simplex model") {
  QopModel q = demo_simplex_qop();
  OracleResult r = brute_force_qop(q);
  REQUIRE(r.value.is_finite());
  CHECK(r.value.value == doctest::Approx(-1.0));
  REQUIRE(r.argmin.has_value());
  CHECK((*r.argmin)[0] == doctest::Approx(1.0));
  CHECK((*r.argmin)[1] == doctest::Approx(0.0));

  // Flipping the sign moves the optimum to the other vertex.
  q.c = {0.5, 0.0};
  OracleResult r2 = brute_force_qop(q);
  REQUIRE(r2.value.is_finite());
  CHECK(r2.value.value == doctest::Approx(0.0));
  CHECK((*r2.argmin)[0] == doctest::Approx(0.0));
  CHECK((*r2.argmin)[1] == doctest::Approx(1.0));
}

TEST_CASE("infeasible rhs reports plus infinity") {
  QopModel q = demo_simplex_qop();
  q.bin = {0, 1};  // both binary, but the row forces w1 + w2 = -1
  q.b = {-1.0};
  OracleResult r = brute_force_qop(q);
  CHECK(r.value.is_pos_inf());
  CHECK_FALSE(r.argmin.has_value());
}

TEST_CASE("argmin re-verifies feasibility tightly") {
  QopModel q = demo_simplex_qop();
  q.comp = {{0, 1}};
  OracleResult r = brute_force_qop(q);
  REQUIRE(r.argmin.has_value());
  const auto& w = *r.argmin;
  CHECK(std::abs(w[0] + w[1] - 1.0) <= 1e-10);
  CHECK(std::abs(w[0] * w[1]) <= 1e-10);
  CHECK(std::abs(w[0] * (1.0 - w[0])) <= 1e-10);
}

TEST_CASE("unsupported structure is rejected") {
  QopModel q;
  q.n = 3;
  q.C = {{0.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};  // quadratic in free vars
  q.c = {0.0, 0.0, 0.0};
  q.A = {{1.0, 1.0, 1.0}};
  q.b = {1.0};
  q.bin = {0};
  CHECK_THROWS_AS(brute_force_qop(q), copos::Error);
}

TEST_CASE("grid search on a smooth objective") {
  // min (w1 - 0.5)^2 over [0,1], no constraints.
  Polynomial obj(1);
  obj.add_term({2}, 1.0);
  obj.add_term({1}, -1.0);
  obj.add_term({0}, 0.25);
  OracleResult r = grid_search_pop({obj}, {Interval{0.0, 1.0}}, 33);
  REQUIRE(r.value.is_finite());
  CHECK(r.value.value <= 1e-3);  // within grid spacing of the true 0
  CHECK(std::abs((*r.argmin)[0] - 0.5) <= r.grid_spacing);
}

TEST_CASE("grid search honors equality constraints") {
  // min w1 s.t. w1 (1 - w1) = 0 on [0,1] -> 0.
  Polynomial obj = Polynomial::variable(1, 0);
  Polynomial cons(1);
  cons.add_term({1}, 1.0);
  cons.add_term({2}, -1.0);
  OracleResult r = grid_search_pop({obj, cons}, {Interval{0.0, 1.0}}, 33);
  REQUIRE(r.value.is_finite());
  CHECK(r.value.value == doctest::Approx(0.0));
}

TEST_CASE("grid evaluation cap") {
  const int n = 5;
  std::vector<Polynomial> fs{Polynomial::variable(n, 0)};
  std::vector<Interval> box(n, Interval{0.0, 1.0});
  CHECK_THROWS_AS(grid_search_pop(fs, box, 40), copos::Error);  // 40^5 > 1e7
}

TEST_CASE("slack elimination reproduces the combinatorial optimum") {
  copos::PopModel pop = demo_combinatorial_pop();
  copos::FeasibilityEnvelope env = copos::propagate_envelope(pop, pop.m);
  std::vector<copos::LinearEquation> eqs;
  for (const copos::LinearForm& lf : env.linear_eqs) {
    eqs.push_back(copos::LinearEquation{lf.coef, -lf.constant});
  }
  REQUIRE(eqs.size() == 4);

  OracleResult r = grid_search_pop_with_eqs(pop.f, env.box, eqs, 33);
  REQUIRE(r.value.is_finite());
  CHECK(r.value.value == doctest::Approx(1.0));
  REQUIRE(r.argmin.has_value());
  // The argmin satisfies every constraint.
  for (int p = 1; p <= pop.m; ++p) {
    CHECK(std::abs(pop.f[p].evaluate(*r.argmin)) <= 1e-6);
  }
}
