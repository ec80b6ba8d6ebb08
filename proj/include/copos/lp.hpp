#pragma once

#include <vector>

namespace copos {

// min objective . x  s.t.  eq_matrix x = eq_rhs,  x >= 0
struct LpProblem {
  std::vector<double> objective;
  std::vector<std::vector<double>> eq_matrix;
  std::vector<double> eq_rhs;
};

enum class LpStatus { Optimal, Unbounded, Infeasible };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  std::vector<double> x;    // optimal point; feasible point when unbounded
  std::vector<double> ray;  // improving recession direction when unbounded
};

LpResult solve_lp(const LpProblem& problem);

}  // namespace copos
