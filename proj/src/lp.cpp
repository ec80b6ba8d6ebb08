#include "copos/lp.hpp"

#include "copos/simplex.hpp"

namespace copos {

LpResult solve_lp(const LpProblem& problem) {
  detail::Simplex<double> solver;
  auto r = solver.solve(problem.eq_matrix, problem.eq_rhs, problem.objective);
  LpResult out;
  out.x = std::move(r.x);
  out.ray = std::move(r.ray);
  switch (r.status) {
    case detail::SimplexStatus::Optimal:
      out.status = LpStatus::Optimal;
      out.value = r.value;
      break;
    case detail::SimplexStatus::Unbounded:
      out.status = LpStatus::Unbounded;
      break;
    case detail::SimplexStatus::Infeasible:
      out.status = LpStatus::Infeasible;
      break;
  }
  return out;
}

}  // namespace copos
