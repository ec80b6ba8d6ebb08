#pragma once

#include <optional>
#include <string>
#include <vector>

#include "copos/interval.hpp"
#include "copos/poly.hpp"
#include "copos/qop.hpp"
#include "copos/raycone.hpp"

namespace copos {

enum class OracleMethod { BinaryEnumeration, GridSearch };

struct OracleResult {
  ExtReal value = ExtReal::pos_inf();
  std::optional<std::vector<double>> argmin;
  OracleMethod method = OracleMethod::BinaryEnumeration;
  double feasibility_tol = 0.0;
  double grid_spacing = 0.0;  // grid search only
};

// Exact minimum over all binary assignments. Non-binary variables must
// either be pinned by the equalities once binaries are fixed (square
// invertible subsystem) or enter the objective linearly (then an LP per
// assignment); otherwise Error(Unsupported).
OracleResult brute_force_qop(const QopModel& model);

// Feasible-grid minimum of f0 with one coordinate-descent refinement pass.
// `box` bounds every variable; equality substitutions derived elsewhere may
// pin some variables, see grid_search_pop_with_eqs.
OracleResult grid_search_pop(const std::vector<Polynomial>& fs, const std::vector<Interval>& box,
                             int resolution, double feas_tol = 1e-6);

// Variant that eliminates variables through linear equations (highest index
// with a nonzero coefficient is solved for) before gridding the rest.
struct LinearEquation {
  std::vector<double> coef;  // over all n variables
  double rhs = 0.0;
};

OracleResult grid_search_pop_with_eqs(const std::vector<Polynomial>& fs,
                                      const std::vector<Interval>& box,
                                      const std::vector<LinearEquation>& eqs, int resolution,
                                      double feas_tol = 1e-6);

}  // namespace copos
