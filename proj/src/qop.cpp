#include "copos/qop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace copos {

void QopModel::validate() const {
  if (n < 1) fail(ErrorCode::InvalidArgument, "qop needs at least one variable");
  if (static_cast<int>(C.size()) != n) fail(ErrorCode::InvalidArgument, "C must be n x n");
  for (const auto& row : C) {
    if (static_cast<int>(row.size()) != n) fail(ErrorCode::InvalidArgument, "C must be n x n");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (C[i][j] != C[j][i]) fail(ErrorCode::InvalidArgument, "C must be symmetric");
    }
  }
  if (static_cast<int>(c.size()) != n) fail(ErrorCode::InvalidArgument, "c must have length n");
  if (A.size() != b.size()) fail(ErrorCode::InvalidArgument, "A and b row counts differ");
  for (const auto& row : A) {
    if (static_cast<int>(row.size()) != n) fail(ErrorCode::InvalidArgument, "A must have n columns");
  }
  for (int i : bin) {
    if (i < 0 || i >= n) fail(ErrorCode::InvalidArgument, "binary index out of range");
  }
  for (auto [j, k] : comp) {
    if (j < 0 || k < 0 || j >= n || k >= n || j >= k) {
      fail(ErrorCode::InvalidArgument, "complementarity pair must satisfy 0 <= j < k < n");
    }
  }
}

std::vector<Polynomial> constraint_polys(const QopModel& model, bool expand_comp) {
  model.validate();
  std::vector<Polynomial> fs;

  // f1 = |Aw - b|^2
  Polynomial f1(model.n);
  for (std::size_t r = 0; r < model.A.size(); ++r) {
    Polynomial row = Polynomial::constant(model.n, -model.b[r]);
    for (int j = 0; j < model.n; ++j) {
      if (model.A[r][j] != 0.0) row = row + Polynomial::variable(model.n, j).scaled(model.A[r][j]);
    }
    f1 = f1 + row * row;
  }
  fs.push_back(f1);

  // f2 = sum of complementarity products; zero polynomial when none. The
  // expanded form keeps one product per pair instead.
  if (expand_comp && !model.comp.empty()) {
    for (auto [j, k] : model.comp) {
      fs.push_back(Polynomial::variable(model.n, j) * Polynomial::variable(model.n, k));
    }
  } else {
    Polynomial f2(model.n);
    for (auto [j, k] : model.comp) {
      f2 = f2 + Polynomial::variable(model.n, j) * Polynomial::variable(model.n, k);
    }
    fs.push_back(f2);
  }

  // Binary constraints in ascending index order.
  std::vector<int> bins = model.bin;
  std::sort(bins.begin(), bins.end());
  for (int p : bins) {
    Polynomial wp = Polynomial::variable(model.n, p);
    fs.push_back(wp - wp * wp);
  }
  return fs;
}

std::vector<Polynomial> homogenized_quadratics(const QopModel& model, bool expand_comp) {
  model.validate();
  std::vector<Polynomial> out;

  Polynomial f0(model.n);
  for (int i = 0; i < model.n; ++i) {
    for (int j = 0; j < model.n; ++j) {
      if (model.C[i][j] != 0.0) {
        f0 = f0 + (Polynomial::variable(model.n, i) * Polynomial::variable(model.n, j))
                      .scaled(model.C[i][j]);
      }
    }
    if (model.c[i] != 0.0) f0 = f0 + Polynomial::variable(model.n, i).scaled(2.0 * model.c[i]);
  }
  out.push_back(f0.homogenized(2));
  for (const Polynomial& f : constraint_polys(model, expand_comp)) {
    out.push_back(f.homogenized(2));
  }
  return out;
}

namespace {

// max w_target over { w >= 0 : rows w = rhs }, phrased as an LP min of -w.
LpResult maximize_coordinate(const std::vector<std::vector<double>>& rows,
                             const std::vector<double>& rhs, int n, int target) {
  LpProblem lp;
  lp.objective.assign(n, 0.0);
  lp.objective[target] = -1.0;
  lp.eq_matrix = rows;
  lp.eq_rhs = rhs;
  return solve_lp(lp);
}

std::vector<double> unbounded_witness(const LpResult& r, int target, double wanted) {
  // Walk along the improving ray until the target coordinate clears `wanted`.
  std::vector<double> w = r.x;
  double have = w[target];
  double dir = r.ray[target];
  double t = dir > 0 ? std::max(0.0, (wanted - have) / dir) : 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) w[i] += t * r.ray[i];
  return w;
}

}  // namespace

BurerReport check_burer_conditions(const QopModel& model) {
  model.validate();
  constexpr double kTol = 1e-8;
  BurerReport report;

  std::vector<int> bins = model.bin;
  std::sort(bins.begin(), bins.end());
  for (int i : bins) {
    BurerReport::BinaryCheck check;
    check.index = i;
    LpResult r = maximize_coordinate(model.A, model.b, model.n, i);
    if (r.status == LpStatus::Infeasible) {
      check.ok = true;
      check.feasible_set_empty = true;
    } else if (r.status == LpStatus::Unbounded) {
      check.ok = false;
      check.bound = std::numeric_limits<double>::infinity();
      check.witness = unbounded_witness(r, i, 2.0);
    } else {
      check.bound = -r.value;
      check.ok = check.bound <= 1.0 + kTol;
      if (!check.ok) check.witness = r.x;
    }
    report.all_ok = report.all_ok && check.ok;
    report.binary.push_back(std::move(check));
  }

  // Recession cone checks for complementarity pairs: max w_t over
  // { Aw = 0, w >= 0, w_t <= 1 }; the bound-1 row makes the value finite and
  // zero exactly when w_t vanishes on the whole recession cone.
  std::vector<double> zero_rhs(model.A.size(), 0.0);
  for (auto pair : model.comp) {
    for (int t : {pair.first, pair.second}) {
      BurerReport::CompCheck check;
      check.pair = pair;
      check.var = t;
      std::vector<std::vector<double>> rows = model.A;
      std::vector<double> rhs = zero_rhs;
      std::vector<double> bound_row(model.n + 1, 0.0);
      bound_row[t] = 1.0;
      bound_row[model.n] = 1.0;  // slack column
      for (auto& row : rows) row.push_back(0.0);
      rows.push_back(bound_row);
      rhs.push_back(1.0);

      LpProblem lp;
      lp.objective.assign(model.n + 1, 0.0);
      lp.objective[t] = -1.0;
      lp.eq_matrix = rows;
      lp.eq_rhs = rhs;
      LpResult r = solve_lp(lp);
      if (r.status != LpStatus::Optimal) {
        fail(ErrorCode::Numerical, "recession-cone LP did not solve");
      }
      check.value = -r.value;
      check.ok = check.value <= kTol;
      if (!check.ok) check.witness = std::vector<double>(r.x.begin(), r.x.begin() + model.n);
      report.all_ok = report.all_ok && check.ok;
      report.comp.push_back(std::move(check));
    }
  }
  return report;
}

ConicProblem to_conic(const QopModel& model, GramMode mode, bool expand_comp) {
  std::vector<Polynomial> fbars = homogenized_quadratics(model, expand_comp);
  ConicProblem conic;
  conic.basis = full_basis(model.n, 1);
  conic.Q0 = gram_matrix(fbars[0], conic.basis, mode);
  for (std::size_t p = 1; p < fbars.size(); ++p) {
    conic.Qp.push_back(gram_matrix(fbars[p], conic.basis, mode));
  }
  conic.H0 = h0(conic.basis);
  conic.classes = consistency_classes(*conic.basis);
  return conic;
}

}  // namespace copos
