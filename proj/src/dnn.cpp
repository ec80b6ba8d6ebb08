#include "copos/dnn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace copos {

namespace {

constexpr int kMaxMatrixOrder = 200;
constexpr int kMaxSweeps = 100;

}  // namespace

EigenDecomposition sym_eig(const SymMatrix& m) {
  const int n = m.dim();
  if (n > kMaxMatrixOrder) fail(ErrorCode::Unsupported, "matrix order above the supported cap");
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    v[i][i] = 1.0;
    for (int j = 0; j < n; ++j) a[i][j] = m(i, j);
  }

  double scale = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) scale += a[i][j] * a[i][j];
  }
  scale = std::sqrt(scale);
  const double stop = 1e-14 * (1.0 + scale);

  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) off = std::max(off, std::abs(a[i][j]));
    }
    if (off <= stop) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) <= stop * 1e-2) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v[k][p];
          const double vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }
  if (sweep >= kMaxSweeps) fail(ErrorCode::Numerical, "eigensolver did not converge");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) { return a[x][x] > a[y][y]; });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors.assign(n, std::vector<double>(n));
  for (int k = 0; k < n; ++k) {
    out.values[k] = a[order[k]][order[k]];
    for (int i = 0; i < n; ++i) out.vectors[k][i] = v[i][order[k]];
  }
  return out;
}

SymMatrix project_psd(const SymMatrix& m) {
  EigenDecomposition eig = sym_eig(m);
  const int n = m.dim();
  SymMatrix out(n, m.basis());
  for (int k = 0; k < n; ++k) {
    if (eig.values[k] <= 0.0) continue;
    const double lambda = eig.values[k];
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        out.set(i, j, out(i, j) + lambda * eig.vectors[k][i] * eig.vectors[k][j]);
      }
    }
  }
  return out;
}

SymMatrix project_nonneg(const SymMatrix& m) {
  SymMatrix out = m;
  for (double& v : out.data()) v = std::max(v, 0.0);
  return out;
}

namespace {

SymMatrix class_average_impl(const ConicProblem& problem, const SymMatrix& m) {
  SymMatrix out(m.dim(), m.basis());
  for (const auto& cls : problem.classes.classes) {
    double sum = 0.0;
    double count = 0.0;
    for (auto [i, j] : cls) {
      const double mult = (i == j) ? 1.0 : 2.0;
      sum += mult * m(i, j);
      count += mult;
    }
    const double mean = sum / count;
    for (auto [i, j] : cls) out.set(i, j, mean);
  }
  return out;
}

}  // namespace

AffineProjector::AffineProjector(const ConicProblem& problem) : problem_(&problem) {
  const int dim = problem.H0.dim();
  if (dim > kMaxMatrixOrder) fail(ErrorCode::Unsupported, "matrix order above the supported cap");

  constraint_reps_.push_back(class_average_impl(problem, problem.H0));
  rhs_.push_back(1.0);
  for (const SymMatrix& qp : problem.Qp) {
    constraint_reps_.push_back(class_average_impl(problem, qp));
    rhs_.push_back(0.0);
  }

  const int k = static_cast<int>(constraint_reps_.size());
  SymMatrix gram(k);
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) gram.set(i, j, constraint_reps_[i].inner(constraint_reps_[j]));
  }
  EigenDecomposition eig = sym_eig(gram);
  const double lambda_max = eig.values.empty() ? 0.0 : std::max(eig.values.front(), 0.0);
  const double threshold = 1e-10 * std::max(lambda_max, 1.0);

  gram_pinv_.assign(k, std::vector<double>(k, 0.0));
  for (int t = 0; t < k; ++t) {
    if (eig.values[t] <= threshold) continue;
    const double inv = 1.0 / eig.values[t];
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        gram_pinv_[i][j] += inv * eig.vectors[t][i] * eig.vectors[t][j];
      }
    }
  }
}

SymMatrix AffineProjector::class_average(const SymMatrix& m) const {
  return class_average_impl(*problem_, m);
}

SymMatrix AffineProjector::apply(const SymMatrix& m, bool check_residual) const {
  SymMatrix x = class_average_impl(*problem_, m);
  const int k = static_cast<int>(constraint_reps_.size());
  std::vector<double> residual(k);
  for (int i = 0; i < k; ++i) residual[i] = constraint_reps_[i].inner(x) - rhs_[i];
  std::vector<double> y(k, 0.0);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) y[i] += gram_pinv_[i][j] * residual[j];
  }
  for (int i = 0; i < k; ++i) {
    if (y[i] == 0.0) continue;
    SymMatrix scaled = constraint_reps_[i];
    scaled *= y[i];
    x -= scaled;
  }
  if (check_residual) {
    double max_residual = 0.0;
    for (int i = 0; i < k; ++i) {
      max_residual = std::max(max_residual, std::abs(constraint_reps_[i].inner(x) - rhs_[i]));
    }
    if (max_residual > 1e-6) {
      fail(ErrorCode::Inconsistent, "affine constraints are inconsistent under projection");
    }
  }
  return x;
}

namespace {

double psd_violation(const SymMatrix& m) {
  EigenDecomposition eig = sym_eig(m);
  return eig.values.empty() ? 0.0 : std::max(0.0, -eig.values.back());
}

double nonneg_violation(const SymMatrix& m) {
  double worst = 0.0;
  for (double v : m.data()) worst = std::max(worst, -v);
  return worst;
}

double class_spread(const ConicProblem& problem, const SymMatrix& m) {
  double worst = 0.0;
  for (const auto& cls : problem.classes.classes) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (auto [i, j] : cls) {
      lo = std::min(lo, m(i, j));
      hi = std::max(hi, m(i, j));
    }
    worst = std::max(worst, hi - lo);
  }
  return worst;
}

}  // namespace

SolveResult solve_dnn(const ConicProblem& problem, const SolveParams& params) {
  const int n = problem.H0.dim();
  if (n > kMaxMatrixOrder) fail(ErrorCode::Unsupported, "matrix order above the supported cap");

  SolveResult result;
  AffineProjector affine(problem);

  SymMatrix objective_step = problem.Q0;
  objective_step *= params.step / 3.0;

  SymMatrix z(n, problem.basis);
  try {
    z = affine.apply(z);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Inconsistent) {
      result.status = SolveStatus::InfeasibleLikely;
      result.X = z;
      return result;
    }
    throw;
  }

  SymMatrix u1(n, problem.basis);
  SymMatrix u2(n, problem.basis);
  SymMatrix u3(n, problem.basis);

  const double scale = 1.0 + problem.Q0.frobenius_norm();
  double primal = std::numeric_limits<double>::infinity();
  double dual = std::numeric_limits<double>::infinity();
  int iter = 0;
  for (; iter < params.max_iter; ++iter) {
    SymMatrix x1 = project_psd(z - u1);
    SymMatrix x2 = project_nonneg(z - u2);
    SymMatrix x3 = affine.apply(z - u3 - objective_step, /*check_residual=*/false);

    SymMatrix znew = x1;
    znew += x2;
    znew += x3;
    znew += u1;
    znew += u2;
    znew += u3;
    znew *= 1.0 / 3.0;

    u1 += x1 - znew;
    u2 += x2 - znew;
    u3 += x3 - znew;

    const double denom = 1.0 + znew.frobenius_norm();
    primal = std::max({(x1 - znew).frobenius_norm(), (x2 - znew).frobenius_norm(),
                       (x3 - znew).frobenius_norm()}) /
             denom;
    dual = (znew - z).frobenius_norm() / denom;
    z = znew;
    if (primal <= params.tol && dual <= params.tol) {
      ++iter;
      break;
    }
  }

  SymMatrix x = affine.apply(z, /*check_residual=*/false);
  result.X = x;
  result.iterations = iter;
  result.primal_residual = primal;
  result.psd_residual = psd_violation(x);
  result.nonneg_residual = nonneg_violation(x);
  result.class_residual = class_spread(problem, x);
  double affine_residual = std::abs(problem.H0.inner(x) - 1.0);
  for (const SymMatrix& qp : problem.Qp) {
    affine_residual = std::max(affine_residual, std::abs(qp.inner(x)));
  }
  result.affine_residual = affine_residual;
  result.lower_bound = problem.Q0.inner(x);

  const double worst = std::max({result.psd_residual, result.nonneg_residual,
                                 result.class_residual, result.affine_residual});
  if (primal <= params.tol && dual <= params.tol && worst <= std::sqrt(params.tol)) {
    result.status = SolveStatus::Converged;
  } else if (primal > 1e-2 * scale) {
    result.status = SolveStatus::InfeasibleLikely;
  } else {
    result.status = SolveStatus::MaxIter;
  }
  if (params.certify) {
    result.certified_bound =
        result.lower_bound - (result.primal_residual + worst) * problem.Q0.frobenius_norm();
  } else {
    result.certified_bound = result.lower_bound;
  }
  return result;
}

}  // namespace copos
