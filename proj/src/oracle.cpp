#include "copos/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace copos {

namespace {

constexpr double kEqTol = 1e-8;
constexpr std::int64_t kMaxGridEvals = 10'000'000;

double qop_objective(const QopModel& model, const std::vector<double>& w) {
  double v = 0.0;
  for (int i = 0; i < model.n; ++i) {
    for (int j = 0; j < model.n; ++j) v += w[i] * model.C[i][j] * w[j];
    v += 2.0 * model.c[i] * w[i];
  }
  return v;
}

bool qop_feasible(const QopModel& model, const std::vector<double>& w, double tol) {
  for (double wi : w) {
    if (wi < -tol) return false;
  }
  for (std::size_t r = 0; r < model.A.size(); ++r) {
    double s = -model.b[r];
    for (int j = 0; j < model.n; ++j) s += model.A[r][j] * w[j];
    if (std::abs(s) > tol) return false;
  }
  for (auto [j, k] : model.comp) {
    if (std::abs(w[j] * w[k]) > tol) return false;
  }
  for (int i : model.bin) {
    if (std::abs(w[i] * (1.0 - w[i])) > tol) return false;
  }
  return true;
}

// Gaussian elimination solve; returns false when the square system is singular.
bool solve_square(std::vector<std::vector<double>> m, std::vector<double> rhs,
                  std::vector<double>& out) {
  const int n = static_cast<int>(rhs.size());
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    double best = 1e-12;
    for (int r = col; r < n; ++r) {
      if (std::abs(m[r][col]) > best) {
        best = std::abs(m[r][col]);
        pivot = r;
      }
    }
    if (pivot < 0) return false;
    std::swap(m[col], m[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      double f = m[r][col] / m[col][col];
      if (f == 0.0) continue;
      for (int k = col; k < n; ++k) m[r][k] -= f * m[col][k];
      rhs[r] -= f * rhs[col];
    }
  }
  out.resize(n);
  for (int i = 0; i < n; ++i) out[i] = rhs[i] / m[i][i];
  return true;
}

bool lex_less(const std::vector<double>& a, const std::vector<double>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

OracleResult brute_force_qop(const QopModel& model) {
  model.validate();
  std::vector<int> bins = model.bin;
  std::sort(bins.begin(), bins.end());
  const int nb = static_cast<int>(bins.size());
  if (nb > 24) fail(ErrorCode::Unsupported, "too many binary variables to enumerate");

  std::vector<int> free_vars;
  std::vector<bool> is_bin(model.n, false);
  for (int i : bins) is_bin[i] = true;
  for (int i = 0; i < model.n; ++i) {
    if (!is_bin[i]) free_vars.push_back(i);
  }

  // Structure detection for the non-binary block.
  bool pinned = free_vars.empty();
  std::vector<std::vector<double>> free_cols;
  if (!pinned && static_cast<int>(model.A.size()) == static_cast<int>(free_vars.size())) {
    free_cols.assign(model.A.size(), std::vector<double>(free_vars.size()));
    for (std::size_t r = 0; r < model.A.size(); ++r) {
      for (std::size_t j = 0; j < free_vars.size(); ++j) free_cols[r][j] = model.A[r][free_vars[j]];
    }
    std::vector<double> probe;
    pinned = solve_square(free_cols, std::vector<double>(model.A.size(), 0.0), probe);
  }

  bool linear_in_free = true;
  for (int i : free_vars) {
    for (int j = 0; j < model.n; ++j) {
      if (model.C[i][j] != 0.0 || model.C[j][i] != 0.0) linear_in_free = false;
    }
    for (auto [j, k] : model.comp) {
      if (j == i || k == i) linear_in_free = false;  // LP path cannot honor products
    }
  }
  if (!pinned && !linear_in_free) {
    fail(ErrorCode::Unsupported,
         "non-binary variables are neither pinned by the equalities nor linear in the objective");
  }

  OracleResult result;
  result.method = OracleMethod::BinaryEnumeration;
  result.feasibility_tol = kEqTol;
  double best = std::numeric_limits<double>::infinity();
  std::optional<std::vector<double>> best_w;

  std::vector<double> w(model.n, 0.0);
  for (std::uint32_t mask = 0; mask < (1u << nb); ++mask) {
    for (int t = 0; t < nb; ++t) w[bins[t]] = (mask >> t) & 1 ? 1.0 : 0.0;

    bool have_completion = false;
    if (free_vars.empty()) {
      have_completion = true;
    } else if (pinned) {
      std::vector<double> rhs(model.A.size());
      for (std::size_t r = 0; r < model.A.size(); ++r) {
        double s = model.b[r];
        for (int i : bins) s -= model.A[r][i] * w[i];
        rhs[r] = s;
      }
      std::vector<double> sol;
      if (solve_square(free_cols, rhs, sol)) {
        for (std::size_t j = 0; j < free_vars.size(); ++j) w[free_vars[j]] = sol[j];
        have_completion = true;
      }
    } else {
      LpProblem lp;
      lp.objective.assign(model.n, 0.0);
      for (int i : free_vars) lp.objective[i] = 2.0 * model.c[i];
      lp.eq_matrix = model.A;
      lp.eq_rhs = model.b;
      // Pin the binaries with extra rows.
      for (int i : bins) {
        std::vector<double> row(model.n, 0.0);
        row[i] = 1.0;
        lp.eq_matrix.push_back(row);
        lp.eq_rhs.push_back(w[i]);
      }
      LpResult r = solve_lp(lp);
      if (r.status == LpStatus::Optimal) {
        w = r.x;
        have_completion = true;
      } else if (r.status == LpStatus::Unbounded) {
        result.value = ExtReal::neg_inf();
        result.argmin.reset();
        return result;
      }
    }

    if (!have_completion || !qop_feasible(model, w, kEqTol)) continue;
    double v = qop_objective(model, w);
    if (v < best - 1e-12 || (std::abs(v - best) <= 1e-12 && best_w && lex_less(w, *best_w))) {
      best = v;
      best_w = w;
    } else if (!best_w && v <= best) {
      best = v;
      best_w = w;
    }
  }

  if (!best_w) {
    result.value = ExtReal::pos_inf();
    return result;
  }
  result.value = ExtReal::finite(best);
  result.argmin = best_w;
  return result;
}

namespace {

struct GridContext {
  const std::vector<Polynomial>* fs;
  std::vector<int> free_vars;
  // substitutions[i]: variable i = rhs + coef . w (only over free variables)
  struct Subst {
    bool active = false;
    double rhs = 0.0;
    std::vector<std::pair<int, double>> terms;
  };
  std::vector<Subst> subst;
  double feas_tol;

  void complete(std::vector<double>& w) const {
    for (std::size_t i = 0; i < subst.size(); ++i) {
      if (!subst[i].active) continue;
      double v = subst[i].rhs;
      for (auto [j, c] : subst[i].terms) v += c * w[j];
      w[i] = v;
    }
  }

  bool feasible(const std::vector<double>& w) const {
    for (double wi : w) {
      if (wi < -feas_tol) return false;
    }
    for (std::size_t i = 1; i < fs->size(); ++i) {
      if (std::abs((*fs)[i].evaluate(w)) > feas_tol) return false;
    }
    return true;
  }
};

}  // namespace

OracleResult grid_search_pop_with_eqs(const std::vector<Polynomial>& fs,
                                      const std::vector<Interval>& box,
                                      const std::vector<LinearEquation>& eqs, int resolution,
                                      double feas_tol) {
  if (fs.empty()) fail(ErrorCode::InvalidArgument, "grid search needs an objective");
  const int n = fs[0].num_vars();
  if (static_cast<int>(box.size()) != n) {
    fail(ErrorCode::InvalidArgument, "grid box dimension mismatch");
  }
  if (resolution < 2) fail(ErrorCode::InvalidArgument, "grid resolution must be at least 2");

  GridContext ctx;
  ctx.fs = &fs;
  ctx.feas_tol = feas_tol;
  ctx.subst.resize(n);

  // Solve each equation for its highest-index variable.
  for (const LinearEquation& eq : eqs) {
    int pivot = -1;
    for (int i = n - 1; i >= 0; --i) {
      if (eq.coef[i] != 0.0 && !ctx.subst[i].active) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    GridContext::Subst s;
    s.active = true;
    s.rhs = eq.rhs / eq.coef[pivot];
    for (int i = 0; i < n; ++i) {
      if (i != pivot && eq.coef[i] != 0.0) s.terms.emplace_back(i, -eq.coef[i] / eq.coef[pivot]);
    }
    ctx.subst[pivot] = std::move(s);
  }
  // Substitutions may reference substituted variables; require the pivots be
  // expressible by free variables only (one resolution pass).
  for (int i = 0; i < n; ++i) {
    if (!ctx.subst[i].active) ctx.free_vars.push_back(i);
  }
  for (auto& s : ctx.subst) {
    if (!s.active) continue;
    bool again = true;
    while (again) {
      again = false;
      std::vector<std::pair<int, double>> expanded;
      for (auto [j, c] : s.terms) {
        if (ctx.subst[j].active) {
          s.rhs += c * ctx.subst[j].rhs;
          for (auto [k, ck] : ctx.subst[j].terms) expanded.emplace_back(k, c * ck);
          again = true;
        } else {
          expanded.emplace_back(j, c);
        }
      }
      s.terms = std::move(expanded);
    }
  }

  const int nf = static_cast<int>(ctx.free_vars.size());
  for (int i : ctx.free_vars) {
    if (!box[i].bounded()) {
      fail(ErrorCode::InvalidArgument, "grid search needs a finite box on free variables");
    }
  }
  double total = 1.0;
  for (int i = 0; i < nf; ++i) total *= resolution;
  if (total > static_cast<double>(kMaxGridEvals)) {
    fail(ErrorCode::Unsupported, "grid too large; lower the resolution or dimension");
  }

  OracleResult result;
  result.method = OracleMethod::GridSearch;
  result.feasibility_tol = feas_tol;
  double spacing = 0.0;
  for (int i : ctx.free_vars) {
    spacing = std::max(spacing, (box[i].hi - box[i].lo) / (resolution - 1));
  }
  result.grid_spacing = spacing;

  double best = std::numeric_limits<double>::infinity();
  std::optional<std::vector<double>> best_w;
  std::vector<double> w(n, 0.0);
  std::vector<int> idx(nf, 0);

  auto value_at = [&](std::vector<double>& point) -> std::optional<double> {
    ctx.complete(point);
    if (!ctx.feasible(point)) return std::nullopt;
    return fs[0].evaluate(point);
  };

  bool done = nf == 0;
  if (nf == 0) {
    if (auto v = value_at(w)) {
      best = *v;
      best_w = w;
    }
  }
  while (!done) {
    for (int i = 0; i < nf; ++i) {
      const Interval& bi = box[ctx.free_vars[i]];
      w[ctx.free_vars[i]] = bi.lo + (bi.hi - bi.lo) * idx[i] / (resolution - 1);
    }
    if (auto v = value_at(w)) {
      if (*v < best - 1e-12 ||
          (best_w && std::abs(*v - best) <= 1e-12 && lex_less(w, *best_w))) {
        best = *v;
        best_w = w;
      } else if (!best_w) {
        best = *v;
        best_w = w;
      }
    }
    int d = 0;
    while (d < nf && ++idx[d] == resolution) idx[d++] = 0;
    done = (d == nf);
  }

  if (!best_w) {
    fail(ErrorCode::Unsupported, "no feasible grid point found");
  }

  // One coordinate-descent refinement pass at a tenth of the spacing.
  std::vector<double> refined = *best_w;
  for (int i : ctx.free_vars) {
    const Interval& bi = box[i];
    double step = spacing / 10.0;
    for (double cand : {refined[i] - step, refined[i] + step}) {
      if (cand < bi.lo || cand > bi.hi) continue;
      std::vector<double> trial = refined;
      trial[i] = cand;
      if (auto v = value_at(trial)) {
        if (*v < best) {
          best = *v;
          refined = trial;
        }
      }
    }
  }
  ctx.complete(refined);
  result.value = ExtReal::finite(best);
  result.argmin = refined;
  return result;
}

OracleResult grid_search_pop(const std::vector<Polynomial>& fs, const std::vector<Interval>& box,
                             int resolution, double feas_tol) {
  return grid_search_pop_with_eqs(fs, box, {}, resolution, feas_tol);
}

}  // namespace copos
