#pragma once

#include <cmath>
#include <vector>

#include "copos/error.hpp"
#include "copos/rational.hpp"

namespace copos::detail {

template <typename T>
struct ScalarOps;

template <>
struct ScalarOps<double> {
  // Pivot tolerance for the dense tableau.
  static constexpr double kTol = 1e-10;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static bool is_pos(double v) { return v > kTol; }
  static bool is_neg(double v) { return v < -kTol; }
  static bool is_zero(double v) { return std::abs(v) <= kTol; }
};

template <>
struct ScalarOps<Rational> {
  static Rational zero() { return Rational(); }
  static Rational one() { return Rational(1); }
  static bool is_pos(const Rational& v) { return v.sign() > 0; }
  static bool is_neg(const Rational& v) { return v.sign() < 0; }
  static bool is_zero(const Rational& v) { return v.is_zero(); }
};

enum class SimplexStatus { Optimal, Unbounded, Infeasible };

template <typename T>
struct SimplexResult {
  SimplexStatus status = SimplexStatus::Optimal;
  T value{};
  std::vector<T> x;    // optimal point, or feasible point when unbounded
  std::vector<T> ray;  // improving recession direction when unbounded
};

// Two-phase primal simplex on min c.x s.t. Ax = b, x >= 0, with Bland's rule
// for both the entering and the leaving choice. Deterministic; the rational
// instantiation is exact.
template <typename T>
class Simplex {
 public:
  SimplexResult<T> solve(const std::vector<std::vector<T>>& a, const std::vector<T>& b,
                         const std::vector<T>& c) {
    using Ops = ScalarOps<T>;
    m_ = static_cast<int>(a.size());
    n_ = static_cast<int>(c.size());
    for (const auto& row : a) {
      if (static_cast<int>(row.size()) != n_) {
        fail(ErrorCode::InvalidArgument, "lp row length mismatch");
      }
    }
    if (static_cast<int>(b.size()) != m_) fail(ErrorCode::InvalidArgument, "lp rhs length mismatch");

    cols_ = n_ + m_;  // original variables then artificials
    tab_.assign(m_, std::vector<T>(cols_ + 1, Ops::zero()));
    basis_.resize(m_);
    for (int i = 0; i < m_; ++i) {
      bool flip = Ops::is_neg(b[i]);
      for (int j = 0; j < n_; ++j) tab_[i][j] = flip ? -a[i][j] : a[i][j];
      tab_[i][cols_] = flip ? -b[i] : b[i];
      tab_[i][n_ + i] = Ops::one();
      basis_[i] = n_ + i;
    }

    // Phase 1: minimize the sum of artificials.
    std::vector<T> phase1(cols_, Ops::zero());
    for (int j = n_; j < cols_; ++j) phase1[j] = Ops::one();
    run_phase(phase1, /*allow_artificial=*/false);
    T infeas = objective_value(phase1);
    if (Ops::is_pos(infeas)) {
      SimplexResult<T> r;
      r.status = SimplexStatus::Infeasible;
      return r;
    }
    drive_out_artificials();

    std::vector<T> phase2(cols_, Ops::zero());
    for (int j = 0; j < n_; ++j) phase2[j] = c[j];
    int unbounded_col = run_phase(phase2, /*allow_artificial=*/false);

    SimplexResult<T> r;
    r.x = current_point();
    if (unbounded_col >= 0) {
      r.status = SimplexStatus::Unbounded;
      r.ray.assign(n_, Ops::zero());
      r.ray[unbounded_col] = Ops::one();
      for (int i = 0; i < m_; ++i) {
        if (basis_[i] < n_) r.ray[basis_[i]] = -tab_[i][unbounded_col];
      }
      return r;
    }
    r.status = SimplexStatus::Optimal;
    r.value = Ops::zero();
    for (int j = 0; j < n_; ++j) r.value += c[j] * r.x[j];
    return r;
  }

 private:
  using Ops = ScalarOps<T>;

  std::vector<T> current_point() const {
    std::vector<T> x(n_, Ops::zero());
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x[basis_[i]] = tab_[i][cols_];
    }
    return x;
  }

  T objective_value(const std::vector<T>& cost) const {
    T v = Ops::zero();
    for (int i = 0; i < m_; ++i) v += cost[basis_[i]] * tab_[i][cols_];
    return v;
  }

  std::vector<T> reduced_costs(const std::vector<T>& cost) const {
    std::vector<T> r = cost;
    for (int i = 0; i < m_; ++i) {
      const T cb = cost[basis_[i]];
      if (Ops::is_zero(cb)) continue;
      for (int j = 0; j < cols_; ++j) r[j] -= cb * tab_[i][j];
    }
    return r;
  }

  // Returns -1 on optimality, or the entering column index when unbounded.
  int run_phase(const std::vector<T>& cost, bool allow_artificial) {
    const int iter_cap = 2000 + 200 * (m_ + cols_);
    for (int iter = 0; iter < iter_cap; ++iter) {
      std::vector<T> red = reduced_costs(cost);
      int enter = -1;
      const int scan = allow_artificial ? cols_ : n_;
      for (int j = 0; j < scan; ++j) {
        if (Ops::is_neg(red[j]) && !in_basis(j)) {
          enter = j;  // Bland: least index
          break;
        }
      }
      if (enter < 0) return -1;

      int leave = -1;
      for (int i = 0; i < m_; ++i) {
        if (!Ops::is_pos(tab_[i][enter])) continue;
        if (leave < 0) {
          leave = i;
          continue;
        }
        // ratio = rhs / pivot column, compare cross-multiplied
        const T lhs = tab_[i][cols_] * tab_[leave][enter];
        const T rhs = tab_[leave][cols_] * tab_[i][enter];
        if (lhs < rhs || (lhs == rhs && basis_[i] < basis_[leave])) leave = i;
      }
      if (leave < 0) return enter;  // unbounded direction
      pivot(leave, enter);
    }
    fail(ErrorCode::Numerical, "simplex iteration cap exceeded");
  }

  bool in_basis(int j) const {
    for (int b : basis_) {
      if (b == j) return true;
    }
    return false;
  }

  void pivot(int row, int col) {
    const T piv = tab_[row][col];
    for (int j = 0; j <= cols_; ++j) tab_[row][j] /= piv;
    for (int i = 0; i < m_; ++i) {
      if (i == row) continue;
      const T factor = tab_[i][col];
      if (Ops::is_zero(factor)) continue;
      for (int j = 0; j <= cols_; ++j) tab_[i][j] -= factor * tab_[row][j];
    }
    basis_[row] = col;
  }

  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      int col = -1;
      for (int j = 0; j < n_; ++j) {
        if (!Ops::is_zero(tab_[i][j]) && !in_basis(j)) {
          col = j;
          break;
        }
      }
      if (col >= 0) pivot(i, col);
      // Otherwise the row is redundant; the artificial stays basic at zero.
    }
  }

  int m_ = 0;
  int n_ = 0;
  int cols_ = 0;
  std::vector<std::vector<T>> tab_;
  std::vector<int> basis_;
};

}  // namespace copos::detail
