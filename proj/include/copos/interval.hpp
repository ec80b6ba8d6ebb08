#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace copos {

namespace detail {

// Outward rounding that widens a bound only when the double operation was
// inexact; exact small-integer arithmetic stays exact, which the bound
// checks rely on (a proven lower bound of 0 must not decay to -ulp).
inline double widen_down(double v, bool exact) {
  if (exact || !std::isfinite(v)) return v;
  return std::nextafter(v, -std::numeric_limits<double>::infinity());
}
inline double widen_up(double v, bool exact) {
  if (exact || !std::isfinite(v)) return v;
  return std::nextafter(v, std::numeric_limits<double>::infinity());
}

inline bool add_exact(double a, double b, double s) {
  if (!std::isfinite(s)) return true;
  double bp = s - a;
  double ap = s - bp;
  return (a - ap) + (b - bp) == 0.0;
}

inline bool mul_exact(double a, double b, double p) {
  if (!std::isfinite(p)) return true;
  return std::fma(a, b, -p) == 0.0;
}

inline double add_down(double a, double b) {
  double s = a + b;
  return widen_down(s, add_exact(a, b, s));
}
inline double add_up(double a, double b) {
  double s = a + b;
  return widen_up(s, add_exact(a, b, s));
}

// Endpoint product with the 0 * inf = 0 convention used by interval libraries.
inline double eprod(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return a * b;
}
inline double mul_down(double a, double b) {
  double p = eprod(a, b);
  return widen_down(p, mul_exact(a, b, p));
}
inline double mul_up(double a, double b) {
  double p = eprod(a, b);
  return widen_up(p, mul_exact(a, b, p));
}

}  // namespace detail

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double l, double h) : lo(l), hi(h) {}

  static Interval point(double v) { return {v, v}; }
  static Interval nonneg_axis() { return {0.0, std::numeric_limits<double>::infinity()}; }

  bool empty() const { return lo > hi; }
  bool contains(double v) const { return lo <= v && v <= hi; }
  bool is_point() const { return lo == hi; }
  bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }

  friend Interval operator+(const Interval& a, const Interval& b) {
    return {detail::add_down(a.lo, b.lo), detail::add_up(a.hi, b.hi)};
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    return {detail::add_down(a.lo, -b.hi), detail::add_up(a.hi, -b.lo)};
  }
  friend Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

  friend Interval operator*(const Interval& a, const Interval& b) {
    double lo = std::min({detail::mul_down(a.lo, b.lo), detail::mul_down(a.lo, b.hi),
                          detail::mul_down(a.hi, b.lo), detail::mul_down(a.hi, b.hi)});
    double hi = std::max({detail::mul_up(a.lo, b.lo), detail::mul_up(a.lo, b.hi),
                          detail::mul_up(a.hi, b.lo), detail::mul_up(a.hi, b.hi)});
    return {lo, hi};
  }

  Interval scaled(double c) const {
    if (c >= 0) return {detail::mul_down(c, lo), detail::mul_up(c, hi)};
    return {detail::mul_down(c, hi), detail::mul_up(c, lo)};
  }

  // Integer power; even exponents fold the sign symmetry.
  Interval pow(int k) const {
    if (k == 0) return point(1.0);
    if (k % 2 == 0 && lo < 0.0 && hi > 0.0) {
      Interval m{0.0, std::max(-lo, hi)};
      Interval r = m;
      for (int i = 1; i < k; ++i) r = r * m;
      return {0.0, r.hi};
    }
    Interval r = *this;
    for (int i = 1; i < k; ++i) r = r * (*this);
    if (k % 2 == 0 && r.lo < 0.0) r.lo = 0.0;
    return r;
  }

  Interval intersect(const Interval& o) const {
    return {std::max(lo, o.lo), std::min(hi, o.hi)};
  }

  Interval hull(const Interval& o) const {
    return {std::min(lo, o.lo), std::max(hi, o.hi)};
  }
};

}  // namespace copos
