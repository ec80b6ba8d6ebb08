#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "copos/error.hpp"

namespace copos {

// Exact rational scalar on 64-bit integers with 128-bit intermediates.
// Every finite double is a dyadic rational, so from_double is exact; overflow
// past int64 (after gcd reduction) raises Error(Numerical).
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(long long n, long long d) { assign(n, d); }

  static Rational from_double(double x) {
    if (x == 0.0) return Rational();
    if (!std::isfinite(x)) fail(ErrorCode::Numerical, "non-finite value in exact arithmetic");
    int exp2 = 0;
    double mant = std::frexp(x, &exp2);  // x = mant * 2^exp2, |mant| in [0.5,1)
    long long m = static_cast<long long>(std::ldexp(mant, 53));
    exp2 -= 53;
    while (m % 2 == 0 && exp2 < 0) {
      m /= 2;
      ++exp2;
    }
    if (exp2 >= 0) {
      if (exp2 > 62) fail(ErrorCode::Numerical, "rational overflow converting double");
      __int128 scaled = static_cast<__int128>(m) << exp2;
      return make_checked(scaled, 1);
    }
    if (-exp2 > 62) fail(ErrorCode::Numerical, "rational overflow converting double");
    return make_checked(m, static_cast<__int128>(1) << (-exp2));
  }

  long long num() const { return num_; }
  long long den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_zero() const { return num_ == 0; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    __int128 n = i128(a.num_) * b.den_ + i128(b.num_) * a.den_;
    return make_checked(n, i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    __int128 n = i128(a.num_) * b.den_ - i128(b.num_) * a.den_;
    return make_checked(n, i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make_checked(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) fail(ErrorCode::Numerical, "rational division by zero");
    return make_checked(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  static __int128 i128(long long v) { return static_cast<__int128>(v); }

  static Rational make_checked(__int128 n, __int128 d) {
    if (d == 0) fail(ErrorCode::Numerical, "rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    constexpr __int128 kMax = static_cast<__int128>(INT64_MAX);
    if (n > kMax || n < -kMax || d > kMax) {
      fail(ErrorCode::Numerical, "rational overflow");
    }
    Rational r;
    r.num_ = static_cast<long long>(n);
    r.den_ = static_cast<long long>(d);
    return r;
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  void assign(long long n, long long d) { *this = make_checked(i128(n), i128(d)); }

  long long num_;
  long long den_;
};

}  // namespace copos
