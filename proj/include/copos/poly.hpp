#pragma once

#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "copos/error.hpp"

namespace copos {

// Exponent vector of a monomial. For polynomials over (x0, w1..wn) index 0 is
// the homogenizing variable.
using Exponents = std::vector<int>;

inline int total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), 0);
}

// Graded order: lower total degree first, ties broken by descending
// lexicographic comparison so (1,0) precedes (0,1). This is the canonical
// iteration order for terms and monomial bases throughout.
struct GradedLexLess {
  bool operator()(const Exponents& a, const Exponents& b) const {
    int da = total_degree(a);
    int db = total_degree(b);
    if (da != db) return da < db;
    return a > b;  // descending lex within a degree
  }
};

// Sparse multivariate polynomial with double coefficients. Stored terms are
// always nonzero; immutable once built (operations return new values).
class Polynomial {
 public:
  using TermMap = std::map<Exponents, double, GradedLexLess>;

  Polynomial() = default;
  explicit Polynomial(int num_vars) : num_vars_(num_vars) {}

  static Polynomial constant(int num_vars, double value);
  static Polynomial variable(int num_vars, int index);
  static Polynomial monomial(Exponents exps, double coef);

  int num_vars() const { return num_vars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Degree of the zero polynomial is 0 by convention.
  int degree() const;

  double coefficient(const Exponents& exps) const;
  void add_term(const Exponents& exps, double coef);

  double evaluate(std::span<const double> point) const;

  bool is_homogeneous(int* degree_out = nullptr) const;

  Polynomial homogenized(int tau) const;
  std::pair<Polynomial, Polynomial> split_top_degree(int d) const;
  Polynomial restrict_x0_zero() const;

  Polynomial scaled(double c) const;
  Polynomial pow(int k) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  bool same_terms(const Polynomial& other, double tol = 0.0) const;

  // Debug text form: "coef * x0^a0 * w1^a1 * ...". When homogeneous_vars is
  // true variable 0 prints as x0 and the rest shift to w1..wn.
  std::string str(bool homogeneous_vars = false) const;

 private:
  void check_arity(const Exponents& exps) const;

  int num_vars_ = 0;
  TermMap terms_;
};

}  // namespace copos
