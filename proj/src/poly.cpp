#include "copos/poly.hpp"

#include <cmath>
#include <sstream>

namespace copos {

Polynomial Polynomial::constant(int num_vars, double value) {
  Polynomial p(num_vars);
  p.add_term(Exponents(num_vars, 0), value);
  return p;
}

Polynomial Polynomial::variable(int num_vars, int index) {
  if (index < 0 || index >= num_vars) {
    fail(ErrorCode::InvalidArgument, "variable index out of range");
  }
  Exponents e(num_vars, 0);
  e[index] = 1;
  return monomial(std::move(e), 1.0);
}

Polynomial Polynomial::monomial(Exponents exps, double coef) {
  Polynomial p(static_cast<int>(exps.size()));
  p.add_term(exps, coef);
  return p;
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& [exps, coef] : terms_) d = std::max(d, total_degree(exps));
  return d;
}

double Polynomial::coefficient(const Exponents& exps) const {
  auto it = terms_.find(exps);
  return it == terms_.end() ? 0.0 : it->second;
}

void Polynomial::check_arity(const Exponents& exps) const {
  if (static_cast<int>(exps.size()) != num_vars_) {
    fail(ErrorCode::InvalidArgument, "exponent vector length does not match variable count");
  }
  for (int e : exps) {
    if (e < 0) fail(ErrorCode::InvalidArgument, "negative exponent");
  }
}

void Polynomial::add_term(const Exponents& exps, double coef) {
  check_arity(exps);
  if (coef == 0.0) return;
  auto [it, inserted] = terms_.emplace(exps, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double Polynomial::evaluate(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != num_vars_) {
    fail(ErrorCode::InvalidArgument, "evaluation point has wrong dimension");
  }
  double sum = 0.0;
  for (const auto& [exps, coef] : terms_) {
    double m = coef;
    for (int i = 0; i < num_vars_; ++i) {
      for (int k = 0; k < exps[i]; ++k) m *= point[i];
    }
    sum += m;
  }
  return sum;
}

bool Polynomial::is_homogeneous(int* degree_out) const {
  if (terms_.empty()) {
    if (degree_out) *degree_out = 0;
    return true;
  }
  int d = total_degree(terms_.begin()->first);
  for (const auto& [exps, coef] : terms_) {
    if (total_degree(exps) != d) return false;
  }
  if (degree_out) *degree_out = d;
  return true;
}

Polynomial Polynomial::homogenized(int tau) const {
  if (tau < degree()) {
    fail(ErrorCode::InvalidArgument, "homogenization degree below polynomial degree");
  }
  Polynomial out(num_vars_ + 1);
  for (const auto& [exps, coef] : terms_) {
    Exponents e(num_vars_ + 1, 0);
    e[0] = tau - total_degree(exps);
    for (int i = 0; i < num_vars_; ++i) e[i + 1] = exps[i];
    out.add_term(e, coef);
  }
  return out;
}

std::pair<Polynomial, Polynomial> Polynomial::split_top_degree(int d) const {
  if (degree() > d) {
    fail(ErrorCode::InvalidArgument, "split degree below polynomial degree");
  }
  Polynomial low(num_vars_);
  Polynomial top(num_vars_);
  for (const auto& [exps, coef] : terms_) {
    (total_degree(exps) == d ? top : low).add_term(exps, coef);
  }
  return {low, top};
}

Polynomial Polynomial::restrict_x0_zero() const {
  if (num_vars_ < 1) fail(ErrorCode::InvalidArgument, "no homogenizing variable to restrict");
  if (!is_homogeneous()) {
    fail(ErrorCode::InvalidArgument, "restriction requires a homogeneous polynomial");
  }
  Polynomial out(num_vars_ - 1);
  for (const auto& [exps, coef] : terms_) {
    if (exps[0] > 0) continue;
    out.add_term(Exponents(exps.begin() + 1, exps.end()), coef);
  }
  return out;
}

Polynomial Polynomial::scaled(double c) const {
  Polynomial out(num_vars_);
  if (c == 0.0) return out;
  for (const auto& [exps, coef] : terms_) out.add_term(exps, c * coef);
  return out;
}

Polynomial Polynomial::pow(int k) const {
  if (k < 0) fail(ErrorCode::InvalidArgument, "negative polynomial power");
  Polynomial out = constant(num_vars_, 1.0);
  for (int i = 0; i < k; ++i) out = out * (*this);
  return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  if (a.num_vars_ != b.num_vars_) {
    fail(ErrorCode::InvalidArgument, "adding polynomials over different variable counts");
  }
  Polynomial out = a;
  for (const auto& [exps, coef] : b.terms_) out.add_term(exps, coef);
  return out;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + b.scaled(-1.0); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.num_vars_ != b.num_vars_) {
    fail(ErrorCode::InvalidArgument, "multiplying polynomials over different variable counts");
  }
  Polynomial out(a.num_vars_);
  Exponents e(a.num_vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (int i = 0; i < a.num_vars_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

bool Polynomial::same_terms(const Polynomial& other, double tol) const {
  if (num_vars_ != other.num_vars_) return false;
  Polynomial diff = *this - other;
  for (const auto& [exps, coef] : diff.terms_) {
    if (std::abs(coef) > tol) return false;
  }
  return true;
}

std::string Polynomial::str(bool homogeneous_vars) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [exps, coef] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << coef;
    for (int i = 0; i < num_vars_; ++i) {
      if (exps[i] == 0) continue;
      out << " * ";
      if (homogeneous_vars) {
        if (i == 0) {
          out << "x0";
        } else {
          out << "w" << i;
        }
      } else {
        out << "w" << (i + 1);
      }
      if (exps[i] != 1) out << "^" << exps[i];
    }
  }
  return out.str();
}

}  // namespace copos
