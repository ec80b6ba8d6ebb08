#include "copos/gram.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace copos {

SymMatrix::SymMatrix(int dim, BasisPtr basis)
    : dim_(dim), basis_(std::move(basis)), a_(static_cast<std::size_t>(dim) * dim, 0.0) {
  if (dim < 0) fail(ErrorCode::InvalidArgument, "negative matrix dimension");
  if (basis_ && basis_->size() != dim_) {
    fail(ErrorCode::InvalidArgument, "matrix dimension does not match basis size");
  }
}

double SymMatrix::inner(const SymMatrix& other) const {
  if (other.dim_ != dim_) fail(ErrorCode::InvalidArgument, "inner product dimension mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < a_.size(); ++k) s += a_[k] * other.a_[k];
  return s;
}

double SymMatrix::frobenius_norm() const { return std::sqrt(inner(*this)); }

double SymMatrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& other) {
  if (other.dim_ != dim_) fail(ErrorCode::InvalidArgument, "matrix sum dimension mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += other.a_[k];
  return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& other) {
  if (other.dim_ != dim_) fail(ErrorCode::InvalidArgument, "matrix difference dimension mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= other.a_[k];
  return *this;
}

SymMatrix& SymMatrix::operator*=(double c) {
  for (double& v : a_) v *= c;
  return *this;
}

std::vector<double> moment_vector(const BasisPtr& basis, std::span<const double> x) {
  if (static_cast<int>(x.size()) != basis->n() + 1) {
    fail(ErrorCode::InvalidArgument, "moment vector point has wrong dimension");
  }
  std::vector<double> u(basis->size());
  for (int i = 0; i < basis->size(); ++i) {
    double m = 1.0;
    const Exponents& a = basis->alpha(i);
    for (std::size_t k = 0; k < x.size(); ++k) {
      for (int e = 0; e < a[k]; ++e) m *= x[k];
    }
    u[i] = m;
  }
  return u;
}

SymMatrix moment_matrix(const BasisPtr& basis, std::span<const double> x) {
  std::vector<double> u = moment_vector(basis, x);
  SymMatrix m(basis->size(), basis);
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = i; j < m.dim(); ++j) m.set(i, j, u[i] * u[j]);
  }
  return m;
}

SymMatrix gram_matrix(const Polynomial& fbar, const BasisPtr& basis, GramMode mode) {
  if (fbar.num_vars() != basis->n() + 1) {
    fail(ErrorCode::InvalidArgument, "polynomial arity does not match basis");
  }
  int deg = 0;
  if (!fbar.is_homogeneous(&deg) || (!fbar.is_zero() && deg != 2 * basis->omega())) {
    fail(ErrorCode::InvalidArgument,
         "gram matrix needs a homogeneous polynomial of degree 2*omega");
  }

  // Group the upper-triangle pairs once per call.
  std::map<Exponents, std::vector<std::pair<int, int>>, GradedLexLess> pairs_by_sum;
  Exponents sum(basis->n() + 1);
  for (int i = 0; i < basis->size(); ++i) {
    for (int j = i; j < basis->size(); ++j) {
      for (int k = 0; k <= basis->n(); ++k) sum[k] = basis->alpha(i)[k] + basis->alpha(j)[k];
      pairs_by_sum[sum].emplace_back(i, j);
    }
  }

  SymMatrix q(basis->size(), basis);
  for (const auto& [gamma, coef] : fbar.terms()) {
    auto it = pairs_by_sum.find(gamma);
    if (it == pairs_by_sum.end()) {
      std::ostringstream msg;
      msg << "monomial not covered by basis pairs: ";
      for (std::size_t k = 0; k < gamma.size(); ++k) msg << (k ? "," : "(") << gamma[k];
      msg << ")";
      fail(ErrorCode::UncoveredMonomial, msg.str());
    }
    const auto& pairs = it->second;
    if (mode == GramMode::SinglePair) {
      auto [i, j] = pairs.front();
      q.add(i, j, i == j ? coef : coef / 2.0);
    } else {
      const double share = coef / static_cast<double>(pairs.size());
      for (auto [i, j] : pairs) q.add(i, j, i == j ? share : share / 2.0);
    }
  }
  return q;
}

SymMatrix h0(const BasisPtr& basis) {
  SymMatrix m(basis->size(), basis);
  m.set(0, 0, 1.0);
  return m;
}

}  // namespace copos
