#pragma once

#include <span>
#include <vector>

#include "copos/basis.hpp"
#include "copos/poly.hpp"

namespace copos {

// Dense symmetric matrix indexed by positions of a monomial basis. The basis
// pointer may be empty for plain numeric matrices (kernels, tests).
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int dim, BasisPtr basis = nullptr);

  int dim() const { return dim_; }
  const BasisPtr& basis() const { return basis_; }

  double operator()(int i, int j) const { return a_[i * dim_ + j]; }
  void set(int i, int j, double v) {
    a_[i * dim_ + j] = v;
    a_[j * dim_ + i] = v;
  }
  void add(int i, int j, double v) {
    a_[i * dim_ + j] += v;
    if (i != j) a_[j * dim_ + i] += v;
  }

  const std::vector<double>& data() const { return a_; }
  std::vector<double>& data() { return a_; }

  double inner(const SymMatrix& other) const;
  double frobenius_norm() const;
  double max_abs() const;

  SymMatrix& operator+=(const SymMatrix& other);
  SymMatrix& operator-=(const SymMatrix& other);
  SymMatrix& operator*=(double c);
  friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
  friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
  friend SymMatrix operator*(SymMatrix a, double c) { return a *= c; }

 private:
  int dim_ = 0;
  BasisPtr basis_;
  std::vector<double> a_;
};

enum class GramMode {
  EvenSplit,    // spread each coefficient evenly over all matching pairs
  SinglePair,   // place the whole coefficient on the canonical least pair
};

// Vector of basis monomials evaluated at x (length 1+n, first entry x0^omega).
std::vector<double> moment_vector(const BasisPtr& basis, std::span<const double> x);

// Rank-one outer product of the moment vector.
SymMatrix moment_matrix(const BasisPtr& basis, std::span<const double> x);

// Coefficient matrix Q with <Q, u(x) u(x)^T> = fbar(x) identically. fbar must
// be homogeneous of degree 2*omega with every monomial expressible as a sum
// of two basis elements (otherwise Error(UncoveredMonomial)).
SymMatrix gram_matrix(const Polynomial& fbar, const BasisPtr& basis,
                      GramMode mode = GramMode::EvenSplit);

// Selector of the leading entry: <h0(A), moment_matrix(A,x)> = x0^(2*omega).
SymMatrix h0(const BasisPtr& basis);

}  // namespace copos
