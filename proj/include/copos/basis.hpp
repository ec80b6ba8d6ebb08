#pragma once

#include <memory>
#include <unordered_map>
#include <vector>

#include "copos/poly.hpp"

namespace copos {

struct ExponentsHash {
  std::size_t operator()(const Exponents& e) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (int v : e) h = (h ^ static_cast<std::size_t>(v)) * 0x100000001b3ULL;
    return h;
  }
};

// Ordered monomial index set A: degree-omega exponent vectors over (x0, w),
// with (omega,0,...,0) in first position.
class MonomialBasis {
 public:
  MonomialBasis(int n, int omega, std::vector<Exponents> alphas);

  int n() const { return n_; }
  int omega() const { return omega_; }
  int size() const { return static_cast<int>(alphas_.size()); }
  const std::vector<Exponents>& alphas() const { return alphas_; }
  const Exponents& alpha(int i) const { return alphas_[i]; }

  // Position of an exponent vector, or -1.
  int index_of(const Exponents& e) const;

 private:
  int n_;
  int omega_;
  std::vector<Exponents> alphas_;
  std::unordered_map<Exponents, int, ExponentsHash> index_;
};

using BasisPtr = std::shared_ptr<const MonomialBasis>;

// All C(n+omega, omega) degree-omega monomials over 1+n variables.
BasisPtr full_basis(int n, int omega);

// Smallest-by-greedy subset covering every target as a two-element sum.
// Each target must have degree 2*omega; the leading monomial is always kept.
BasisPtr covering_basis(const std::vector<Exponents>& targets, int n, int omega);

// Partition of upper-triangle index pairs (i <= j) grouped by alpha_i + alpha_j.
struct ConsistencyClasses {
  std::vector<Exponents> sums;                          // class key, canonical order
  std::vector<std::vector<std::pair<int, int>>> classes;  // pairs per class
};

ConsistencyClasses consistency_classes(const MonomialBasis& basis);

}  // namespace copos
