#pragma once

#include <cstdint>
#include <vector>

#include "copos/gram.hpp"
#include "copos/qop.hpp"

namespace copos {

struct EigenDecomposition {
  std::vector<double> values;            // descending
  std::vector<std::vector<double>> vectors;  // vectors[k] is the k-th eigenvector
};

// Cyclic Jacobi eigendecomposition of a symmetric matrix; reconstruction and
// orthogonality hold to 1e-10 * (1 + |M|_F). Error(Numerical) past the sweep cap.
EigenDecomposition sym_eig(const SymMatrix& m);

// Frobenius-nearest point of the PSD cone (negative eigenvalues clamped).
SymMatrix project_psd(const SymMatrix& m);

// Entrywise max with zero.
SymMatrix project_nonneg(const SymMatrix& m);

// Precomputed orthogonal projector onto the affine slice
// { X consistency-constant : <H0,X> = 1, <Qp,X> = 0 }.
class AffineProjector {
 public:
  explicit AffineProjector(const ConicProblem& problem);

  // Class-average (projection onto the consistency subspace), then correct
  // the affine constraints inside that subspace. Error(Inconsistent) when the
  // residual after projection stays above 1e-6.
  SymMatrix apply(const SymMatrix& m, bool check_residual = true) const;

  // Projection onto the consistency subspace alone.
  SymMatrix class_average(const SymMatrix& m) const;

 private:
  const ConicProblem* problem_;
  std::vector<SymMatrix> constraint_reps_;  // class-averaged H0 and Qp
  std::vector<double> rhs_;
  std::vector<std::vector<double>> gram_pinv_;  // pseudo-inverse of the Gram system
};

struct SolveParams {
  double tol = 1e-7;
  int max_iter = 20000;
  double step = 1.0;
  std::uint64_t seed = 42;
  bool certify = false;  // subtract a residual-based safety margin from the bound
};

enum class SolveStatus { Converged, MaxIter, InfeasibleLikely };

struct SolveResult {
  double lower_bound = 0.0;
  SymMatrix X;
  double primal_residual = 0.0;
  double psd_residual = 0.0;
  double nonneg_residual = 0.0;
  double class_residual = 0.0;
  double affine_residual = 0.0;
  int iterations = 0;
  SolveStatus status = SolveStatus::MaxIter;
  double certified_bound = 0.0;  // populated when params.certify is set
};

// Deterministic three-block consensus splitting over {PSD, nonnegative,
// affine} with the linear objective folded into the affine proximal step.
SolveResult solve_dnn(const ConicProblem& problem, const SolveParams& params = {});

}  // namespace copos
