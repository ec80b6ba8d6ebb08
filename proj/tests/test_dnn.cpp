#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "copos/demos.hpp"
#include "copos/dnn.hpp"
#include "copos/hierarchy.hpp"
#include "copos/oracle.hpp"
#include "copos/rng.hpp"

using copos::AffineProjector;
using copos::BasisPtr;
using copos::ConicProblem;
using copos::demo_simplex_qop;
using copos::EigenDecomposition;
using copos::full_basis;
using copos::project_nonneg;
using copos::project_psd;
using copos::SolveParams;
using copos::SolveResult;
using copos::SolveStatus;
using copos::solve_dnn;
using copos::SplitMix64;
using copos::sym_eig;
using copos::SymMatrix;

namespace {

SymMatrix random_sym(SplitMix64& rng, int n, double scale = 2.0) {
  SymMatrix m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) m.set(i, j, rng.uniform(-scale, scale));
  }
  return m;
}

double reconstruction_error(const SymMatrix& m, const EigenDecomposition& eig) {
  const int n = m.dim();
  double err = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double v = 0.0;
      for (int k = 0; k < n; ++k) v += eig.values[k] * eig.vectors[k][i] * eig.vectors[k][j];
      err = std::max(err, std::abs(v - m(i, j)));
    }
  }
  return err;
}

double orthogonality_error(const EigenDecomposition& eig) {
  const int n = static_cast<int>(eig.vectors.size());
  double err = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      double dot = 0.0;
      for (int i = 0; i < n; ++i) dot += eig.vectors[a][i] * eig.vectors[b][i];
      err = std::max(err, std::abs(dot - (a == b ? 1.0 : 0.0)));
    }
  }
  return err;
}

// Binary fixture on the order-2 basis: objective -w1, constraint w1(x0-w1).
ConicProblem binary_fixture() {
  BasisPtr basis = full_basis(1, 1);
  ConicProblem conic;
  conic.basis = basis;
  conic.Q0 = SymMatrix(2, basis);
  conic.Q0.set(0, 1, -0.5);
  SymMatrix q1(2, basis);
  q1.set(0, 1, 0.5);
  q1.set(1, 1, -1.0);
  conic.Qp.push_back(q1);
  conic.H0 = copos::h0(basis);
  conic.classes = copos::consistency_classes(*basis);
  return conic;
}

}  // namespace

TEST_CASE("eigendecomposition basics") {
  SymMatrix id(3);
  for (int i = 0; i < 3; ++i) id.set(i, i, 1.0);
  EigenDecomposition e = sym_eig(id);
  for (double v : e.values) CHECK(v == doctest::Approx(1.0));

  SymMatrix swap(2);
  swap.set(0, 1, 1.0);
  EigenDecomposition e2 = sym_eig(swap);
  CHECK(e2.values[0] == doctest::Approx(1.0));
  CHECK(e2.values[1] == doctest::Approx(-1.0));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(std::abs(e2.vectors[0][0]) - inv_sqrt2) < 1e-12);
  CHECK(std::abs(std::abs(e2.vectors[0][1]) - inv_sqrt2) < 1e-12);
}

TEST_CASE("eigendecomposition accuracy on random matrices") {
  SplitMix64 rng(1234);
  for (int round = 0; round < 100; ++round) {
    const int n = rng.uniform_int(2, 30);
    SymMatrix m = random_sym(rng, n);
    EigenDecomposition eig = sym_eig(m);
    const double budget = 1e-10 * (1.0 + m.frobenius_norm());
    CHECK(reconstruction_error(m, eig) <= budget);
    CHECK(orthogonality_error(eig) <= 1e-10);
    for (int k = 1; k < n; ++k) CHECK(eig.values[k - 1] >= eig.values[k]);
  }
}

TEST_CASE("psd projection") {
  SymMatrix psd(2);
  psd.set(0, 0, 2.0);
  psd.set(0, 1, 1.0);
  psd.set(1, 1, 2.0);
  SymMatrix proj = project_psd(psd);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) CHECK(proj(i, j) == doctest::Approx(psd(i, j)).epsilon(1e-12));
  }

  SymMatrix indef(2);
  indef.set(0, 0, 1.0);
  indef.set(1, 1, -2.0);
  SymMatrix clipped = project_psd(indef);
  CHECK(clipped(0, 0) == doctest::Approx(1.0));
  CHECK(clipped(1, 1) == doctest::Approx(0.0));

  SplitMix64 rng(55);
  for (int round = 0; round < 20; ++round) {
    SymMatrix m = random_sym(rng, rng.uniform_int(2, 8));
    SymMatrix once = project_psd(m);
    SymMatrix twice = project_psd(once);
    CHECK((twice - once).max_abs() <= 1e-12 * (1.0 + once.max_abs()));
  }
}

TEST_CASE("psd projection is Frobenius-nearest on a 2x2 grid") {
  // Exhaustive grid oracle over symmetric 2x2 candidates.
  SplitMix64 rng(66);
  for (int round = 0; round < 10; ++round) {
    SymMatrix m = random_sym(rng, 2, 1.5);
    SymMatrix proj = project_psd(m);
    const double dist_proj = (proj - m).frobenius_norm();
    for (double a = 0.0; a <= 2.0; a += 0.1) {
      for (double c = 0.0; c <= 2.0; c += 0.1) {
        const double bmax = std::sqrt(a * c);
        for (double b = -bmax; b <= bmax + 1e-12; b += 0.1) {
          SymMatrix cand(2);
          cand.set(0, 0, a);
          cand.set(1, 1, c);
          cand.set(0, 1, std::min(b, bmax));
          CHECK((cand - m).frobenius_norm() >= dist_proj - 1e-9);
        }
      }
    }
  }
}

TEST_CASE("nonneg projection") {
  SymMatrix m(2);
  m.set(0, 0, 1.0);
  m.set(0, 1, -1.0);
  m.set(1, 1, -3.0);
  SymMatrix p = project_nonneg(m);
  CHECK(p(0, 0) == 1.0);
  CHECK(p(0, 1) == 0.0);
  CHECK(p(1, 1) == 0.0);
  SymMatrix q = project_nonneg(p);
  CHECK((q - p).max_abs() == 0.0);
}

TEST_CASE("affine projection lands on the constraint manifold") {
  ConicProblem conic = binary_fixture();
  AffineProjector proj(conic);

  SymMatrix seed(2, conic.basis);
  seed.set(0, 0, 1.0);
  SymMatrix x = proj.apply(seed);
  CHECK(std::abs(conic.H0.inner(x) - 1.0) <= 1e-10);
  CHECK(std::abs(conic.Qp[0].inner(x)) <= 1e-10);

  // Idempotence: a feasible point stays put.
  SymMatrix again = proj.apply(x);
  CHECK((again - x).max_abs() <= 1e-12);
}

TEST_CASE("class averaging projects onto the consistency subspace") {
  BasisPtr basis = full_basis(1, 2);  // has a genuine 2-element class
  ConicProblem conic;
  conic.basis = basis;
  conic.H0 = copos::h0(basis);
  conic.Q0 = SymMatrix(basis->size(), basis);
  conic.classes = copos::consistency_classes(*basis);
  AffineProjector proj(conic);

  SymMatrix m(basis->size(), basis);
  m.set(0, 2, 4.0);  // (2,0)+(0,2) = (2,2)
  m.set(1, 1, 0.0);  // (1,1)+(1,1) = (2,2) shares the class
  SymMatrix avg = proj.class_average(m);
  // Class mean of {4 (twice, off-diagonal), 0}: (2*4 + 0) / 3.
  CHECK(avg(0, 2) == doctest::Approx(8.0 / 3.0));
  CHECK(avg(1, 1) == doctest::Approx(8.0 / 3.0));
}

TEST_CASE("splitting solver on the 2x2 binary fixture") {
  ConicProblem conic = binary_fixture();
  SolveResult r = solve_dnn(conic);
  CHECK(std::abs(r.lower_bound - (-1.0)) <= 1e-4);
  CHECK(r.status == SolveStatus::Converged);
}

TEST_CASE("normalized objective is pinned to one") {
  ConicProblem conic = binary_fixture();
  conic.Q0 = conic.H0;
  SolveResult r = solve_dnn(conic);
  CHECK(std::abs(r.lower_bound - 1.0) <= 1e-6);
}

TEST_CASE("splitting solver matches the enumeration oracle on the simplex model") {
  copos::QopModel qop = demo_simplex_qop();
  ConicProblem conic = copos::to_conic(qop);
  SolveResult r = solve_dnn(conic);
  copos::OracleResult oracle = copos::brute_force_qop(qop);
  REQUIRE(oracle.value.is_finite());
  CHECK(std::abs(r.lower_bound - oracle.value.value) <= 1e-4);
}

TEST_CASE("gram placement does not change the bound") {
  copos::PopModel pop = copos::PopModel::from_qop(demo_simplex_qop());
  ConicProblem even = pop_to_conic(pop, copos::BasisMode::Full, copos::GramMode::EvenSplit);
  ConicProblem single = pop_to_conic(pop, copos::BasisMode::Full, copos::GramMode::SinglePair);
  SolveResult re = solve_dnn(even);
  SolveResult rs = solve_dnn(single);
  CHECK(std::abs(re.lower_bound - rs.lower_bound) <= 1e-5);
}

TEST_CASE("feasible moment matrices satisfy the relaxation constraints") {
  copos::QopModel qop = demo_simplex_qop();
  ConicProblem conic = copos::to_conic(qop);
  for (const std::vector<double>& wv : {std::vector<double>{1.0, 0.0}, {0.0, 1.0}}) {
    std::vector<double> x{1.0, wv[0], wv[1]};
    SymMatrix m = copos::moment_matrix(conic.basis, x);
    CHECK(std::abs(conic.H0.inner(m) - 1.0) <= 1e-9);
    for (const auto& qp : conic.Qp) CHECK(std::abs(qp.inner(m)) <= 1e-9);
    EigenDecomposition eig = sym_eig(m);
    CHECK(eig.values.back() >= -1e-9);
    for (double v : m.data()) CHECK(v >= -1e-9);
  }
}

TEST_CASE("inconsistent affine constraints report infeasibility") {
  ConicProblem conic = binary_fixture();
  // Add a constraint demanding <H0,X> = 0 against the normalization = 1.
  conic.Qp.push_back(conic.H0);
  SolveResult r = solve_dnn(conic);
  CHECK(r.status == SolveStatus::InfeasibleLikely);
}

TEST_CASE("solver is deterministic") {
  ConicProblem conic = binary_fixture();
  SolveResult a = solve_dnn(conic);
  SolveResult b = solve_dnn(conic);
  CHECK(a.lower_bound == b.lower_bound);
  CHECK(a.iterations == b.iterations);
  CHECK((a.X - b.X).max_abs() == 0.0);
}

TEST_CASE("matrix order cap raises a clear error") {
  SymMatrix big(201);
  CHECK_THROWS_AS(sym_eig(big), copos::Error);
  try {
    sym_eig(big);
  } catch (const copos::Error& e) {
    CHECK(e.code() == copos::ErrorCode::Unsupported);
  }
}

TEST_CASE("certified bound stays below the raw bound") {
  ConicProblem conic = binary_fixture();
  SolveParams params;
  params.certify = true;
  SolveResult r = solve_dnn(conic, params);
  CHECK(r.certified_bound <= r.lower_bound + 1e-12);
}
