#pragma once

#include <utility>
#include <vector>

#include "copos/gram.hpp"
#include "copos/lp.hpp"
#include "copos/poly.hpp"

namespace copos {

// Linearly constrained QOP in nonnegative variables with binary and
// complementarity side constraints:
//   min w'Cw + 2c'w  s.t.  Aw = b, w >= 0, w_i in {0,1} (i in bin),
//   w_j w_k = 0 ((j,k) in comp).
// Indices are 0-based here; file formats are 1-based.
struct QopModel {
  int n = 0;
  std::vector<std::vector<double>> C;
  std::vector<double> c;
  std::vector<std::vector<double>> A;
  std::vector<double> b;
  std::vector<int> bin;
  std::vector<std::pair<int, int>> comp;

  int num_constraints() const { return static_cast<int>(bin.size()) + 2; }
  void validate() const;
};

// Equality-constraint polynomials f1..fm over w:
//  f1 = |Aw-b|^2, f2 = sum of complementarity products (zero when none, kept
//  for index stability), f_{p+2} = w_p (1 - w_p) for each binary index.
// expand_comp splits the aggregated complementarity sum into one constraint
// per pair (the constraint count then grows accordingly).
std::vector<Polynomial> constraint_polys(const QopModel& model, bool expand_comp = false);

// Degree-2 homogenizations fbar0..fbarm over (x0, w).
std::vector<Polynomial> homogenized_quadratics(const QopModel& model, bool expand_comp = false);

struct BurerReport {
  struct BinaryCheck {
    int index = 0;                 // variable index (0-based)
    bool ok = false;
    bool feasible_set_empty = false;
    double bound = 0.0;            // max of w_index over the linear feasible set
    std::vector<double> witness;   // feasible point with w_index > 1 on failure
  };
  struct CompCheck {
    std::pair<int, int> pair;
    int var = 0;                   // the coordinate tested
    bool ok = false;
    double value = 0.0;            // max of w_var over the normalized recession cone
    std::vector<double> witness;   // recession point with w_var > 0 on failure
  };

  std::vector<BinaryCheck> binary;
  std::vector<CompCheck> comp;
  bool all_ok = true;
};

// Machine check of the boundedness / recession conditions under which the
// conic reformulation of the QOP is exact.
BurerReport check_burer_conditions(const QopModel& model);

// Conic data shared by the relaxation solver: objective matrix, constraint
// matrices, the normalization selector and the consistency partition.
struct ConicProblem {
  BasisPtr basis;
  SymMatrix Q0;
  std::vector<SymMatrix> Qp;
  SymMatrix H0;
  ConsistencyClasses classes;
};

ConicProblem to_conic(const QopModel& model, GramMode mode = GramMode::EvenSplit,
                      bool expand_comp = false);

}  // namespace copos
