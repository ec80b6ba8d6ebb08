#pragma once

#include <span>
#include <vector>

#include "copos/error.hpp"

namespace copos {

// Extended real with the usual inf conventions for conic optimal values.
struct ExtReal {
  enum class Kind { NegInf, Finite, PosInf };

  Kind kind = Kind::Finite;
  double value = 0.0;

  static ExtReal neg_inf() { return {Kind::NegInf, 0.0}; }
  static ExtReal pos_inf() { return {Kind::PosInf, 0.0}; }
  static ExtReal finite(double v) { return {Kind::Finite, v}; }

  bool is_finite() const { return kind == Kind::Finite; }
  bool is_neg_inf() const { return kind == Kind::NegInf; }
  bool is_pos_inf() const { return kind == Kind::PosInf; }
};

// Finitely generated (generally nonconvex) cone: the union of the rays
// spanned by its atoms.
struct RayCone {
  int dim = 0;
  std::vector<std::vector<double>> atoms;
};

struct SliceReport {
  double rho = 0.0;
  std::vector<std::vector<double>> slice_atoms;      // atoms rescaled onto <H0,X> = rho
  std::vector<std::vector<double>> recession_atoms;  // atoms with <H0,d> = 0
};

// Report of the convexification identities for one (cone, H0, Q0) triple.
// All equality flags are decided in exact rational arithmetic.
struct TheoremMain0Report {
  ExtReal zeta_nonconvex_1;  // value over the cone slice at rho = 1
  ExtReal zeta_nonconvex_0;  // value over the recession slice
  ExtReal zeta_convex_1;     // value over the convex hull slice at rho = 1
  ExtReal zeta_convex_0;
  bool recession_hull_match = false;  // convex and nonconvex rho = 0 values agree
  bool additive_identity = false;     // convex value = slice value + recession value
  bool condition_ii0 = false;
  bool equality = false;       // convex value equals nonconvex value at rho = 1
  bool iff_consistent = false; // equality holds exactly when II0 or unboundedness does
};

// Condition I0: H0 is nonzero, nonnegative on every atom, and the rho = 1
// slice is nonempty.
bool check_condition_i0(const RayCone& cone, std::span<const double> h0);

SliceReport slice(const RayCone& cone, std::span<const double> h0, double rho);

// inf of <P,.> over the nonconvex slice; +inf when the slice is empty, and
// -inf at rho = 0 when some recession atom has a negative objective.
ExtReal zeta_nonconvex(const RayCone& cone, std::span<const double> h0,
                       std::span<const double> p, double rho);

// inf of <P,.> over the convex hull slice, computed by an exact-rational LP
// over atom weights.
ExtReal zeta_convex(const RayCone& cone, std::span<const double> h0,
                    std::span<const double> p, double rho);

TheoremMain0Report verify_theorem_main0(const RayCone& cone, std::span<const double> h0,
                                        std::span<const double> q0);

}  // namespace copos
