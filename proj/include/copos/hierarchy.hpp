#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "copos/interval.hpp"
#include "copos/poly.hpp"
#include "copos/qop.hpp"
#include "copos/raycone.hpp"
#include "copos/rng.hpp"

namespace copos {

enum class CertKind {
  NonnegCoeffs,
  SumOfEvenPowers,
  DegShortcut,
  ZeroTildeSet,
  IntervalBound,
  BurerConditions,
};

enum class VerdictStatus { Verified, Falsified, Unknown };

struct ConditionVerdict {
  VerdictStatus status = VerdictStatus::Unknown;
  std::optional<CertKind> certificate;
  std::vector<double> witness;  // strict violation point when Falsified
  std::string detail;

  bool verified() const { return status == VerdictStatus::Verified; }
};

// Optional structural description of a constraint polynomial. Structural
// claims are verified termwise before being trusted; a mismatch raises
// Error(InvalidArgument).
struct ConstraintHint {
  enum class Type { Plain, SumOfEvenPowers, ProductForm };

  Type type = Type::Plain;
  int power = 0;                                   // even exponent, SumOfEvenPowers
  std::vector<Polynomial> forms;                   // SumOfEvenPowers bases
  std::vector<std::vector<Polynomial>> products;   // ProductForm: factors per product

  static ConstraintHint plain() { return {}; }
  static ConstraintHint sum_of_even_powers(int power, std::vector<Polynomial> forms);
  static ConstraintHint product_form(std::vector<std::vector<Polynomial>> products);
};

// POP over the nonnegative orthant with equality constraints f1..fm = 0.
struct PopModel {
  int n = 0;
  int m = 0;
  std::vector<Polynomial> f;           // f[0] objective, f[1..m] constraints
  int omega = 1;                       // 2*omega >= deg f_i enforced by validate()
  std::vector<ConstraintHint> hints;   // size m+1; index 0 describes the objective
  std::optional<QopModel> qop_origin;  // set when derived from a QOP

  void validate() const;
  static PopModel from_qop(const QopModel& qop);
};

// g(w) = constant + coef . w
struct LinearForm {
  std::vector<double> coef;
  double constant = 0.0;

  double eval(const std::vector<double>& w) const;
};

// At least one option vanishes on the feasible set.
struct Disjunction {
  std::vector<LinearForm> options;
  int source_constraint = 0;
};

// Sound over-approximation of the partial feasible set S_p.
struct FeasibilityEnvelope {
  std::vector<Interval> box;
  std::vector<LinearForm> linear_eqs;
  std::vector<Disjunction> disjunctions;
  bool empty = false;
};

// Envelope of S_p built from the structural facts of constraints 1..p.
FeasibilityEnvelope propagate_envelope(const PopModel& model, int p);

// Global nonnegativity of f over the orthant: nonnegative coefficients, a
// verified even-power decomposition, or sampled falsification.
ConditionVerdict check_nonneg_on_orthant(const Polynomial& f, const ConstraintHint& hint,
                                         SplitMix64& rng);

// inf { f_p(w) : w in S_{p-1} } >= 0
ConditionVerdict check_cond_1_1(const PopModel& model, int p, SplitMix64& rng);

// inf of the top-degree part of f_p over the recession set of S_{p-1}.
ConditionVerdict check_cond_1_2(const PopModel& model, int p, SplitMix64& rng);

// Recession condition on the objective over the final step.
ConditionVerdict check_cond_2(const PopModel& model, SplitMix64& rng);

struct StepVerdicts {
  int p = 0;
  ConditionVerdict cond_1_0;
  ConditionVerdict cond_1_1;
  ConditionVerdict cond_1_2;
  bool verified = false;  // cond_1_0 or (cond_1_1 and cond_1_2)
};

struct FaceCertificate {
  std::vector<StepVerdicts> steps;
  bool chain_ok = false;
  ConditionVerdict cond2;
};

FaceCertificate build_face_chain(const PopModel& model, std::uint64_t seed = 42);

enum class Reformulation { Exact, ExactBecauseUnbounded, NotExact, Unknown };

Reformulation reformulation_verdict(const PopModel& model, const FaceCertificate& cert,
                                    std::optional<ExtReal> oracle_value = std::nullopt);

const char* to_string(CertKind kind);
const char* to_string(VerdictStatus status);
const char* to_string(Reformulation verdict);

enum class BasisMode { Cover, Full };

// Conic data of the convexified problem over a degree-omega monomial basis.
ConicProblem pop_to_conic(const PopModel& model, BasisMode basis_mode = BasisMode::Cover,
                          GramMode gram_mode = GramMode::EvenSplit);

}  // namespace copos
