#include "copos/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "copos/lp.hpp"

namespace copos {

namespace {

constexpr double kStrictNeg = -1e-9;   // falsification threshold
constexpr double kFeasTol = 1e-6;      // approximate feasibility of samples
constexpr int kMaxBranches = 256;
constexpr int kSamples = 2000;

bool all_terms_match(const Polynomial& claim, const Polynomial& f) {
  return claim.same_terms(f, 1e-12 * (1.0 + f.degree()));
}

std::optional<LinearForm> as_linear(const Polynomial& g) {
  if (g.degree() > 1) return std::nullopt;
  LinearForm lf;
  lf.coef.assign(g.num_vars(), 0.0);
  for (const auto& [exps, coef] : g.terms()) {
    int d = total_degree(exps);
    if (d == 0) {
      lf.constant = coef;
    } else {
      for (int i = 0; i < g.num_vars(); ++i) {
        if (exps[i] == 1) lf.coef[i] = coef;
      }
    }
  }
  return lf;
}

Interval interval_eval_poly(const Polynomial& f, const std::vector<Interval>& box) {
  Interval total = Interval::point(0.0);
  for (const auto& [exps, coef] : f.terms()) {
    Interval term = Interval::point(1.0);
    for (int i = 0; i < f.num_vars(); ++i) {
      if (exps[i] > 0) term = term * box[i].pow(exps[i]);
    }
    total = total + term.scaled(coef);
  }
  return total;
}

// Gauss-Seidel interval propagation of linear equations over the box.
std::vector<Interval> propagate_box(std::vector<Interval> box,
                                    const std::vector<LinearForm>& eqs, bool* empty) {
  *empty = false;
  const int n = static_cast<int>(box.size());
  for (int pass = 0; pass < 30; ++pass) {
    bool changed = false;
    for (const LinearForm& eq : eqs) {
      for (int i = 0; i < n; ++i) {
        if (eq.coef[i] == 0.0) continue;
        Interval rhs = Interval::point(-eq.constant);
        for (int j = 0; j < n; ++j) {
          if (j == i || eq.coef[j] == 0.0) continue;
          rhs = rhs - box[j].scaled(eq.coef[j]);
        }
        Interval candidate = rhs.scaled(1.0 / eq.coef[i]);
        Interval tightened = box[i].intersect(candidate);
        if (tightened.empty()) {
          if (tightened.lo - tightened.hi > 1e-9) {
            *empty = true;
            return box;
          }
          tightened = Interval::point((tightened.lo + tightened.hi) / 2.0);
        }
        if (tightened.lo != box[i].lo || tightened.hi != box[i].hi) {
          box[i] = tightened;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  return box;
}

// Verified structural facts of a single constraint.
struct StructuralFacts {
  std::vector<LinearForm> eqs;
  std::vector<Disjunction> disjunctions;
  bool soep_verified = false;
  bool product_verified = false;
};

bool verify_soep(const Polynomial& f, const ConstraintHint& hint) {
  if (hint.type != ConstraintHint::Type::SumOfEvenPowers) return false;
  if (hint.power <= 0 || hint.power % 2 != 0) {
    fail(ErrorCode::InvalidArgument, "even-power hint needs a positive even exponent");
  }
  Polynomial sum(f.num_vars());
  for (const Polynomial& g : hint.forms) sum = sum + g.pow(hint.power);
  if (!all_terms_match(sum, f)) {
    fail(ErrorCode::InvalidArgument, "even-power hint does not reconstruct the constraint");
  }
  return true;
}

bool verify_product_form(const Polynomial& f, const ConstraintHint& hint) {
  if (hint.type != ConstraintHint::Type::ProductForm) return false;
  Polynomial sum(f.num_vars());
  for (const auto& factors : hint.products) {
    if (factors.empty()) fail(ErrorCode::InvalidArgument, "empty product in hint");
    Polynomial prod = Polynomial::constant(f.num_vars(), 1.0);
    for (const Polynomial& g : factors) prod = prod * g;
    sum = sum + prod;
  }
  if (!all_terms_match(sum, f)) {
    fail(ErrorCode::InvalidArgument, "product hint does not reconstruct the constraint");
  }
  return true;
}

// Enumerates branch combinations induced by the disjunctions (cap bounded)
// and hands each propagated branch box to `visit`; returns false if any
// branch visit fails. Branches with an empty box are vacuous.
bool for_each_branch(const FeasibilityEnvelope& env,
                     const std::function<bool(const std::vector<Interval>&)>& visit) {
  long combos = 1;
  for (const Disjunction& d : env.disjunctions) {
    combos *= static_cast<long>(d.options.size());
    if (combos > kMaxBranches) break;
  }
  if (combos > kMaxBranches || env.disjunctions.empty()) {
    bool empty = false;
    std::vector<Interval> box = propagate_box(env.box, env.linear_eqs, &empty);
    return empty || visit(box);
  }

  const int k = static_cast<int>(env.disjunctions.size());
  std::vector<int> pick(k, 0);
  while (true) {
    std::vector<LinearForm> eqs = env.linear_eqs;
    for (int i = 0; i < k; ++i) eqs.push_back(env.disjunctions[i].options[pick[i]]);
    bool empty = false;
    std::vector<Interval> box = propagate_box(env.box, eqs, &empty);
    if (!empty && !visit(box)) return false;
    int d = 0;
    while (d < k && ++pick[d] == static_cast<int>(env.disjunctions[d].options.size())) {
      pick[d++] = 0;
    }
    if (d == k) break;
  }
  return true;
}

// Interval proof that f >= 0 over every branch of the envelope; respects a
// verified product decomposition so factored sign information survives.
bool interval_nonneg(const Polynomial& f, const ConstraintHint& hint, bool hint_verified,
                     const FeasibilityEnvelope& env) {
  if (env.empty) return true;
  auto bound = [&](const std::vector<Interval>& box) {
    if (hint_verified && hint.type == ConstraintHint::Type::ProductForm) {
      Interval total = Interval::point(0.0);
      for (const auto& factors : hint.products) {
        Interval prod = Interval::point(1.0);
        for (const Polynomial& g : factors) prod = prod * interval_eval_poly(g, box);
        total = total + prod;
      }
      if (total.lo >= 0.0) return true;
    }
    return interval_eval_poly(f, box).lo >= 0.0;
  };
  return for_each_branch(env, bound);
}

// Substitution solver: resolves pinned variables from the linear equations so
// samples satisfy them exactly.
struct Substitutions {
  struct Entry {
    bool active = false;
    double rhs = 0.0;
    std::vector<std::pair<int, double>> terms;
  };
  std::vector<Entry> entries;
  std::vector<int> free_vars;

  explicit Substitutions(int n, const std::vector<LinearForm>& eqs) {
    entries.resize(n);
    for (const LinearForm& eq : eqs) {
      int pivot = -1;
      for (int i = n - 1; i >= 0; --i) {
        if (eq.coef[i] != 0.0 && !entries[i].active) {
          pivot = i;
          break;
        }
      }
      if (pivot < 0) continue;
      Entry e;
      e.active = true;
      e.rhs = -eq.constant / eq.coef[pivot];
      for (int i = 0; i < n; ++i) {
        if (i != pivot && eq.coef[i] != 0.0) e.terms.emplace_back(i, -eq.coef[i] / eq.coef[pivot]);
      }
      entries[pivot] = std::move(e);
    }
    for (int i = 0; i < n; ++i) {
      if (!entries[i].active) free_vars.push_back(i);
    }
    // Expand chained references until entries depend on free variables only.
    for (auto& e : entries) {
      if (!e.active) continue;
      bool again = true;
      int guard = n + 1;
      while (again && guard-- > 0) {
        again = false;
        std::vector<std::pair<int, double>> expanded;
        for (auto [j, c] : e.terms) {
          if (entries[j].active) {
            e.rhs += c * entries[j].rhs;
            for (auto [k, ck] : entries[j].terms) expanded.emplace_back(k, c * ck);
            again = true;
          } else {
            expanded.emplace_back(j, c);
          }
        }
        e.terms = std::move(expanded);
      }
    }
  }

  void complete(std::vector<double>& w) const {
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (!entries[i].active) continue;
      double v = entries[i].rhs;
      for (auto [j, c] : entries[i].terms) v += c * w[j];
      w[i] = v;
    }
  }
};

// Draw an approximately feasible sample: free coordinates from the box (with
// exponential tails past unbounded edges), pinned coordinates from the
// equations.
std::vector<double> sample_point(const FeasibilityEnvelope& env, const Substitutions& subst,
                                 SplitMix64& rng) {
  const int n = static_cast<int>(env.box.size());
  std::vector<double> w(n, 0.0);
  for (int i : subst.free_vars) {
    const Interval& b = env.box[i];
    if (b.bounded()) {
      w[i] = rng.uniform(b.lo, b.hi);
    } else {
      w[i] = b.lo + rng.exponential(10.0);
    }
  }
  subst.complete(w);
  return w;
}

bool in_envelope(const FeasibilityEnvelope& env, const std::vector<double>& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] < env.box[i].lo - kFeasTol || w[i] > env.box[i].hi + kFeasTol) return false;
    if (w[i] < -kFeasTol) return false;
  }
  return true;
}

bool constraints_hold(const PopModel& model, int upto, const std::vector<double>& w) {
  for (int q = 1; q <= upto; ++q) {
    if (std::abs(model.f[q].evaluate(w)) > kFeasTol) return false;
  }
  return true;
}

// Sampling falsifier for inf { g(w) : w in S_upto } >= 0.
std::optional<std::vector<double>> find_violation(const PopModel& model, int upto,
                                                  const Polynomial& g,
                                                  const FeasibilityEnvelope& env,
                                                  SplitMix64& rng) {
  if (env.empty) return std::nullopt;
  Substitutions subst(static_cast<int>(env.box.size()), env.linear_eqs);

  std::vector<std::vector<double>> candidates;
  const int n = static_cast<int>(env.box.size());
  std::vector<double> base(n, 0.0);
  for (int i : subst.free_vars) base[i] = env.box[i].lo;
  subst.complete(base);
  candidates.push_back(base);
  for (int i : subst.free_vars) {
    if (!std::isfinite(env.box[i].hi)) continue;
    std::vector<double> w = base;
    w[i] = env.box[i].hi;
    subst.complete(w);
    candidates.push_back(w);
  }
  {
    std::vector<double> w(n, 0.0);
    for (int i : subst.free_vars) {
      w[i] = std::isfinite(env.box[i].hi) ? env.box[i].hi : env.box[i].lo + 10.0;
    }
    subst.complete(w);
    candidates.push_back(w);
  }
  for (int s = 0; s < kSamples; ++s) candidates.push_back(sample_point(env, subst, rng));

  for (const auto& w : candidates) {
    if (!in_envelope(env, w)) continue;
    if (!constraints_hold(model, upto, w)) continue;
    if (g.evaluate(w) < kStrictNeg) return w;
  }
  return std::nullopt;
}

StructuralFacts constraint_facts(const PopModel& model, int p, const FeasibilityEnvelope& current) {
  StructuralFacts facts;
  const Polynomial& f = model.f[p];
  const ConstraintHint& hint = model.hints[p];

  if (hint.type == ConstraintHint::Type::SumOfEvenPowers && verify_soep(f, hint)) {
    facts.soep_verified = true;
    for (const Polynomial& g : hint.forms) {
      if (auto lf = as_linear(g)) facts.eqs.push_back(*lf);
    }
    return facts;
  }

  if (hint.type == ConstraintHint::Type::ProductForm && verify_product_form(f, hint)) {
    facts.product_verified = true;
    // With several products the split into per-product equalities is sound
    // only when each product is provably nonnegative on the current envelope.
    bool can_split = hint.products.size() == 1;
    if (!can_split) {
      can_split = true;
      for (const auto& factors : hint.products) {
        Polynomial prod = Polynomial::constant(f.num_vars(), 1.0);
        for (const Polynomial& g : factors) prod = prod * g;
        ConstraintHint sub = ConstraintHint::product_form({factors});
        if (!interval_nonneg(prod, sub, true, current)) {
          can_split = false;
          break;
        }
      }
    }
    if (can_split) {
      for (const auto& factors : hint.products) {
        Disjunction d;
        d.source_constraint = p;
        bool all_linear = true;
        for (const Polynomial& g : factors) {
          if (auto lf = as_linear(g)) {
            d.options.push_back(*lf);
          } else {
            all_linear = false;
          }
        }
        if (all_linear && !d.options.empty()) facts.disjunctions.push_back(std::move(d));
      }
    }
  }
  return facts;
}

FeasibilityEnvelope envelope_up_to(const PopModel& model, int p) {
  FeasibilityEnvelope env;
  env.box.assign(model.n, Interval::nonneg_axis());
  for (int q = 1; q <= p; ++q) {
    StructuralFacts facts = constraint_facts(model, q, env);
    for (auto& eq : facts.eqs) env.linear_eqs.push_back(std::move(eq));
    for (auto& d : facts.disjunctions) env.disjunctions.push_back(std::move(d));
    bool empty = false;
    env.box = propagate_box(env.box, env.linear_eqs, &empty);
    if (empty) {
      env.empty = true;
      return env;
    }
  }
  return env;
}

// Top-degree part of f_p, expressed over the w variables.
Polynomial tilde_part(const PopModel& model, int i) {
  return model.f[i].split_top_degree(2 * model.omega).second;
}

// True when the tilde parts of verified even-power decompositions force the
// recession set of S_q to the origin.
bool tilde_set_pinned(const PopModel& model, int q) {
  std::vector<LinearForm> rows;
  for (int i = 1; i <= q; ++i) {
    const ConstraintHint& hint = model.hints[i];
    if (hint.type != ConstraintHint::Type::SumOfEvenPowers) continue;
    if (hint.power != 2 * model.omega) continue;  // only top-degree powers survive at x0 = 0
    if (!verify_soep(model.f[i], hint)) continue;
    for (const Polynomial& g : hint.forms) {
      auto lf = as_linear(g);
      if (!lf) continue;
      lf->constant = 0.0;  // recession form drops the affine offset
      rows.push_back(*lf);
    }
  }
  if (rows.empty()) return false;

  // Orthant coverage: nonnegative rows jointly touching every variable.
  std::vector<bool> covered(model.n, false);
  bool all_nonneg = true;
  for (const LinearForm& r : rows) {
    for (int i = 0; i < model.n; ++i) {
      if (r.coef[i] < 0.0) all_nonneg = false;
      if (r.coef[i] > 0.0) covered[i] = true;
    }
  }
  if (all_nonneg && std::all_of(covered.begin(), covered.end(), [](bool b) { return b; })) {
    return true;
  }

  // Rank test: full column rank pins w = 0 without the orthant.
  std::vector<std::vector<double>> mat;
  for (const LinearForm& r : rows) mat.push_back(r.coef);
  int rank = 0;
  const int n = model.n;
  std::vector<int> used(mat.size(), 0);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (std::size_t r = 0; r < mat.size(); ++r) {
      if (!used[r] && std::abs(mat[r][col]) > 1e-9) {
        pivot = static_cast<int>(r);
        break;
      }
    }
    if (pivot < 0) continue;
    used[pivot] = 1;
    ++rank;
    for (std::size_t r = 0; r < mat.size(); ++r) {
      if (static_cast<int>(r) == pivot) continue;
      double f = mat[r][col] / mat[pivot][col];
      if (f == 0.0) continue;
      for (int k = 0; k < n; ++k) mat[r][k] -= f * mat[pivot][k];
    }
  }
  return rank == n;
}

// LP test that a coordinate vanishes on the normalized recession cone
// { Aw = 0, w >= 0, w_i <= 1 }.
bool recession_coordinate_zero(const QopModel& qop, int var) {
  std::vector<std::vector<double>> rows = qop.A;
  for (auto& row : rows) row.push_back(0.0);
  std::vector<double> bound(qop.n + 1, 0.0);
  bound[var] = 1.0;
  bound[qop.n] = 1.0;
  rows.push_back(bound);
  std::vector<double> rhs(qop.A.size(), 0.0);
  rhs.push_back(1.0);

  LpProblem lp;
  lp.objective.assign(qop.n + 1, 0.0);
  lp.objective[var] = -1.0;
  lp.eq_matrix = rows;
  lp.eq_rhs = rhs;
  LpResult r = solve_lp(lp);
  return r.status == LpStatus::Optimal && -r.value <= 1e-8;
}

bool recession_cone_trivial(const QopModel& qop) {
  for (int i = 0; i < qop.n; ++i) {
    if (!recession_coordinate_zero(qop, i)) return false;
  }
  return true;
}

FeasibilityEnvelope tilde_envelope(const PopModel& model, int q) {
  FeasibilityEnvelope env;
  env.box.assign(model.n, Interval::nonneg_axis());
  for (int i = 1; i <= q; ++i) {
    const ConstraintHint& hint = model.hints[i];
    if (hint.type != ConstraintHint::Type::SumOfEvenPowers) continue;
    if (hint.power != 2 * model.omega) continue;
    if (!verify_soep(model.f[i], hint)) continue;
    for (const Polynomial& g : hint.forms) {
      auto lf = as_linear(g);
      if (!lf) continue;
      lf->constant = 0.0;
      env.linear_eqs.push_back(*lf);
    }
  }
  bool empty = false;
  env.box = propagate_box(env.box, env.linear_eqs, &empty);
  env.empty = empty;
  return env;
}

// Shared implementation of the two recession conditions: the functional is
// the tilde part of f[index] and the region is the recession set of S_q.
ConditionVerdict recession_condition(const PopModel& model, int index, int q, SplitMix64& rng) {
  ConditionVerdict v;
  if (tilde_set_pinned(model, q)) {
    v.status = VerdictStatus::Verified;
    v.certificate = CertKind::ZeroTildeSet;
    return v;
  }
  if (model.f[index].degree() < 2 * model.omega) {
    v.status = VerdictStatus::Verified;
    v.certificate = CertKind::DegShortcut;
    return v;
  }
  if (model.qop_origin && q >= 1) {
    if (recession_cone_trivial(*model.qop_origin)) {
      v.status = VerdictStatus::Verified;
      v.certificate = CertKind::ZeroTildeSet;
      v.detail = "recession cone of the linear equalities is trivial";
      return v;
    }
    // Binary constraints vanish on the recession cone coordinatewise.
    if (index >= 3) {
      std::vector<int> bins = model.qop_origin->bin;
      std::sort(bins.begin(), bins.end());
      int var = bins[index - 3];
      if (recession_coordinate_zero(*model.qop_origin, var)) {
        v.status = VerdictStatus::Verified;
        v.certificate = CertKind::BurerConditions;
        return v;
      }
    }
  }

  Polynomial tilde = tilde_part(model, index);
  bool nonneg = true;
  for (const auto& [exps, coef] : tilde.terms()) nonneg = nonneg && coef >= 0.0;
  if (nonneg) {
    v.status = VerdictStatus::Verified;
    v.certificate = CertKind::NonnegCoeffs;
    return v;
  }

  // The top part of a verified even-power sum is again a sum of even powers.
  if (model.hints[index].type == ConstraintHint::Type::SumOfEvenPowers &&
      model.hints[index].power == 2 * model.omega &&
      verify_soep(model.f[index], model.hints[index])) {
    v.status = VerdictStatus::Verified;
    v.certificate = CertKind::SumOfEvenPowers;
    return v;
  }

  FeasibilityEnvelope env = tilde_envelope(model, q);
  if (env.empty) {
    v.status = VerdictStatus::Verified;
    v.certificate = CertKind::ZeroTildeSet;
    return v;
  }
  if (interval_nonneg(tilde, ConstraintHint::plain(), false, env)) {
    v.status = VerdictStatus::Verified;
    v.certificate = CertKind::IntervalBound;
    return v;
  }

  // Falsification by sampling the recession envelope: the tilde constraints
  // of earlier steps must vanish along the sample.
  Substitutions subst(model.n, env.linear_eqs);
  for (int s = 0; s < kSamples; ++s) {
    std::vector<double> w = sample_point(env, subst, rng);
    if (!in_envelope(env, w)) continue;
    bool ok = true;
    for (int i = 1; i <= q && ok; ++i) {
      Polynomial gt = tilde_part(model, i);
      if (!gt.is_zero() && std::abs(gt.evaluate(w)) > kFeasTol) ok = false;
    }
    if (!ok) continue;
    if (tilde.evaluate(w) < kStrictNeg) {
      v.status = VerdictStatus::Falsified;
      v.witness = w;
      return v;
    }
  }
  v.status = VerdictStatus::Unknown;
  return v;
}

}  // namespace

ConstraintHint ConstraintHint::sum_of_even_powers(int power, std::vector<Polynomial> forms) {
  ConstraintHint h;
  h.type = Type::SumOfEvenPowers;
  h.power = power;
  h.forms = std::move(forms);
  return h;
}

ConstraintHint ConstraintHint::product_form(std::vector<std::vector<Polynomial>> products) {
  ConstraintHint h;
  h.type = Type::ProductForm;
  h.products = std::move(products);
  return h;
}

double LinearForm::eval(const std::vector<double>& w) const {
  double v = constant;
  for (std::size_t i = 0; i < coef.size(); ++i) v += coef[i] * w[i];
  return v;
}

void PopModel::validate() const {
  if (n < 1) fail(ErrorCode::InvalidArgument, "pop needs at least one variable");
  if (static_cast<int>(f.size()) != m + 1) {
    fail(ErrorCode::InvalidArgument, "pop needs objective plus m constraints");
  }
  if (omega < 1) fail(ErrorCode::InvalidArgument, "omega must be at least 1");
  for (const Polynomial& fi : f) {
    if (fi.num_vars() != n) fail(ErrorCode::InvalidArgument, "polynomial arity mismatch");
    if (fi.degree() > 2 * omega) {
      fail(ErrorCode::InvalidArgument, "2*omega must cover every polynomial degree");
    }
  }
  if (!hints.empty() && static_cast<int>(hints.size()) != m + 1) {
    fail(ErrorCode::InvalidArgument, "hints must align with f0..fm");
  }
}

PopModel PopModel::from_qop(const QopModel& qop) {
  qop.validate();
  PopModel pop;
  pop.n = qop.n;
  pop.m = qop.num_constraints();
  pop.omega = 1;
  pop.qop_origin = qop;

  Polynomial f0(qop.n);
  for (int i = 0; i < qop.n; ++i) {
    for (int j = 0; j < qop.n; ++j) {
      if (qop.C[i][j] != 0.0) {
        f0 = f0 +
             (Polynomial::variable(qop.n, i) * Polynomial::variable(qop.n, j)).scaled(qop.C[i][j]);
      }
    }
    if (qop.c[i] != 0.0) f0 = f0 + Polynomial::variable(qop.n, i).scaled(2.0 * qop.c[i]);
  }
  pop.f.push_back(f0);
  for (Polynomial& fp : constraint_polys(qop)) pop.f.push_back(std::move(fp));

  pop.hints.resize(pop.m + 1);
  // f1 is a sum of squares of the equality rows.
  std::vector<Polynomial> rows;
  for (std::size_t r = 0; r < qop.A.size(); ++r) {
    Polynomial row = Polynomial::constant(qop.n, -qop.b[r]);
    for (int j = 0; j < qop.n; ++j) {
      if (qop.A[r][j] != 0.0) row = row + Polynomial::variable(qop.n, j).scaled(qop.A[r][j]);
    }
    rows.push_back(row);
  }
  if (!rows.empty()) pop.hints[1] = ConstraintHint::sum_of_even_powers(2, std::move(rows));
  // f2 is a sum of complementarity products.
  if (!qop.comp.empty()) {
    std::vector<std::vector<Polynomial>> products;
    for (auto [j, k] : qop.comp) {
      products.push_back({Polynomial::variable(qop.n, j), Polynomial::variable(qop.n, k)});
    }
    pop.hints[2] = ConstraintHint::product_form(std::move(products));
  }
  // Binary constraints w(1-w).
  std::vector<int> bins = qop.bin;
  std::sort(bins.begin(), bins.end());
  for (std::size_t t = 0; t < bins.size(); ++t) {
    Polynomial w = Polynomial::variable(qop.n, bins[t]);
    Polynomial one_minus = Polynomial::constant(qop.n, 1.0) - w;
    pop.hints[3 + t] = ConstraintHint::product_form({{w, one_minus}});
  }
  pop.validate();
  return pop;
}

FeasibilityEnvelope propagate_envelope(const PopModel& model, int p) {
  model.validate();
  if (p < 0 || p > model.m) fail(ErrorCode::InvalidArgument, "envelope level out of range");
  return envelope_up_to(model, p);
}

ConditionVerdict check_nonneg_on_orthant(const Polynomial& f, const ConstraintHint& hint,
                                         SplitMix64& rng) {
  ConditionVerdict v;
  bool nonneg = true;
  for (const auto& [exps, coef] : f.terms()) nonneg = nonneg && coef >= 0.0;
  if (nonneg) {
    v.status = VerdictStatus::Verified;
    v.certificate = CertKind::NonnegCoeffs;
    return v;
  }
  if (hint.type == ConstraintHint::Type::SumOfEvenPowers && verify_soep(f, hint)) {
    v.status = VerdictStatus::Verified;
    v.certificate = CertKind::SumOfEvenPowers;
    return v;
  }

  // Product forms with interval-nonnegative factors over the orthant.
  if (hint.type == ConstraintHint::Type::ProductForm && verify_product_form(f, hint)) {
    FeasibilityEnvelope orthant;
    orthant.box.assign(f.num_vars(), Interval::nonneg_axis());
    if (interval_nonneg(f, hint, true, orthant)) {
      v.status = VerdictStatus::Verified;
      v.certificate = CertKind::IntervalBound;
      return v;
    }
  }

  // Falsification: origin, axis points, then random orthant samples.
  const int n = f.num_vars();
  std::vector<std::vector<double>> candidates;
  candidates.emplace_back(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (double scale : {1.0, 5.0}) {
      std::vector<double> w(n, 0.0);
      w[i] = scale;
      candidates.push_back(std::move(w));
    }
  }
  for (int s = 0; s < kSamples; ++s) {
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = rng.exponential(2.0);
    candidates.push_back(std::move(w));
  }
  for (const auto& w : candidates) {
    if (f.evaluate(w) < kStrictNeg) {
      v.status = VerdictStatus::Falsified;
      v.witness = w;
      return v;
    }
  }
  v.status = VerdictStatus::Unknown;
  return v;
}

ConditionVerdict check_cond_1_1(const PopModel& model, int p, SplitMix64& rng) {
  model.validate();
  if (p < 1 || p > model.m) fail(ErrorCode::InvalidArgument, "constraint index out of range");
  FeasibilityEnvelope env = envelope_up_to(model, p - 1);
  ConditionVerdict v;
  if (env.empty) {
    v.status = VerdictStatus::Verified;
    v.certificate = CertKind::IntervalBound;
    v.detail = "feasible set is empty at this step";
    return v;
  }

  const ConstraintHint& hint = model.hints[p];
  bool hint_verified = false;
  if (hint.type == ConstraintHint::Type::ProductForm) {
    hint_verified = verify_product_form(model.f[p], hint);
  }
  if (interval_nonneg(model.f[p], hint, hint_verified, env)) {
    v.status = VerdictStatus::Verified;
    v.certificate = CertKind::IntervalBound;
    return v;
  }

  ConditionVerdict global = check_nonneg_on_orthant(model.f[p], hint, rng);
  if (global.verified()) return global;

  // QOP binary steps: boundedness of the coordinate on the linear set.
  if (model.qop_origin && p >= 3) {
    const QopModel& qop = *model.qop_origin;
    std::vector<int> bins = qop.bin;
    std::sort(bins.begin(), bins.end());
    int var = bins[p - 3];
    LpProblem lp;
    lp.objective.assign(qop.n, 0.0);
    lp.objective[var] = -1.0;
    lp.eq_matrix = qop.A;
    lp.eq_rhs = qop.b;
    LpResult r = solve_lp(lp);
    if (r.status == LpStatus::Infeasible ||
        (r.status == LpStatus::Optimal && -r.value <= 1.0 + 1e-8)) {
      v.status = VerdictStatus::Verified;
      v.certificate = CertKind::BurerConditions;
      return v;
    }
  }

  if (auto w = find_violation(model, p - 1, model.f[p], env, rng)) {
    v.status = VerdictStatus::Falsified;
    v.witness = *w;
    return v;
  }
  v.status = VerdictStatus::Unknown;
  return v;
}

ConditionVerdict check_cond_1_2(const PopModel& model, int p, SplitMix64& rng) {
  model.validate();
  if (p < 1 || p > model.m) fail(ErrorCode::InvalidArgument, "constraint index out of range");
  return recession_condition(model, p, p - 1, rng);
}

ConditionVerdict check_cond_2(const PopModel& model, SplitMix64& rng) {
  model.validate();
  return recession_condition(model, 0, model.m, rng);
}

FaceCertificate build_face_chain(const PopModel& model, std::uint64_t seed) {
  model.validate();
  FaceCertificate cert;
  cert.chain_ok = true;
  for (int p = 1; p <= model.m; ++p) {
    SplitMix64 rng(seed + static_cast<std::uint64_t>(p) * 0x9e3779b97f4a7c15ULL);
    StepVerdicts step;
    step.p = p;
    step.cond_1_0 = check_nonneg_on_orthant(model.f[p], model.hints[p], rng);
    step.cond_1_1 = check_cond_1_1(model, p, rng);
    step.cond_1_2 = check_cond_1_2(model, p, rng);
    step.verified =
        step.cond_1_0.verified() || (step.cond_1_1.verified() && step.cond_1_2.verified());
    cert.chain_ok = cert.chain_ok && step.verified;
    cert.steps.push_back(std::move(step));
  }
  SplitMix64 rng(seed);
  cert.cond2 = check_cond_2(model, rng);
  return cert;
}

Reformulation reformulation_verdict(const PopModel& model, const FaceCertificate& cert,
                                    std::optional<ExtReal> oracle_value) {
  model.validate();
  if (!cert.chain_ok) return Reformulation::Unknown;
  if (cert.cond2.verified()) return Reformulation::Exact;
  if (oracle_value && oracle_value->is_neg_inf()) return Reformulation::ExactBecauseUnbounded;
  if (cert.cond2.status == VerdictStatus::Falsified && oracle_value &&
      oracle_value->is_finite()) {
    return Reformulation::NotExact;
  }
  return Reformulation::Unknown;
}

const char* to_string(CertKind kind) {
  switch (kind) {
    case CertKind::NonnegCoeffs:
      return "nonneg-coeffs";
    case CertKind::SumOfEvenPowers:
      return "sum-of-even-powers";
    case CertKind::DegShortcut:
      return "deg-shortcut";
    case CertKind::ZeroTildeSet:
      return "zero-tilde-set";
    case CertKind::IntervalBound:
      return "interval-bound";
    case CertKind::BurerConditions:
      return "burer-conditions";
  }
  return "?";
}

const char* to_string(VerdictStatus status) {
  switch (status) {
    case VerdictStatus::Verified:
      return "verified";
    case VerdictStatus::Falsified:
      return "falsified";
    case VerdictStatus::Unknown:
      return "unknown";
  }
  return "?";
}

const char* to_string(Reformulation verdict) {
  switch (verdict) {
    case Reformulation::Exact:
      return "exact";
    case Reformulation::ExactBecauseUnbounded:
      return "exact-because-unbounded";
    case Reformulation::NotExact:
      return "not-exact";
    case Reformulation::Unknown:
      return "unknown";
  }
  return "?";
}

ConicProblem pop_to_conic(const PopModel& model, BasisMode basis_mode, GramMode gram_mode) {
  model.validate();
  std::vector<Polynomial> fbars;
  fbars.reserve(model.f.size());
  for (const Polynomial& fi : model.f) fbars.push_back(fi.homogenized(2 * model.omega));

  BasisPtr basis;
  if (basis_mode == BasisMode::Full) {
    basis = full_basis(model.n, model.omega);
  } else {
    std::vector<Exponents> targets;
    for (const Polynomial& fbar : fbars) {
      for (const auto& [exps, coef] : fbar.terms()) targets.push_back(exps);
    }
    basis = covering_basis(targets, model.n, model.omega);
  }

  ConicProblem conic;
  conic.basis = basis;
  conic.Q0 = gram_matrix(fbars[0], basis, gram_mode);
  for (int p = 1; p <= model.m; ++p) {
    conic.Qp.push_back(gram_matrix(fbars[p], basis, gram_mode));
  }
  conic.H0 = h0(basis);
  conic.classes = consistency_classes(*basis);
  return conic;
}

}  // namespace copos
