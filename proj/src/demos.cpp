#include "copos/demos.hpp"

#include <cmath>
#include <sstream>

#include "copos/dnn.hpp"
#include "copos/oracle.hpp"

namespace copos {

namespace {

std::string fmt(const ExtReal& v) {
  if (v.is_neg_inf()) return "-inf";
  if (v.is_pos_inf()) return "+inf";
  std::ostringstream out;
  out << v.value;
  return out.str();
}

std::string fmt(const std::vector<double>& v) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ", ";
    out << v[i];
  }
  out << ")";
  return out.str();
}

void print_slice(std::ostringstream& out, const RayCone& cone, const std::vector<double>& h0) {
  SliceReport s1 = slice(cone, h0, 1.0);
  out << "  G(K,1) = {";
  for (std::size_t i = 0; i < s1.slice_atoms.size(); ++i) {
    if (i) out << ", ";
    out << fmt(s1.slice_atoms[i]);
  }
  out << "}\n";
  out << "  recession atoms: {";
  for (std::size_t i = 0; i < s1.recession_atoms.size(); ++i) {
    if (i) out << ", ";
    out << fmt(s1.recession_atoms[i]);
  }
  out << "}\n";
}

std::string demo_example_31() {
  std::ostringstream out;
  RayCone cone = demo_ray_cone();
  const std::vector<std::vector<double>> ps = {{1.0, 0.0},  {0.0, 1.0}, {1.0, 1.0},
                                               {2.0, -1.0}, {-1.0, 0.0}, {-1.0, 2.0},
                                               {-2.0, 1.0}};

  out << "case (a): H0 = (0.5, 1)\n";
  std::vector<double> ha{0.5, 1.0};
  print_slice(out, cone, ha);
  for (const auto& p : ps) {
    TheoremMain0Report r = verify_theorem_main0(cone, ha, p);
    out << "  Q0 = " << fmt(p) << ": zeta(K,1) = " << fmt(r.zeta_nonconvex_1)
        << ", zeta(K,0) = " << fmt(r.zeta_nonconvex_0)
        << ", zeta(coK,1) = " << fmt(r.zeta_convex_1)
        << (r.additive_identity ? "  [additive identity ok]" : "  [ADDITIVE IDENTITY FAILS]")
        << (r.iff_consistent ? " [iff ok]" : " [IFF FAILS]") << "\n";
  }

  out << "case (b): H0 = (0, 1)\n";
  std::vector<double> hb{0.0, 1.0};
  print_slice(out, cone, hb);
  for (const auto& p : ps) {
    TheoremMain0Report r = verify_theorem_main0(cone, hb, p);
    out << "  Q0 = " << fmt(p) << ": zeta(K,1) = " << fmt(r.zeta_nonconvex_1)
        << ", zeta(K,0) = " << fmt(r.zeta_nonconvex_0)
        << ", zeta(coK,1) = " << fmt(r.zeta_convex_1)
        << (r.additive_identity ? "  [additive identity ok]" : "  [ADDITIVE IDENTITY FAILS]")
        << (r.iff_consistent ? " [iff ok]" : " [IFF FAILS]") << "\n";
  }
  return out.str();
}

void print_certificate(std::ostringstream& out, const FaceCertificate& cert,
                       Reformulation verdict) {
  for (const StepVerdicts& s : cert.steps) {
    out << "  step " << s.p << ": " << (s.verified ? "verified" : "NOT verified")
        << "  (1-0 " << to_string(s.cond_1_0.status);
    if (s.cond_1_0.certificate) out << "/" << to_string(*s.cond_1_0.certificate);
    out << ", 1-1 " << to_string(s.cond_1_1.status);
    if (s.cond_1_1.certificate) out << "/" << to_string(*s.cond_1_1.certificate);
    out << ", 1-2 " << to_string(s.cond_1_2.status);
    if (s.cond_1_2.certificate) out << "/" << to_string(*s.cond_1_2.certificate);
    out << ")\n";
  }
  out << "  recession condition on the objective: " << to_string(cert.cond2.status);
  if (cert.cond2.certificate) out << " (" << to_string(*cert.cond2.certificate) << ")";
  out << "\n  verdict: " << to_string(verdict) << "\n";
}

std::string demo_example_61(const DemoOptions& options) {
  std::ostringstream out;
  QopModel qop = demo_simplex_qop();
  out << "binary simplex QOP: n = 2, w1 + w2 = 1, w1 binary, objective -w1\n";

  BurerReport burer = check_burer_conditions(qop);
  out << "boundedness / recession checks: " << (burer.all_ok ? "all ok" : "FAILED") << "\n";
  for (const auto& b : burer.binary) {
    out << "  max w" << (b.index + 1) << " on the linear set = " << b.bound
        << (b.ok ? " (ok)" : " (violated)") << "\n";
  }

  PopModel pop = PopModel::from_qop(qop);
  FaceCertificate cert = build_face_chain(pop, options.seed);
  OracleResult oracle = brute_force_qop(qop);
  Reformulation verdict = reformulation_verdict(pop, cert, oracle.value);
  print_certificate(out, cert, verdict);
  out << "  oracle value: " << fmt(oracle.value);
  if (oracle.argmin) out << " at " << fmt(*oracle.argmin);
  out << "\n";

  ConicProblem conic = to_conic(qop);
  SolveParams params;
  params.tol = options.tol;
  params.max_iter = options.max_iter;
  params.seed = options.seed;
  SolveResult sr = solve_dnn(conic, params);
  out << "  relaxation bound: " << sr.lower_bound << " (" << sr.iterations << " iterations)\n";
  return out.str();
}

std::string demo_example_62(const DemoOptions& options) {
  std::ostringstream out;
  PopModel pop = demo_combinatorial_pop();
  out << "combinatorial POP: n = 8 (4 decision + 4 slack), m = 4, omega = " << pop.omega << "\n";

  FeasibilityEnvelope env = propagate_envelope(pop, 1);
  out << "  box after the slack constraint: [" << env.box[0].lo << ", " << env.box[0].hi
      << "]^8\n";

  FaceCertificate cert = build_face_chain(pop, options.seed);
  Reformulation verdict = reformulation_verdict(pop, cert);
  print_certificate(out, cert, verdict);

  FeasibilityEnvelope full_env = propagate_envelope(pop, pop.m);
  std::vector<LinearEquation> eqs;
  for (const LinearForm& lf : full_env.linear_eqs) {
    eqs.push_back(LinearEquation{lf.coef, -lf.constant});
  }
  OracleResult oracle = grid_search_pop_with_eqs(pop.f, full_env.box, eqs, 33);
  out << "  oracle value: " << fmt(oracle.value);
  if (oracle.argmin) out << " at " << fmt(*oracle.argmin);
  out << "\n";

  ConicProblem conic = pop_to_conic(pop);
  SolveParams params;
  params.tol = options.tol;
  params.max_iter = options.max_iter;
  params.seed = options.seed;
  SolveResult sr = solve_dnn(conic, params);
  out << "  relaxation bound: " << sr.lower_bound << " (order " << conic.basis->size()
      << " matrix, " << sr.iterations << " iterations)\n";
  return out.str();
}

}  // namespace

RayCone demo_ray_cone() {
  RayCone cone;
  cone.dim = 2;
  cone.atoms = {{4.0, 0.0}, {4.0, 2.0}, {-3.0, 3.0}};
  return cone;
}

QopModel demo_simplex_qop() {
  QopModel q;
  q.n = 2;
  q.C = {{0.0, 0.0}, {0.0, 0.0}};
  q.c = {-0.5, 0.0};  // objective 2 c'w = -w1
  q.A = {{1.0, 1.0}};
  q.b = {1.0};
  q.bin = {0};
  return q;
}

PopModel demo_combinatorial_pop() {
  const int n = 8;
  auto w = [&](int i) { return Polynomial::variable(n, i - 1); };  // 1-based helper
  auto cst = [&](double v) { return Polynomial::constant(n, v); };

  PopModel pop;
  pop.n = n;
  pop.m = 4;
  pop.omega = 1;

  pop.f.push_back(w(1) + w(2) + w(3) + w(4));

  std::vector<Polynomial> slack_forms;
  Polynomial f1(n);
  for (int k = 1; k <= 4; ++k) {
    Polynomial g = w(k) + w(k + 4) - cst(1.0);
    f1 = f1 + g * g;
    slack_forms.push_back(g);
  }
  pop.f.push_back(f1);
  pop.f.push_back(w(4) * (cst(1.0) - w(4)) + (cst(1.0) - w(1)) * (cst(1.0) - w(2)));
  pop.f.push_back(w(3) * (w(1) + w(2) - w(3)));
  pop.f.push_back(w(4) * (cst(2.0) - w(1) - w(2) - w(3)));

  pop.hints.resize(5);
  pop.hints[1] = ConstraintHint::sum_of_even_powers(2, std::move(slack_forms));
  pop.hints[2] = ConstraintHint::product_form(
      {{w(4), cst(1.0) - w(4)}, {cst(1.0) - w(1), cst(1.0) - w(2)}});
  pop.hints[3] = ConstraintHint::product_form({{w(3), w(1) + w(2) - w(3)}});
  pop.hints[4] = ConstraintHint::product_form({{w(4), cst(2.0) - w(1) - w(2) - w(3)}});
  pop.validate();
  return pop;
}

std::string run_demo(const std::string& name, const DemoOptions& options) {
  if (name == "example-3.1") return demo_example_31();
  if (name == "example-6.1") return demo_example_61(options);
  if (name == "example-6.2") return demo_example_62(options);
  fail(ErrorCode::InvalidArgument,
       "unknown demo '" + name + "' (expected example-3.1, example-6.1 or example-6.2)");
}

}  // namespace copos
