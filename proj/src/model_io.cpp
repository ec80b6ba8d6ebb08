#include "copos/model_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace copos {

namespace {

using nlohmann::json;

Polynomial parse_terms(const json& arr, int num_vars) {
  if (!arr.is_array()) fail(ErrorCode::Parse, "term list must be an array");
  Polynomial p(num_vars);
  for (const json& term : arr) {
    if (!term.contains("exps") || !term.contains("coef")) {
      fail(ErrorCode::Parse, "term needs 'exps' and 'coef'");
    }
    Exponents exps;
    for (const json& e : term["exps"]) exps.push_back(e.get<int>());
    if (static_cast<int>(exps.size()) != num_vars) {
      fail(ErrorCode::Parse, "term exponent length does not match variable count");
    }
    p.add_term(exps, term["coef"].get<double>());
  }
  return p;
}

json terms_to_json(const Polynomial& p) {
  json arr = json::array();
  for (const auto& [exps, coef] : p.terms()) {
    arr.push_back(json{{"exps", exps}, {"coef", coef}});
  }
  return arr;
}

ConstraintHint parse_hint(const json& j, int num_vars) {
  const std::string type = j.value("type", "plain");
  if (type == "plain") return ConstraintHint::plain();
  if (type == "sum_of_even_powers") {
    if (!j.contains("power") || !j.contains("forms")) {
      fail(ErrorCode::Parse, "sum_of_even_powers hint needs 'power' and 'forms'");
    }
    std::vector<Polynomial> forms;
    for (const json& f : j["forms"]) forms.push_back(parse_terms(f, num_vars));
    return ConstraintHint::sum_of_even_powers(j["power"].get<int>(), std::move(forms));
  }
  if (type == "product_form") {
    if (!j.contains("products")) fail(ErrorCode::Parse, "product_form hint needs 'products'");
    std::vector<std::vector<Polynomial>> products;
    for (const json& prod : j["products"]) {
      std::vector<Polynomial> factors;
      for (const json& f : prod) factors.push_back(parse_terms(f, num_vars));
      products.push_back(std::move(factors));
    }
    return ConstraintHint::product_form(std::move(products));
  }
  fail(ErrorCode::Parse, "unknown hint type '" + type + "'");
}

QopModel parse_qop(const json& j) {
  QopModel q;
  if (!j.contains("C") || !j.contains("c")) fail(ErrorCode::Parse, "qop needs 'C' and 'c'");
  for (const json& row : j["C"]) q.C.push_back(row.get<std::vector<double>>());
  q.c = j["c"].get<std::vector<double>>();
  q.n = static_cast<int>(q.c.size());
  if (j.contains("A")) {
    for (const json& row : j["A"]) q.A.push_back(row.get<std::vector<double>>());
  }
  if (j.contains("b")) q.b = j["b"].get<std::vector<double>>();
  if (j.contains("bin")) {
    for (const json& i : j["bin"]) q.bin.push_back(i.get<int>() - 1);  // 1-based in files
  }
  if (j.contains("comp")) {
    for (const json& pair : j["comp"]) {
      if (!pair.is_array() || pair.size() != 2) fail(ErrorCode::Parse, "comp entries are [j,k]");
      q.comp.emplace_back(pair[0].get<int>() - 1, pair[1].get<int>() - 1);
    }
  }
  q.validate();
  return q;
}

PopModel parse_pop(const json& j) {
  PopModel p;
  if (!j.contains("n") || !j.contains("objective") || !j.contains("constraints")) {
    fail(ErrorCode::Parse, "pop needs 'n', 'objective' and 'constraints'");
  }
  p.n = j["n"].get<int>();
  p.f.push_back(parse_terms(j["objective"], p.n));
  p.hints.push_back(ConstraintHint::plain());
  for (const json& cons : j["constraints"]) {
    if (!cons.contains("terms")) fail(ErrorCode::Parse, "constraint needs 'terms'");
    p.f.push_back(parse_terms(cons["terms"], p.n));
    p.hints.push_back(cons.contains("hint") ? parse_hint(cons["hint"], p.n)
                                            : ConstraintHint::plain());
  }
  p.m = static_cast<int>(p.f.size()) - 1;
  int max_deg = 0;
  for (const Polynomial& f : p.f) max_deg = std::max(max_deg, f.degree());
  const int min_omega = std::max(1, (max_deg + 1) / 2);
  p.omega = j.value("omega", min_omega);
  if (p.omega < min_omega) {
    fail(ErrorCode::Parse, "omega too small for the polynomial degrees");
  }
  p.validate();
  return p;
}

const char* solve_status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged:
      return "converged";
    case SolveStatus::MaxIter:
      return "max-iter";
    case SolveStatus::InfeasibleLikely:
      return "infeasible-likely";
  }
  return "?";
}

json verdict_to_json(const ConditionVerdict& v) {
  json out{{"status", to_string(v.status)}};
  if (v.certificate) out["certificate"] = to_string(*v.certificate);
  if (!v.witness.empty()) out["witness"] = v.witness;
  if (!v.detail.empty()) out["detail"] = v.detail;
  return out;
}

}  // namespace

ProblemFile parse_problem_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorCode::Parse, std::string("invalid json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind")) fail(ErrorCode::Parse, "problem needs a 'kind'");
  ProblemFile file;
  try {
    const std::string kind = j["kind"].get<std::string>();
    if (j.contains("omega")) file.omega = j["omega"].get<int>();
    if (kind == "qop") {
      file.kind = ProblemFile::Kind::Qop;
      file.qop = parse_qop(j);
    } else if (kind == "pop") {
      file.kind = ProblemFile::Kind::Pop;
      file.pop = parse_pop(j);
    } else {
      fail(ErrorCode::Parse, "kind must be 'qop' or 'pop'");
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorCode::Parse, std::string("malformed problem: ") + e.what());
  }
  return file;
}

ProblemFile load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Parse, "cannot open problem file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_problem_json(buffer.str());
}

PopModel problem_to_pop(const ProblemFile& file, int omega_override) {
  PopModel pop =
      file.kind == ProblemFile::Kind::Qop ? PopModel::from_qop(file.qop) : file.pop;
  int omega = omega_override > 0 ? omega_override : file.omega.value_or(pop.omega);
  if (omega < pop.omega) {
    fail(ErrorCode::InvalidArgument, "requested omega is below the minimum for the degrees");
  }
  pop.omega = omega;
  pop.validate();
  return pop;
}

std::string reformulate_summary_json(const ProblemFile& file, const ConicProblem& conic) {
  json basis = json::array();
  for (const Exponents& a : conic.basis->alphas()) basis.push_back(a);
  json gram_norms = json::array();
  for (const SymMatrix& qp : conic.Qp) gram_norms.push_back(qp.frobenius_norm());
  json out{
      {"kind", file.kind == ProblemFile::Kind::Qop ? "qop" : "pop"},
      {"n", conic.basis->n()},
      {"m", static_cast<int>(conic.Qp.size())},
      {"omega", conic.basis->omega()},
      {"basis_size", conic.basis->size()},
      {"basis", basis},
      {"objective_norm", conic.Q0.frobenius_norm()},
      {"constraint_norms", gram_norms},
      {"consistency_classes", static_cast<int>(conic.classes.classes.size())},
  };
  return out.dump(2);
}

std::string face_certificate_json(const FaceCertificate& cert, Reformulation verdict) {
  json steps = json::array();
  for (const StepVerdicts& s : cert.steps) {
    steps.push_back(json{{"p", s.p},
                         {"cond_1_0", verdict_to_json(s.cond_1_0)},
                         {"cond_1_1", verdict_to_json(s.cond_1_1)},
                         {"cond_1_2", verdict_to_json(s.cond_1_2)},
                         {"verified", s.verified}});
  }
  json out{{"steps", steps},
           {"chain_ok", cert.chain_ok},
           {"cond_2", verdict_to_json(cert.cond2)},
           {"verdict", to_string(verdict)}};
  return out.dump(2);
}

std::string solve_result_json(const SolveResult& result) {
  json out{{"status", solve_status_name(result.status)},
           {"lower_bound", result.lower_bound},
           {"certified_bound", result.certified_bound},
           {"iterations", result.iterations},
           {"residuals",
            json{{"primal", result.primal_residual},
                 {"psd", result.psd_residual},
                 {"nonneg", result.nonneg_residual},
                 {"class", result.class_residual},
                 {"affine", result.affine_residual}}}};
  return out.dump(2);
}

std::string oracle_result_json(const OracleResult& result) {
  json out;
  out["method"] =
      result.method == OracleMethod::BinaryEnumeration ? "binary-enumeration" : "grid-search";
  if (result.value.is_finite()) {
    out["value"] = result.value.value;
  } else {
    out["value"] = result.value.is_pos_inf() ? "+inf" : "-inf";
  }
  if (result.argmin) out["argmin"] = *result.argmin;
  out["feasibility_tol"] = result.feasibility_tol;
  if (result.method == OracleMethod::GridSearch) out["grid_spacing"] = result.grid_spacing;
  return out.dump(2);
}

std::string polynomial_terms_json(const Polynomial& f) { return terms_to_json(f).dump(); }

std::string sym_matrix_json(const SymMatrix& m) {
  json out{{"dim", m.dim()}, {"entries", m.data()}};
  if (m.basis()) {
    json basis = json::array();
    for (const Exponents& a : m.basis()->alphas()) basis.push_back(a);
    out["basis"] = basis;
  }
  return out.dump();
}

}  // namespace copos
