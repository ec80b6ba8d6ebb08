#include "copos.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "copos/demos.hpp"
#include "copos/dnn.hpp"
#include "copos/model_io.hpp"
#include "copos/oracle.hpp"

struct copos_problem {
  copos::ProblemFile file;
};

namespace {

thread_local std::string g_last_error;

copos_status map_code(copos::ErrorCode code) {
  switch (code) {
    case copos::ErrorCode::InvalidArgument:
      return COPOS_ERR_INVALID_ARGUMENT;
    case copos::ErrorCode::Parse:
      return COPOS_ERR_PARSE;
    case copos::ErrorCode::UncoveredMonomial:
      return COPOS_ERR_UNCOVERED_MONOMIAL;
    case copos::ErrorCode::Numerical:
      return COPOS_ERR_NUMERICAL;
    case copos::ErrorCode::Unsupported:
      return COPOS_ERR_UNSUPPORTED;
    case copos::ErrorCode::Inconsistent:
      return COPOS_ERR_INCONSISTENT;
    case copos::ErrorCode::Internal:
      return COPOS_ERR_INTERNAL;
  }
  return COPOS_ERR_INTERNAL;
}

template <typename Fn>
copos_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return COPOS_OK;
  } catch (const copos::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return COPOS_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return COPOS_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

copos::SolveParams solve_params(const copos_options* options) {
  copos::SolveParams params;
  if (!options) return params;
  if (options->tol > 0.0) params.tol = options->tol;
  if (options->max_iter > 0) params.max_iter = options->max_iter;
  params.seed = options->seed;
  params.certify = options->certify != 0;
  return params;
}

copos::BasisMode basis_mode(const copos_options* options) {
  return options && options->basis_full ? copos::BasisMode::Full : copos::BasisMode::Cover;
}

copos::GramMode gram_mode(const copos_options* options) {
  return options && options->gram_single ? copos::GramMode::SinglePair
                                         : copos::GramMode::EvenSplit;
}

int omega_override(const copos_options* options) {
  return options && options->omega > 0 ? options->omega : 0;
}

}  // namespace

extern "C" {

void copos_options_init(copos_options* options) {
  if (!options) return;
  options->omega = 0;
  options->tol = 1e-7;
  options->max_iter = 20000;
  options->grid = 33;
  options->seed = 42;
  options->basis_full = 0;
  options->gram_single = 0;
  options->certify = 0;
}

copos_status copos_problem_load_file(const char* path, copos_problem** out) {
  if (!path || !out) {
    g_last_error = "null argument";
    return COPOS_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    auto* p = new copos_problem{copos::load_problem_file(path)};
    *out = p;
  });
}

copos_status copos_problem_parse(const char* json_text, copos_problem** out) {
  if (!json_text || !out) {
    g_last_error = "null argument";
    return COPOS_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    auto* p = new copos_problem{copos::parse_problem_json(json_text)};
    *out = p;
  });
}

void copos_problem_free(copos_problem* problem) { delete problem; }

copos_status copos_reformulate(const copos_problem* problem, const copos_options* options,
                               char** json_out) {
  if (!problem || !json_out) {
    g_last_error = "null argument";
    return COPOS_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    copos::PopModel pop = copos::problem_to_pop(problem->file, omega_override(options));
    copos::ConicProblem conic =
        copos::pop_to_conic(pop, basis_mode(options), gram_mode(options));
    *json_out = dup_string(copos::reformulate_summary_json(problem->file, conic));
  });
}

copos_status copos_check_faces(const copos_problem* problem, const copos_options* options,
                               char** json_out, int* verdict_out) {
  if (!problem || !json_out) {
    g_last_error = "null argument";
    return COPOS_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    copos::PopModel pop = copos::problem_to_pop(problem->file, omega_override(options));
    const std::uint64_t seed = options ? options->seed : 42;
    copos::FaceCertificate cert = copos::build_face_chain(pop, seed);
    copos::Reformulation verdict = copos::reformulation_verdict(pop, cert);
    *json_out = dup_string(copos::face_certificate_json(cert, verdict));
    if (verdict_out) *verdict_out = static_cast<int>(verdict);
  });
}

copos_status copos_solve_dnn(const copos_problem* problem, const copos_options* options,
                             char** json_out, int* solve_status_out) {
  if (!problem || !json_out) {
    g_last_error = "null argument";
    return COPOS_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    copos::PopModel pop = copos::problem_to_pop(problem->file, omega_override(options));
    copos::ConicProblem conic =
        copos::pop_to_conic(pop, basis_mode(options), gram_mode(options));
    copos::SolveResult result = copos::solve_dnn(conic, solve_params(options));
    *json_out = dup_string(copos::solve_result_json(result));
    if (solve_status_out) *solve_status_out = static_cast<int>(result.status);
  });
}

copos_status copos_oracle(const copos_problem* problem, const copos_options* options,
                          char** json_out) {
  if (!problem || !json_out) {
    g_last_error = "null argument";
    return COPOS_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    copos::OracleResult result;
    if (problem->file.kind == copos::ProblemFile::Kind::Qop) {
      result = copos::brute_force_qop(problem->file.qop);
    } else {
      copos::PopModel pop = copos::problem_to_pop(problem->file, omega_override(options));
      copos::FeasibilityEnvelope env = copos::propagate_envelope(pop, pop.m);
      std::vector<copos::LinearEquation> eqs;
      for (const copos::LinearForm& lf : env.linear_eqs) {
        eqs.push_back(copos::LinearEquation{lf.coef, -lf.constant});
      }
      const int grid = options && options->grid > 1 ? options->grid : 33;
      result = copos::grid_search_pop_with_eqs(pop.f, env.box, eqs, grid);
    }
    *json_out = dup_string(copos::oracle_result_json(result));
  });
}

copos_status copos_demo(const char* name, const copos_options* options, char** text_out) {
  if (!name || !text_out) {
    g_last_error = "null argument";
    return COPOS_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    copos::DemoOptions demo_options;
    if (options) {
      demo_options.seed = options->seed;
      if (options->tol > 0.0) demo_options.tol = options->tol;
      if (options->max_iter > 0) demo_options.max_iter = options->max_iter;
    }
    *text_out = dup_string(copos::run_demo(name, demo_options));
  });
}

void copos_string_free(char* s) { std::free(s); }

const char* copos_last_error(void) { return g_last_error.c_str(); }

const char* copos_status_name(copos_status status) {
  switch (status) {
    case COPOS_OK:
      return "ok";
    case COPOS_ERR_INVALID_ARGUMENT:
      return "invalid-argument";
    case COPOS_ERR_PARSE:
      return "parse-error";
    case COPOS_ERR_UNCOVERED_MONOMIAL:
      return "uncovered-monomial";
    case COPOS_ERR_NUMERICAL:
      return "numerical-failure";
    case COPOS_ERR_UNSUPPORTED:
      return "unsupported";
    case COPOS_ERR_INCONSISTENT:
      return "inconsistent";
    case COPOS_ERR_INTERNAL:
      return "internal-error";
  }
  return "unknown";
}

}  // extern "C"
