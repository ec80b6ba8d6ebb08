#pragma once

#include <optional>
#include <string>

#include "copos/dnn.hpp"
#include "copos/hierarchy.hpp"
#include "copos/oracle.hpp"
#include "copos/qop.hpp"

namespace copos {

// Parsed problem file. QOP payloads keep their native form so the Burer
// checks and the enumeration oracle can use the structured data; both kinds
// convert to a PopModel for the face chain and the relaxation.
struct ProblemFile {
  enum class Kind { Qop, Pop };

  Kind kind = Kind::Qop;
  QopModel qop;
  PopModel pop;
  std::optional<int> omega;  // optional override from the file
};

ProblemFile parse_problem_json(const std::string& text);
ProblemFile load_problem_file(const std::string& path);

// Uniform view for the pipeline; omega_override > 0 wins over the file.
PopModel problem_to_pop(const ProblemFile& file, int omega_override = 0);

std::string reformulate_summary_json(const ProblemFile& file, const ConicProblem& conic);
std::string face_certificate_json(const FaceCertificate& cert, Reformulation verdict);
std::string solve_result_json(const SolveResult& result);
std::string oracle_result_json(const OracleResult& result);

std::string polynomial_terms_json(const Polynomial& f);

// Dense row-major entries plus the attached basis.
std::string sym_matrix_json(const SymMatrix& m);

}  // namespace copos
