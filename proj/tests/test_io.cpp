#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "copos/demos.hpp"
#include "copos/model_io.hpp"

using copos::parse_problem_json;
using copos::PopModel;
using copos::ProblemFile;
using copos::problem_to_pop;

namespace {

const char* kSimplexQop = R"({
  "kind": "qop",
  "C": [[0, 0], [0, 0]],
  "c": [-0.5, 0],
  "A": [[1, 1]],
  "b": [1],
  "bin": [1],
  "comp": []
})";

const char* kTinyPop = R"({
  "kind": "pop",
  "n": 2,
  "omega": 1,
  "objective": [{"exps": [1, 0], "coef": 1.0}],
  "constraints": [
    {
      "terms": [
        {"exps": [2, 0], "coef": 1.0},
        {"exps": [1, 1], "coef": 2.0},
        {"exps": [0, 2], "coef": 1.0},
        {"exps": [1, 0], "coef": -2.0},
        {"exps": [0, 1], "coef": -2.0},
        {"exps": [0, 0], "coef": 1.0}
      ],
      "hint": {
        "type": "sum_of_even_powers",
        "power": 2,
        "forms": [[
          {"exps": [1, 0], "coef": 1.0},
          {"exps": [0, 1], "coef": 1.0},
          {"exps": [0, 0], "coef": -1.0}
        ]]
      }
    }
  ]
})";

}  // namespace

TEST_CASE("qop parsing with 1-based indices") {
  ProblemFile file = parse_problem_json(kSimplexQop);
  REQUIRE(file.kind == ProblemFile::Kind::Qop);
  CHECK(file.qop.n == 2);
  REQUIRE(file.qop.bin.size() == 1);
  CHECK(file.qop.bin[0] == 0);  // converted to 0-based

  PopModel pop = problem_to_pop(file);
  CHECK(pop.m == 3);
  CHECK(pop.qop_origin.has_value());
}

TEST_CASE("pop parsing with hints") {
  ProblemFile file = parse_problem_json(kTinyPop);
  REQUIRE(file.kind == ProblemFile::Kind::Pop);
  CHECK(file.pop.n == 2);
  CHECK(file.pop.m == 1);
  CHECK(file.pop.hints[1].type == copos::ConstraintHint::Type::SumOfEvenPowers);

  PopModel pop = problem_to_pop(file);
  copos::FaceCertificate cert = copos::build_face_chain(pop);
  CHECK(cert.chain_ok);
}

TEST_CASE("schema errors carry the parse code") {
  for (const char* bad : {"not json at all", "{}", R"({"kind": "mystery"})",
                          R"({"kind": "qop", "C": [[0]]})",
                          R"({"kind": "pop", "n": 2, "objective": [], "constraints": [
                              {"terms": [{"exps": [1], "coef": 1}]}]})"}) {
    try {
      parse_problem_json(bad);
      FAIL_CHECK("expected a parse failure for: " << bad);
    } catch (const copos::Error& e) {
      CHECK(e.code() == copos::ErrorCode::Parse);
    }
  }
}

TEST_CASE("omega override") {
  ProblemFile file = parse_problem_json(kTinyPop);
  CHECK(problem_to_pop(file).omega == 1);
  PopModel pop = problem_to_pop(file, 2);
  CHECK(pop.omega == 2);
}

TEST_CASE("matrix serialization carries the basis") {
  ProblemFile file = parse_problem_json(kSimplexQop);
  copos::ConicProblem conic = copos::pop_to_conic(problem_to_pop(file));
  std::string json = copos::sym_matrix_json(conic.Q0);
  CHECK(json.find("\"dim\":3") != std::string::npos);
  CHECK(json.find("\"basis\"") != std::string::npos);
  CHECK(json.find("\"entries\"") != std::string::npos);
}

TEST_CASE("result serialization is stable") {
  ProblemFile file = parse_problem_json(kSimplexQop);
  PopModel pop = problem_to_pop(file);
  copos::ConicProblem conic = copos::pop_to_conic(pop);
  std::string summary = copos::reformulate_summary_json(file, conic);
  CHECK(summary.find("\"basis_size\": 3") != std::string::npos);
  CHECK(summary.find("\"m\": 3") != std::string::npos);

  copos::FaceCertificate cert = copos::build_face_chain(pop);
  std::string cert_json =
      copos::face_certificate_json(cert, copos::reformulation_verdict(pop, cert));
  CHECK(cert_json.find("\"verdict\": \"exact\"") != std::string::npos);

  // Round-trip determinism.
  CHECK(copos::face_certificate_json(copos::build_face_chain(pop),
                                     copos::reformulation_verdict(pop, cert)) == cert_json);
}
