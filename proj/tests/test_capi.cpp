#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <string>

#include "copos.h"

namespace {

const char* kSimplexQop = R"({
  "kind": "qop",
  "C": [[0, 0], [0, 0]],
  "c": [-0.5, 0],
  "A": [[1, 1]],
  "b": [1],
  "bin": [1]
})";

struct Problem {
  copos_problem* ptr = nullptr;
  ~Problem() { copos_problem_free(ptr); }
};

struct Text {
  char* ptr = nullptr;
  ~Text() { copos_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

}  // namespace

TEST_CASE("load, reformulate, free") {
  Problem p;
  REQUIRE(copos_problem_parse(kSimplexQop, &p.ptr) == COPOS_OK);
  copos_options options;
  copos_options_init(&options);

  Text summary;
  REQUIRE(copos_reformulate(p.ptr, &options, &summary.ptr) == COPOS_OK);
  CHECK(summary.str().find("\"basis_size\": 3") != std::string::npos);
}

TEST_CASE("face check returns the exact verdict") {
  Problem p;
  REQUIRE(copos_problem_parse(kSimplexQop, &p.ptr) == COPOS_OK);
  copos_options options;
  copos_options_init(&options);

  Text cert;
  int verdict = -1;
  REQUIRE(copos_check_faces(p.ptr, &options, &cert.ptr, &verdict) == COPOS_OK);
  CHECK(verdict == 0);
  CHECK(cert.str().find("\"chain_ok\": true") != std::string::npos);
}

TEST_CASE("relaxation and oracle agree through the C surface") {
  Problem p;
  REQUIRE(copos_problem_parse(kSimplexQop, &p.ptr) == COPOS_OK);
  copos_options options;
  copos_options_init(&options);

  Text solve;
  int solve_status = -1;
  REQUIRE(copos_solve_dnn(p.ptr, &options, &solve.ptr, &solve_status) == COPOS_OK);
  CHECK(solve_status == 0);
  CHECK(solve.str().find("lower_bound") != std::string::npos);

  Text oracle;
  REQUIRE(copos_oracle(p.ptr, &options, &oracle.ptr) == COPOS_OK);
  CHECK(oracle.str().find("\"value\": -1.0") != std::string::npos);
}

TEST_CASE("error paths set codes and messages") {
  Problem p;
  CHECK(copos_problem_parse("definitely not json", &p.ptr) == COPOS_ERR_PARSE);
  CHECK(std::strlen(copos_last_error()) > 0);

  CHECK(copos_problem_load_file("/nonexistent/problem.json", &p.ptr) == COPOS_ERR_PARSE);
  CHECK(copos_problem_parse(nullptr, &p.ptr) == COPOS_ERR_INVALID_ARGUMENT);

  Text out;
  CHECK(copos_demo("example-9.9", nullptr, &out.ptr) == COPOS_ERR_INVALID_ARGUMENT);
  CHECK(std::string(copos_status_name(COPOS_ERR_PARSE)) == "parse-error");
}

TEST_CASE("demo text is produced") {
  Text out;
  REQUIRE(copos_demo("example-3.1", nullptr, &out.ptr) == COPOS_OK);
  CHECK(out.str().find("case (a)") != std::string::npos);
  CHECK(out.str().find("G(K,1)") != std::string::npos);
}
