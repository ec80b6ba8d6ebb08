// Command-line front end; goes through the shared C API only.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#include "CLI11.hpp"
#include "copos.h"

namespace {

// Exit codes: 0 success / exact, 1 unknown or not-exact, 2 input error,
// 3 numerical failure.
constexpr int kExitOk = 0;
constexpr int kExitVerdict = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

int log_level() {
  const char* env = std::getenv("COPOS_LOG");
  return env ? std::atoi(env) : 0;
}

int exit_code_for(copos_status status) {
  switch (status) {
    case COPOS_OK:
      return kExitOk;
    case COPOS_ERR_PARSE:
    case COPOS_ERR_INVALID_ARGUMENT:
    case COPOS_ERR_UNSUPPORTED:
      return kExitInput;
    default:
      return kExitNumerical;
  }
}

int report_failure(copos_status status) {
  std::fprintf(stderr, "error (%s): %s\n", copos_status_name(status), copos_last_error());
  return exit_code_for(status);
}

struct ProblemGuard {
  copos_problem* ptr = nullptr;
  ~ProblemGuard() { copos_problem_free(ptr); }
};

int load_problem(const std::string& path, ProblemGuard& guard) {
  copos_status status = copos_problem_load_file(path.c_str(), &guard.ptr);
  if (status != COPOS_OK) return report_failure(status);
  if (log_level() > 0) std::fprintf(stderr, "loaded %s\n", path.c_str());
  return kExitOk;
}

void print_and_free(char* text) {
  std::fputs(text, stdout);
  if (text[std::strlen(text) - 1] != '\n') std::fputc('\n', stdout);
  copos_string_free(text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conic reformulation toolkit for polynomial optimization over the orthant"};
  app.require_subcommand(1);

  copos_options options;
  copos_options_init(&options);
  std::string path;
  std::string demo_name;
  std::string basis_choice = "cover";
  std::string gram_choice = "even";

  auto add_common = [&](CLI::App* cmd, bool with_path) {
    if (with_path) cmd->add_option("problem", path, "problem file (json)")->required();
    cmd->add_option("--omega", options.omega, "relaxation order override");
    cmd->add_option("--seed", options.seed, "random seed (default 42)");
    cmd->add_option("--basis", basis_choice, "basis selection: cover|full")
        ->check(CLI::IsMember({"cover", "full"}));
    cmd->add_option("--gram", gram_choice, "coefficient placement: even|single")
        ->check(CLI::IsMember({"even", "single"}));
  };

  CLI::App* reformulate = app.add_subcommand("reformulate", "print the conic reformulation summary");
  add_common(reformulate, true);

  CLI::App* check = app.add_subcommand("check-faces", "verify the face chain and exactness conditions");
  add_common(check, true);

  CLI::App* solve = app.add_subcommand("solve-dnn", "solve the doubly-nonnegative relaxation");
  add_common(solve, true);
  solve->add_option("--tol", options.tol, "convergence tolerance");
  solve->add_option("--max-iter", options.max_iter, "iteration cap");
  solve->add_flag("--certify", options.certify, "also report a residual-adjusted bound");

  CLI::App* oracle = app.add_subcommand("oracle", "brute-force reference value");
  add_common(oracle, true);
  oracle->add_option("--grid", options.grid, "grid resolution per axis");

  CLI::App* demo = app.add_subcommand("demo", "run a built-in example");
  demo->add_option("name", demo_name, "example-3.1 | example-6.1 | example-6.2")->required();
  demo->add_option("--seed", options.seed, "random seed");
  demo->add_option("--tol", options.tol, "solver tolerance");
  demo->add_option("--max-iter", options.max_iter, "solver iteration cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  options.basis_full = basis_choice == "full" ? 1 : 0;
  options.gram_single = gram_choice == "single" ? 1 : 0;

  if (demo->parsed()) {
    char* text = nullptr;
    copos_status status = copos_demo(demo_name.c_str(), &options, &text);
    if (status != COPOS_OK) return report_failure(status);
    print_and_free(text);
    return kExitOk;
  }

  ProblemGuard problem;
  if (int rc = load_problem(path, problem); rc != kExitOk) return rc;

  if (reformulate->parsed()) {
    char* json = nullptr;
    copos_status status = copos_reformulate(problem.ptr, &options, &json);
    if (status != COPOS_OK) return report_failure(status);
    print_and_free(json);
    return kExitOk;
  }

  if (check->parsed()) {
    char* json = nullptr;
    int verdict = 3;
    copos_status status = copos_check_faces(problem.ptr, &options, &json, &verdict);
    if (status != COPOS_OK) return report_failure(status);
    print_and_free(json);
    return verdict == 0 ? kExitOk : kExitVerdict;
  }

  if (solve->parsed()) {
    char* json = nullptr;
    int solve_status = 0;
    copos_status status = copos_solve_dnn(problem.ptr, &options, &json, &solve_status);
    if (status != COPOS_OK) return report_failure(status);
    print_and_free(json);
    return solve_status == 2 ? kExitNumerical : kExitOk;
  }

  if (oracle->parsed()) {
    char* json = nullptr;
    copos_status status = copos_oracle(problem.ptr, &options, &json);
    if (status != COPOS_OK) return report_failure(status);
    print_and_free(json);
    return kExitOk;
  }

  return kExitInput;
}
