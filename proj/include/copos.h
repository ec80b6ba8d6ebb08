/* C interface to the conic reformulation library. All entry points return a
 * status code; result strings are heap-allocated JSON (or plain text for
 * demos) released with copos_string_free. Error details are retrievable via
 * copos_last_error on the calling thread. */

#ifndef COPOS_H
#define COPOS_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum copos_status {
  COPOS_OK = 0,
  COPOS_ERR_INVALID_ARGUMENT = 1,
  COPOS_ERR_PARSE = 2,
  COPOS_ERR_UNCOVERED_MONOMIAL = 3,
  COPOS_ERR_NUMERICAL = 4,
  COPOS_ERR_UNSUPPORTED = 5,
  COPOS_ERR_INCONSISTENT = 6,
  COPOS_ERR_INTERNAL = 7
} copos_status;

/* Opaque parsed problem. */
typedef struct copos_problem copos_problem;

typedef struct copos_options {
  int omega;               /* <= 0: use the value from the problem file */
  double tol;              /* splitting solver tolerance */
  int max_iter;            /* splitting solver iteration cap */
  int grid;                /* grid resolution per axis for the oracle */
  unsigned long long seed; /* seed for every randomized routine */
  int basis_full;          /* 0: greedy covering basis, 1: full basis */
  int gram_single;         /* 0: even coefficient split, 1: single-pair placement */
  int certify;             /* 1: also report a residual-adjusted bound */
} copos_options;

void copos_options_init(copos_options* options);

copos_status copos_problem_load_file(const char* path, copos_problem** out);
copos_status copos_problem_parse(const char* json_text, copos_problem** out);
void copos_problem_free(copos_problem* problem);

/* Conic reformulation summary (basis, sizes, gram norms). */
copos_status copos_reformulate(const copos_problem* problem, const copos_options* options,
                               char** json_out);

/* Face-chain certificate. verdict_out: 0 exact, 1 exact-because-unbounded,
 * 2 not-exact, 3 unknown. */
copos_status copos_check_faces(const copos_problem* problem, const copos_options* options,
                               char** json_out, int* verdict_out);

/* Relaxation bound. solve_status_out: 0 converged, 1 max-iter,
 * 2 infeasible-likely. */
copos_status copos_solve_dnn(const copos_problem* problem, const copos_options* options,
                             char** json_out, int* solve_status_out);

/* Brute-force reference value (enumeration for QOPs, feasible grid for POPs). */
copos_status copos_oracle(const copos_problem* problem, const copos_options* options,
                          char** json_out);

/* Built-in demo report; name is one of example-3.1, example-6.1, example-6.2. */
copos_status copos_demo(const char* name, const copos_options* options, char** text_out);

void copos_string_free(char* s);

/* Message for the most recent failure on this thread. */
const char* copos_last_error(void);

const char* copos_status_name(copos_status status);

#ifdef __cplusplus
}
#endif

#endif /* COPOS_H */
