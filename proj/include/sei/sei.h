/*
 * C interface to the symmetric exponential integrator library.
 *
 * All functions return an sei_status; on failure sei_last_error() holds a
 * one-line message for the calling thread. Handles are opaque and must be
 * released with the matching *_destroy function.
 */
#ifndef SEI_SEI_H
#define SEI_SEI_H

#include <stdint.h>

#if defined(_WIN32)
#  if defined(SEI_BUILDING_LIBRARY)
#    define SEI_API __declspec(dllexport)
#  else
#    define SEI_API __declspec(dllimport)
#  endif
#else
#  define SEI_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define SEI_ABI_VERSION 1u

typedef enum sei_status {
  SEI_OK = 0,
  SEI_E_INVALID_ARGUMENT = 1, /* precondition or value-range violation */
  SEI_E_DOMAIN = 2,           /* field evaluated outside its domain */
  SEI_E_CONFIG = 3,           /* malformed configuration or unsupported field */
  SEI_E_IO = 4,               /* file could not be written */
  SEI_E_INTERNAL = 5
} sei_status;

typedef enum sei_method { SEI_METHOD_SEI = 0, SEI_METHOD_HEUN = 1 } sei_method;

/* Real-coordinate state (x, t̄, v, γ). */
typedef struct sei_state {
  double x[3];
  double tbar;
  double v[3];
  double gamma;
} sei_state;

typedef struct sei_trajectory {
  sei_state final_state;
  int64_t steps_completed;
  int64_t field_evaluations;
  double seconds;
  int ok; /* 0 when the run aborted (domain error or non-finite state) */
} sei_trajectory;

typedef struct sei_field sei_field;
typedef struct sei_report sei_report;

SEI_API uint32_t sei_abi_version(void);
SEI_API const char* sei_last_error(void);

/* Fields. */
SEI_API sei_status sei_field_create_paper(sei_field** out);
SEI_API sei_status sei_field_create_uniform(const double b[3], const double e[3], sei_field** out);
SEI_API sei_status sei_field_create_zero(sei_field** out);
/* {"field": "paper" | "uniform" | "zero", "B": [..], "E": [..]} */
SEI_API sei_status sei_field_create_json(const char* json, sei_field** out);
SEI_API void sei_field_destroy(sei_field* field);
SEI_API int sei_field_has_potential(const sei_field* field);

/* States and invariants. */
SEI_API sei_status sei_state_from_momentum(const double x[3], double tbar, const double p[3], sei_state* out);
SEI_API sei_status sei_state_preset(const char* name, sei_state* out);
SEI_API sei_status sei_hamiltonian(const sei_field* field, const sei_state* s, double* out);
SEI_API double sei_minkowski_defect(const sei_state* s);

/* Integration. The linear part is frozen at u0's position. */
SEI_API sei_status sei_integrate(const sei_field* field, const sei_state* u0, double h, int64_t num_steps,
                                 sei_method method, sei_trajectory* out);
SEI_API sei_status sei_reference_solve(const sei_field* field, const sei_state* u0, double T, double h_ref,
                                       sei_state* out);
SEI_API sei_status sei_err_u(const sei_state* num, const sei_state* exact, double* out);

/*
 * Experiments. spec_json is an ExperimentSpec document with "experiment" one
 * of "run", "convergence", "timing", "hamiltonian". The report carries the
 * CSV rows (empty for "run"), a JSON summary, and whether every gate passed
 * (all trajectories ok and, for convergence, every fitted slope within
 * [1.85, 2.15]).
 */
SEI_API sei_status sei_experiment_run(const char* spec_json, sei_report** out);
/* Runs the built-in invariant suite; the report has no CSV. */
SEI_API sei_status sei_selftest(sei_report** out);
SEI_API const char* sei_report_csv(const sei_report* report);
SEI_API const char* sei_report_summary(const sei_report* report);
SEI_API const char* sei_report_output_path(const sei_report* report);
SEI_API int sei_report_passed(const sei_report* report);
SEI_API sei_status sei_report_write_csv(const sei_report* report, const char* path);
SEI_API void sei_report_destroy(sei_report* report);

#ifdef __cplusplus
}
#endif

#endif /* SEI_SEI_H */
