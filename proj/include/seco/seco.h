#ifndef SECO_SECO_H
#define SECO_SECO_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SECO_API __declspec(dllexport)
#else
#define SECO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum seco_status {
  SECO_OK = 0,
  SECO_ERR_INVALID_INPUT = 1,
  SECO_ERR_INVALID_CONFIG = 2,
  SECO_ERR_SINGULAR_MASS = 3,
  SECO_ERR_INFEASIBLE_REFERENCE = 4,
  SECO_ERR_DEGENERATE_DYNAMICS = 5,
  SECO_ERR_UNDEFINED_GEOMETRY = 6,
  SECO_ERR_INTEGRATION_FAILURE = 7,
  SECO_ERR_NOT_CONVERGED = 8,
  SECO_ERR_IO = 9,
  SECO_ERR_VERIFY_FAILED = 10,
  SECO_ERR_NULL_HANDLE = 98,
  SECO_ERR_INTERNAL = 99
} seco_status;

typedef struct seco_config_s* seco_config;
typedef struct seco_result_s* seco_result;
typedef struct seco_bench_s* seco_bench;
typedef struct seco_verify_s* seco_verify_report;

typedef struct seco_stats {
  double mean, stddev, min, max;
} seco_stats;

typedef struct seco_bench_row {
  int nodes;
  int runs;      /* converged runs, the statistics cover these only */
  int failures;
  seco_stats t_discretize, t_parse, t_solve, t_total;
  seco_stats scp_iterations, pipg_iterations;
} seco_bench_row;

SECO_API const char* seco_status_name(seco_status s);
/* message of the last failed call on this thread */
SECO_API const char* seco_last_error(void);
/* trace, debug, info, warn, error, off */
SECO_API seco_status seco_set_log_level(const char* level);
/* reads SECO_LOG */
SECO_API void seco_log_init_from_env(void);

SECO_API seco_status seco_config_default(seco_config* out);
SECO_API seco_status seco_config_load(const char* path, seco_config* out);
SECO_API seco_status seco_config_parse(const char* json_text, seco_config* out);
SECO_API seco_status seco_config_set_nodes(seco_config cfg, int nodes);
SECO_API seco_status seco_config_set_seed(seco_config cfg, uint64_t seed);
SECO_API seco_status seco_config_get_nodes(seco_config cfg, int* nodes);
SECO_API void seco_config_free(seco_config cfg);

/* SECO_OK when the loop ran; the SCP outcome is in seco_result_status */
SECO_API seco_status seco_solve(seco_config cfg, seco_result* out);
SECO_API seco_status seco_result_status(seco_result r);
SECO_API const char* seco_result_message(seco_result r);
SECO_API int seco_result_converged(seco_result r);
SECO_API int seco_result_nodes(seco_result r);
SECO_API int seco_result_iterations(seco_result r);
SECO_API int seco_result_pipg_iterations(seco_result r);
SECO_API seco_status seco_result_errors(seco_result r, double* pos_err, double* vel_err);
/* discretize, parse (assembly + preconditioning), solve; seconds */
SECO_API seco_status seco_result_times(seco_result r, double* t3);
SECO_API double seco_result_time_of_flight(seco_result r);
SECO_API seco_status seco_result_state(seco_result r, int k, double* x15);
SECO_API seco_status seco_result_virtual_state(seco_result r, int k, double* x15);
SECO_API seco_status seco_result_control(seco_result r, int k, double* u6);
SECO_API seco_status seco_result_write_trajectory(seco_result r, const char* path);
SECO_API seco_status seco_result_write_report(seco_result r, const char* path);
SECO_API void seco_result_free(seco_result r);

SECO_API seco_status seco_bench_run(seco_config cfg, int reps, int warm, const int* nodes, int n_nodes,
                                    seco_bench* out);
SECO_API int seco_bench_rows(seco_bench b);
SECO_API seco_status seco_bench_row_get(seco_bench b, int i, seco_bench_row* row);
SECO_API seco_status seco_bench_write_csv(seco_bench b, const char* path);
SECO_API void seco_bench_free(seco_bench b);

SECO_API seco_status seco_verify(seco_config cfg, int quick, int inject_fault, seco_verify_report* out);
SECO_API int seco_verify_count(seco_verify_report v);
SECO_API seco_status seco_verify_check(seco_verify_report v, int i, const char** name, int* passed,
                                       double* metric, double* tolerance, const char** detail);
SECO_API int seco_verify_all_passed(seco_verify_report v);
SECO_API void seco_verify_free(seco_verify_report v);

#ifdef __cplusplus
}
#endif

#endif
