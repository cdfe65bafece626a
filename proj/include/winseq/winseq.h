/*
 * SPDX-FileCopyrightText: (c) 2026 The winseq authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

/* C interface to the winseq library. Objects are opaque handles created by
 * ws_*_create / ws_*_load functions and released with the matching
 * ws_*_free. Every fallible call returns a ws_status; on failure a
 * description is available from ws_last_error() on the same thread. */

#ifndef WINSEQ_H
#define WINSEQ_H

#include <stddef.h>
#include <stdint.h>

#ifndef WINSEQ_API
#if defined _WIN32 || defined __CYGWIN__
#ifdef WINSEQ_BUILDING
#define WINSEQ_API __declspec(dllexport)
#else
#define WINSEQ_API __declspec(dllimport)
#endif
#else
#define WINSEQ_API __attribute__((visibility("default")))
#endif
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ws_status {
  WS_OK = 0,
  WS_ERR_INVALID_ARGUMENT = 1,
  WS_ERR_MALFORMED_RECORD = 2,
  WS_ERR_EMPTY_HIERARCHY = 3,
  WS_ERR_EMPTY_ARM = 4,
  WS_ERR_DEGENERATE_SAMPLE = 5,
  WS_ERR_ZERO_VARIANCE = 6,
  WS_ERR_DEGENERATE_WIN_RATIO = 7,
  WS_ERR_DOMAIN = 8,
  WS_ERR_INFEASIBLE_SPEND = 9,
  WS_ERR_CONVERGENCE = 10,
  WS_ERR_CONFIG = 11,
  WS_ERR_INSUFFICIENT_DATA = 12,
  WS_ERR_PARSE = 13,
  WS_ERR_DUPLICATE_ID = 14,
  WS_ERR_INVARIANT_VIOLATION = 15,
  WS_ERR_IO = 16,
  WS_ERR_INTERNAL = 100
} ws_status;

typedef enum ws_family { WS_FAMILY_HSD = 0, WS_FAMILY_POWER = 1 } ws_family;
typedef enum ws_sides { WS_ONE_SIDED = 1, WS_TWO_SIDED = 2 } ws_sides;
typedef enum ws_scenario {
  WS_SCENARIO_COMPLETE = 1,
  WS_SCENARIO_PARTIAL = 2
} ws_scenario;
typedef enum ws_statistic {
  WS_STAT_LOG_WIN_RATIO = 0,
  WS_STAT_WIN_DIFFERENCE = 1
} ws_statistic;

typedef struct ws_design ws_design;
typedef struct ws_dataset ws_dataset;
typedef struct ws_hierarchy ws_hierarchy;
typedef struct ws_sim_config ws_sim_config;
typedef struct ws_report ws_report;

typedef struct ws_win_stats {
  size_t m;
  size_t n;
  uint64_t wins;
  uint64_t losses;
  uint64_t ties;
  double u1;
  double u2;
  double win_ratio;
} ws_win_stats;

typedef struct ws_test_result {
  double estimate;
  double std_error;
  double z;
  double p_two_sided;
  double ci_low;
  double ci_high;
  double information;
} ws_test_result;

WINSEQ_API const char* ws_version(void);
WINSEQ_API const char* ws_last_error(void);
WINSEQ_API const char* ws_status_name(ws_status status);

/* Spending and boundaries */
WINSEQ_API ws_status ws_spending_value(ws_family family, double parameter,
                                       double alpha, ws_sides sides, double t,
                                       double* out);
WINSEQ_API ws_status ws_design_solve(const double* fractions, size_t looks,
                                     ws_family family, double parameter,
                                     double alpha, ws_sides sides,
                                     ws_design** out);
/* JSON design file: alpha, sides, family, gamma|rho, fractions. */
WINSEQ_API ws_status ws_design_load(const char* path, ws_design** out);
WINSEQ_API size_t ws_design_looks(const ws_design* design);
/* Copies min(capacity, looks) values. */
WINSEQ_API ws_status ws_design_z_bounds(const ws_design* design, double* out,
                                        size_t capacity);
WINSEQ_API ws_status ws_design_nominal_p(const ws_design* design, double* out,
                                         size_t capacity);
WINSEQ_API ws_status ws_design_crossing_probability(const ws_design* design,
                                                    double drift, double* out,
                                                    size_t capacity);
/* Returned string is owned by the design and lives until ws_design_free. */
WINSEQ_API const char* ws_design_json(const ws_design* design);
WINSEQ_API void ws_design_free(ws_design* design);

/* Endpoint hierarchy, e.g. "time:amputation,count_then_time:tlr,
 * latest_visit:occlusion" or "default". */
WINSEQ_API ws_status ws_hierarchy_parse(const char* text, ws_hierarchy** out);
WINSEQ_API void ws_hierarchy_free(ws_hierarchy* hierarchy);

/* Subject data */
WINSEQ_API ws_status ws_dataset_load_csv(const char* path, double horizon,
                                         ws_dataset** out);
WINSEQ_API ws_status ws_dataset_save_csv(const ws_dataset* data,
                                         const char* path);
WINSEQ_API size_t ws_dataset_treatment_count(const ws_dataset* data);
WINSEQ_API size_t ws_dataset_control_count(const ws_dataset* data);
WINSEQ_API ws_status ws_win_stats_compute(const ws_dataset* data,
                                          const ws_hierarchy* hierarchy,
                                          ws_win_stats* out);
/* Single analysis on the full dataset. */
WINSEQ_API ws_status ws_log_win_ratio_test(const ws_dataset* data,
                                           const ws_hierarchy* hierarchy,
                                           ws_test_result* out);
WINSEQ_API ws_status ws_win_difference_test(const ws_dataset* data,
                                            const ws_hierarchy* hierarchy,
                                            ws_test_result* out);
WINSEQ_API void ws_dataset_free(ws_dataset* data);

/* Simulation config: defaults with n_total subjects, or a JSON file. */
WINSEQ_API ws_status ws_sim_config_create(size_t n_total, ws_sim_config** out);
WINSEQ_API ws_status ws_sim_config_load(const char* path, ws_sim_config** out);
WINSEQ_API ws_status ws_sim_config_set_treatment_effect(ws_sim_config* config,
                                                        double amputation,
                                                        double tlr,
                                                        double occlusion);
WINSEQ_API void ws_sim_config_free(ws_sim_config* config);
WINSEQ_API ws_status ws_simulate_dataset(const ws_sim_config* config,
                                         uint64_t seed, ws_dataset** out);

/* Reports */
WINSEQ_API ws_status ws_analyze(const ws_dataset* data,
                                const ws_design* design,
                                const ws_hierarchy* hierarchy,
                                ws_scenario scenario, ws_statistic statistic,
                                int all_looks, ws_report** out);
WINSEQ_API ws_status ws_monte_carlo_type1(const ws_sim_config* config,
                                          const ws_design* design,
                                          const ws_hierarchy* hierarchy,
                                          ws_scenario scenario,
                                          ws_statistic statistic,
                                          size_t replicates,
                                          uint64_t master_seed,
                                          unsigned workers, ws_report** out);
WINSEQ_API ws_status ws_check_increments(const ws_sim_config* config,
                                         const double* fractions, size_t looks,
                                         const ws_hierarchy* hierarchy,
                                         ws_scenario scenario,
                                         size_t replicates,
                                         uint64_t master_seed,
                                         unsigned workers, ws_report** out);
WINSEQ_API const char* ws_report_json(const ws_report* report);
/* Per-replicate CSV for Monte Carlo reports, "" otherwise. */
WINSEQ_API const char* ws_report_csv(const ws_report* report);
/* 1 when an analysis crossed a boundary before its final look. */
WINSEQ_API int ws_report_crossed_at_interim(const ws_report* report);
WINSEQ_API double ws_report_runtime_seconds(const ws_report* report);
WINSEQ_API void ws_report_free(ws_report* report);

#ifdef __cplusplus
}
#endif

#endif /* WINSEQ_H */
