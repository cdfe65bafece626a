// SPDX-FileCopyrightText: (c) 2026 The winseq authors
//
// SPDX-License-Identifier: Apache-2.0

#include "winseq/winseq.h"

#include <algorithm>
#include <exception>
#include <new>
#include <optional>
#include <string>

#include "winseq/boundaries.hpp"
#include "winseq/io.hpp"
#include "winseq/report.hpp"
#include "winseq/trial_sim.hpp"
#include "winseq/ustat.hpp"

struct ws_design {
  winseq::GroupSequentialDesign design;
  std::string json;
};

struct ws_dataset {
  winseq::TwoSampleDataset data;
};

struct ws_hierarchy {
  winseq::HierarchySpec spec;
};

struct ws_sim_config {
  winseq::TrialSimConfig config;
};

struct ws_report {
  std::string json;
  std::string csv;
  bool crossed_at_interim = false;
  double runtime_seconds = 0.0;
};

namespace {

thread_local std::string g_last_error;

ws_status to_status(winseq::ErrorCode code) {
  using winseq::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return WS_ERR_INVALID_ARGUMENT;
    case ErrorCode::MalformedRecord: return WS_ERR_MALFORMED_RECORD;
    case ErrorCode::EmptyHierarchy: return WS_ERR_EMPTY_HIERARCHY;
    case ErrorCode::EmptyArm: return WS_ERR_EMPTY_ARM;
    case ErrorCode::DegenerateSample: return WS_ERR_DEGENERATE_SAMPLE;
    case ErrorCode::ZeroVariance: return WS_ERR_ZERO_VARIANCE;
    case ErrorCode::DegenerateWinRatio: return WS_ERR_DEGENERATE_WIN_RATIO;
    case ErrorCode::DomainError: return WS_ERR_DOMAIN;
    case ErrorCode::InfeasibleSpend: return WS_ERR_INFEASIBLE_SPEND;
    case ErrorCode::ConvergenceFailure: return WS_ERR_CONVERGENCE;
    case ErrorCode::ConfigError: return WS_ERR_CONFIG;
    case ErrorCode::InsufficientData: return WS_ERR_INSUFFICIENT_DATA;
    case ErrorCode::ParseError: return WS_ERR_PARSE;
    case ErrorCode::DuplicateId: return WS_ERR_DUPLICATE_ID;
    case ErrorCode::InvariantViolation: return WS_ERR_INVARIANT_VIOLATION;
    case ErrorCode::IoError: return WS_ERR_IO;
  }
  return WS_ERR_INTERNAL;
}

// Runs fn, translating exceptions into a status and the thread's last error.
template <class Fn>
ws_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    g_last_error.clear();
    return WS_OK;
  } catch (const winseq::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown error";
  }
  return WS_ERR_INTERNAL;
}

void require(const void* p, const char* what) {
  if (p == nullptr) {
    throw winseq::Error(winseq::ErrorCode::InvalidArgument,
                        std::string(what) + " must not be null");
  }
}

winseq::SpendingSpec spending(ws_family family, double parameter, double alpha,
                              ws_sides sides) {
  winseq::SpendingSpec s;
  if (family != WS_FAMILY_HSD && family != WS_FAMILY_POWER) {
    throw winseq::Error(winseq::ErrorCode::InvalidArgument, "unknown family");
  }
  if (sides != WS_ONE_SIDED && sides != WS_TWO_SIDED) {
    throw winseq::Error(winseq::ErrorCode::InvalidArgument, "unknown sides");
  }
  s.family = family == WS_FAMILY_HSD ? winseq::SpendingFamily::HwangShihDeCani
                                     : winseq::SpendingFamily::Power;
  s.parameter = parameter;
  s.alpha = alpha;
  s.sides = sides == WS_TWO_SIDED ? winseq::Sides::TwoSided : winseq::Sides::OneSided;
  s.validate();
  return s;
}

winseq::Scenario scenario_of(ws_scenario s) {
  if (s == WS_SCENARIO_COMPLETE) return winseq::Scenario::CompleteOnly;
  if (s == WS_SCENARIO_PARTIAL) return winseq::Scenario::CompleteAndPartial;
  throw winseq::Error(winseq::ErrorCode::InvalidArgument, "unknown scenario");
}

winseq::TestStatistic statistic_of(ws_statistic s) {
  if (s == WS_STAT_LOG_WIN_RATIO) return winseq::TestStatistic::LogWinRatio;
  if (s == WS_STAT_WIN_DIFFERENCE) return winseq::TestStatistic::WinDifference;
  throw winseq::Error(winseq::ErrorCode::InvalidArgument, "unknown statistic");
}

ws_design* wrap(winseq::GroupSequentialDesign d) {
  auto* out = new ws_design{std::move(d), {}};
  out->json = winseq::design_json(out->design);
  return out;
}

ws_status copy_values(const std::vector<double>& values, double* out,
                      size_t capacity) {
  return guarded([&] {
    require(out, "output buffer");
    std::copy_n(values.begin(), std::min(capacity, values.size()), out);
  });
}

void fill_test(const winseq::TestResult& t, ws_test_result* out) {
  out->estimate = t.estimate;
  out->std_error = t.std_error;
  out->z = t.z;
  out->p_two_sided = t.p_two_sided;
  out->ci_low = t.ci_low;
  out->ci_high = t.ci_high;
  out->information = t.information;
}

template <class TestFn>
ws_status full_data_test(const ws_dataset* data, const ws_hierarchy* hierarchy,
                         ws_test_result* out, TestFn test) {
  return guarded([&] {
    require(data, "dataset");
    require(hierarchy, "hierarchy");
    require(out, "result");
    const auto matrix = winseq::build_comparison_matrix(data->data, hierarchy->spec);
    const auto stats = winseq::compute_win_stats(matrix);
    const auto cov = winseq::asymptotic_covariance(
        winseq::estimate_xi(matrix), matrix.rows(), matrix.cols());
    fill_test(test(stats, cov, data->data.total()), out);
  });
}

}  // namespace

extern "C" {

const char* ws_version(void) { return "1.0.0"; }

const char* ws_last_error(void) { return g_last_error.c_str(); }

const char* ws_status_name(ws_status status) {
  if (status == WS_OK) return "OK";
  if (status == WS_ERR_INTERNAL) return "Internal";
  if (status >= WS_ERR_INVALID_ARGUMENT && status <= WS_ERR_IO) {
    return winseq::error_code_name(static_cast<winseq::ErrorCode>(status));
  }
  return "Unknown";
}

ws_status ws_spending_value(ws_family family, double parameter, double alpha,
                            ws_sides sides, double t, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = winseq::spending_value(spending(family, parameter, alpha, sides), t);
  });
}

ws_status ws_design_solve(const double* fractions, size_t looks,
                          ws_family family, double parameter, double alpha,
                          ws_sides sides, ws_design** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    require(fractions, "fractions");
    *out = wrap(winseq::solve_boundaries(
        std::vector<double>(fractions, fractions + looks),
        spending(family, parameter, alpha, sides)));
  });
}

ws_status ws_design_load(const char* path, ws_design** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    require(path, "path");
    const auto cfg = winseq::load_design_config(path);
    *out = wrap(winseq::solve_boundaries(cfg.fractions, cfg.spending, cfg.grid));
  });
}

size_t ws_design_looks(const ws_design* design) {
  return design ? design->design.looks() : 0;
}

ws_status ws_design_z_bounds(const ws_design* design, double* out,
                             size_t capacity) {
  if (!design) return guarded([] { require(nullptr, "design"); });
  return copy_values(design->design.z_bounds, out, capacity);
}

ws_status ws_design_nominal_p(const ws_design* design, double* out,
                              size_t capacity) {
  if (!design) return guarded([] { require(nullptr, "design"); });
  return copy_values(design->design.nominal_p, out, capacity);
}

ws_status ws_design_crossing_probability(const ws_design* design, double drift,
                                         double* out, size_t capacity) {
  std::vector<double> probs;
  const ws_status s = guarded([&] {
    require(design, "design");
    probs = winseq::crossing_probability(design->design, drift);
  });
  return s != WS_OK ? s : copy_values(probs, out, capacity);
}

const char* ws_design_json(const ws_design* design) {
  return design ? design->json.c_str() : "";
}

void ws_design_free(ws_design* design) { delete design; }

ws_status ws_hierarchy_parse(const char* text, ws_hierarchy** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    require(text, "text");
    *out = new ws_hierarchy{winseq::HierarchySpec::parse(text)};
  });
}

void ws_hierarchy_free(ws_hierarchy* hierarchy) { delete hierarchy; }

ws_status ws_dataset_load_csv(const char* path, double horizon,
                              ws_dataset** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    require(path, "path");
    *out = new ws_dataset{winseq::parse_subject_csv(path, horizon)};
  });
}

ws_status ws_dataset_save_csv(const ws_dataset* data, const char* path) {
  return guarded([&] {
    require(data, "dataset");
    require(path, "path");
    winseq::write_subject_csv(data->data, path);
  });
}

size_t ws_dataset_treatment_count(const ws_dataset* data) {
  return data ? data->data.m() : 0;
}

size_t ws_dataset_control_count(const ws_dataset* data) {
  return data ? data->data.n() : 0;
}

ws_status ws_win_stats_compute(const ws_dataset* data,
                               const ws_hierarchy* hierarchy,
                               ws_win_stats* out) {
  return guarded([&] {
    require(data, "dataset");
    require(hierarchy, "hierarchy");
    require(out, "out");
    const auto s = winseq::compute_win_stats(
        winseq::build_comparison_matrix(data->data, hierarchy->spec));
    *out = ws_win_stats{s.m, s.n, s.wins, s.losses, s.ties, s.u1, s.u2,
                        s.win_ratio()};
  });
}

ws_status ws_log_win_ratio_test(const ws_dataset* data,
                                const ws_hierarchy* hierarchy,
                                ws_test_result* out) {
  return full_data_test(data, hierarchy, out, [](auto& s, auto& c, size_t N) {
    return winseq::log_win_ratio_test(s, c, N);
  });
}

ws_status ws_win_difference_test(const ws_dataset* data,
                                 const ws_hierarchy* hierarchy,
                                 ws_test_result* out) {
  return full_data_test(data, hierarchy, out, [](auto& s, auto& c, size_t N) {
    return winseq::win_difference_test(s, c, N);
  });
}

void ws_dataset_free(ws_dataset* data) { delete data; }

ws_status ws_sim_config_create(size_t n_total, ws_sim_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    winseq::TrialSimConfig c;
    c.n_total = n_total;
    c.validate();
    *out = new ws_sim_config{c};
  });
}

ws_status ws_sim_config_load(const char* path, ws_sim_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    require(path, "path");
    *out = new ws_sim_config{winseq::load_sim_config(path)};
  });
}

ws_status ws_sim_config_set_treatment_effect(ws_sim_config* config,
                                             double amputation, double tlr,
                                             double occlusion) {
  return guarded([&] {
    require(config, "config");
    winseq::TrialSimConfig c = config->config;
    c.treatment_effect = {amputation, tlr, occlusion};
    c.validate();
    config->config = c;
  });
}

void ws_sim_config_free(ws_sim_config* config) { delete config; }

ws_status ws_simulate_dataset(const ws_sim_config* config, uint64_t seed,
                              ws_dataset** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    require(config, "config");
    *out = new ws_dataset{winseq::simulate_trial_dataset(config->config, seed)};
  });
}

ws_status ws_analyze(const ws_dataset* data, const ws_design* design,
                     const ws_hierarchy* hierarchy, ws_scenario scenario,
                     ws_statistic statistic, int all_looks, ws_report** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    require(data, "dataset");
    require(design, "design");
    require(hierarchy, "hierarchy");
    winseq::AnalysisOptions options;
    options.scenario = scenario_of(scenario);
    options.statistic = statistic_of(statistic);
    options.all_looks = all_looks != 0;
    const auto result = winseq::run_group_sequential_analysis(
        data->data, design->design, hierarchy->spec, options);
    auto* report = new ws_report;
    report->json = winseq::analysis_json(result, design->design, hierarchy->spec,
                                         options);
    report->crossed_at_interim =
        result.stopped_at && *result.stopped_at < design->design.looks();
    *out = report;
  });
}

ws_status ws_monte_carlo_type1(const ws_sim_config* config,
                               const ws_design* design,
                               const ws_hierarchy* hierarchy,
                               ws_scenario scenario, ws_statistic statistic,
                               size_t replicates, uint64_t master_seed,
                               unsigned workers, ws_report** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    require(config, "config");
    require(design, "design");
    require(hierarchy, "hierarchy");
    winseq::MonteCarloOptions options;
    options.replicates = replicates;
    options.master_seed = master_seed;
    options.workers = workers;
    options.scenario = scenario_of(scenario);
    options.statistic = statistic_of(statistic);
    const auto r = winseq::monte_carlo_type1(config->config, design->design,
                                             hierarchy->spec, options);
    auto* report = new ws_report;
    report->json = winseq::type1_json(r);
    report->csv = winseq::type1_records_csv(r);
    report->runtime_seconds = r.runtime_seconds;
    *out = report;
  });
}

ws_status ws_check_increments(const ws_sim_config* config,
                              const double* fractions, size_t looks,
                              const ws_hierarchy* hierarchy,
                              ws_scenario scenario, size_t replicates,
                              uint64_t master_seed, unsigned workers,
                              ws_report** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    require(config, "config");
    require(fractions, "fractions");
    require(hierarchy, "hierarchy");
    winseq::MonteCarloOptions options;
    options.replicates = replicates;
    options.master_seed = master_seed;
    options.workers = workers;
    options.scenario = scenario_of(scenario);
    const auto r = winseq::check_independent_increments(
        config->config, std::vector<double>(fractions, fractions + looks),
        hierarchy->spec, options);
    auto* report = new ws_report;
    report->json = winseq::increments_json(r);
    report->runtime_seconds = r.runtime_seconds;
    *out = report;
  });
}

const char* ws_report_json(const ws_report* report) {
  return report ? report->json.c_str() : "";
}

const char* ws_report_csv(const ws_report* report) {
  return report ? report->csv.c_str() : "";
}

int ws_report_crossed_at_interim(const ws_report* report) {
  return report && report->crossed_at_interim ? 1 : 0;
}

double ws_report_runtime_seconds(const ws_report* report) {
  return report ? report->runtime_seconds : 0.0;
}

void ws_report_free(ws_report* report) { delete report; }

}  // extern "C"
