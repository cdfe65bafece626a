// SPDX-FileCopyrightText: (c) 2026 The winseq authors
//
// SPDX-License-Identifier: Apache-2.0

// Exercises the shared library through its C header only.

#include <cmath>
#include <string>

#include "doctest.h"
#include "winseq/winseq.h"

#ifndef WINSEQ_TEST_DATA
#error "WINSEQ_TEST_DATA must point at tests/data"
#endif

namespace {

std::string data_path(const char* name) {
  return std::string(WINSEQ_TEST_DATA) + "/" + name;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(ws_version()) == "1.0.0");
  CHECK(std::string(ws_status_name(WS_OK)) == "OK");
  CHECK(std::string(ws_status_name(WS_ERR_ZERO_VARIANCE)) == "ZeroVariance");
}

TEST_CASE("spending and design") {
  double f = 0.0;
  REQUIRE(ws_spending_value(WS_FAMILY_HSD, -3, 0.05, WS_TWO_SIDED, 0.5, &f) == WS_OK);
  CHECK(f == doctest::Approx(0.0091213).epsilon(1e-5));
  CHECK(ws_spending_value(WS_FAMILY_HSD, -3, 0.05, WS_TWO_SIDED, 2.0, &f) ==
        WS_ERR_DOMAIN);
  CHECK(std::string(ws_last_error()).size() > 0);
  REQUIRE(ws_spending_value(WS_FAMILY_HSD, -3, 0.05, WS_TWO_SIDED, 1.0, &f) == WS_OK);
  CHECK(std::string(ws_last_error()).empty());

  const double t[] = {0.5, 0.75, 1.0};
  ws_design* d = nullptr;
  REQUIRE(ws_design_solve(t, 3, WS_FAMILY_HSD, -3, 0.05, WS_TWO_SIDED, &d) == WS_OK);
  REQUIRE(ws_design_looks(d) == 3);
  double p[3], z[3], stage[3];
  REQUIRE(ws_design_nominal_p(d, p, 3) == WS_OK);
  REQUIRE(ws_design_z_bounds(d, z, 3) == WS_OK);
  REQUIRE(ws_design_crossing_probability(d, 0.0, stage, 3) == WS_OK);
  CHECK(std::abs(p[0] - 0.0091) < 5e-4);
  CHECK(std::abs(p[1] - 0.0177) < 5e-4);
  CHECK(std::abs(p[2] - 0.0413) < 5e-4);
  CHECK(z[0] > z[1]);
  CHECK(stage[0] + stage[1] + stage[2] == doctest::Approx(0.05).epsilon(1e-6));
  double first[1] = {0.0};
  CHECK(ws_design_z_bounds(d, first, 1) == WS_OK);
  CHECK(first[0] == z[0]);
  CHECK(ws_design_z_bounds(d, nullptr, 3) == WS_ERR_INVALID_ARGUMENT);
  CHECK(std::string(ws_design_json(d)).find("\"nominal_p\"") != std::string::npos);

  ws_design* loaded = nullptr;
  REQUIRE(ws_design_load(data_path("design_hsd3.json").c_str(), &loaded) == WS_OK);
  CHECK(std::string(ws_design_json(loaded)) == ws_design_json(d));
  ws_design_free(loaded);
  ws_design_free(d);

  ws_design* none = nullptr;
  CHECK(ws_design_load("/nonexistent/d.json", &none) == WS_ERR_IO);
  CHECK(none == nullptr);
  CHECK(std::string(ws_last_error()).find("/nonexistent/d.json") != std::string::npos);
  CHECK(ws_design_solve(t, 3, WS_FAMILY_HSD, -3, 0.05, WS_TWO_SIDED, nullptr) ==
        WS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("dataset statistics") {
  ws_dataset* data = nullptr;
  REQUIRE(ws_dataset_load_csv(data_path("two_by_two.csv").c_str(), 12.0, &data) ==
          WS_OK);
  CHECK(ws_dataset_treatment_count(data) == 2);
  CHECK(ws_dataset_control_count(data) == 2);
  ws_hierarchy* h = nullptr;
  REQUIRE(ws_hierarchy_parse("default", &h) == WS_OK);
  ws_win_stats s{};
  REQUIRE(ws_win_stats_compute(data, h, &s) == WS_OK);
  CHECK(s.wins == 2);
  CHECK(s.losses == 1);
  CHECK(s.ties == 1);
  CHECK(s.win_ratio == 2.0);
  ws_test_result r{};
  // Two subjects per arm leave the plug-in variance non-positive.
  CHECK(ws_win_difference_test(data, h, &r) == WS_ERR_ZERO_VARIANCE);
  ws_hierarchy_free(h);
  ws_dataset_free(data);

  ws_hierarchy* bad = nullptr;
  CHECK(ws_hierarchy_parse("", &bad) == WS_ERR_EMPTY_HIERARCHY);
  CHECK(ws_dataset_load_csv("/nonexistent.csv", 12.0, &data) == WS_ERR_IO);
}

TEST_CASE("simulation and analysis") {
  ws_sim_config* cfg = nullptr;
  REQUIRE(ws_sim_config_load(data_path("strong_effect.json").c_str(), &cfg) == WS_OK);
  ws_dataset* data = nullptr;
  REQUIRE(ws_simulate_dataset(cfg, 4, &data) == WS_OK);
  CHECK(ws_dataset_treatment_count(data) == 200);
  ws_design* d = nullptr;
  REQUIRE(ws_design_load(data_path("design_hsd3.json").c_str(), &d) == WS_OK);
  ws_hierarchy* h = nullptr;
  REQUIRE(ws_hierarchy_parse("default", &h) == WS_OK);
  ws_report* rep = nullptr;
  REQUIRE(ws_analyze(data, d, h, WS_SCENARIO_COMPLETE, WS_STAT_LOG_WIN_RATIO, 0,
                     &rep) == WS_OK);
  CHECK(ws_report_crossed_at_interim(rep) == 1);
  CHECK(std::string(ws_report_json(rep)).find("\"stopped_at_look\": 1") !=
        std::string::npos);
  ws_report_free(rep);

  const auto path = std::string(WINSEQ_TEST_BINARY_DIR) + "/capi_dataset.csv";
  REQUIRE(ws_dataset_save_csv(data, path.c_str()) == WS_OK);
  ws_dataset* again = nullptr;
  REQUIRE(ws_dataset_load_csv(path.c_str(), 12.0, &again) == WS_OK);
  ws_win_stats a{}, b{};
  REQUIRE(ws_win_stats_compute(data, h, &a) == WS_OK);
  REQUIRE(ws_win_stats_compute(again, h, &b) == WS_OK);
  CHECK(a.wins == b.wins);
  CHECK(a.losses == b.losses);
  ws_dataset_free(again);

  CHECK(ws_monte_carlo_type1(cfg, d, h, WS_SCENARIO_COMPLETE, WS_STAT_LOG_WIN_RATIO,
                             10, 1, 1, &rep) == WS_ERR_CONFIG);
  ws_dataset_free(data);
  ws_sim_config_free(cfg);

  ws_sim_config* null_cfg = nullptr;
  REQUIRE(ws_sim_config_create(80, &null_cfg) == WS_OK);
  ws_report* one = nullptr;
  ws_report* four = nullptr;
  REQUIRE(ws_monte_carlo_type1(null_cfg, d, h, WS_SCENARIO_PARTIAL,
                               WS_STAT_WIN_DIFFERENCE, 120, 9, 1, &one) == WS_OK);
  REQUIRE(ws_monte_carlo_type1(null_cfg, d, h, WS_SCENARIO_PARTIAL,
                               WS_STAT_WIN_DIFFERENCE, 120, 9, 4, &four) == WS_OK);
  CHECK(std::string(ws_report_json(one)) == ws_report_json(four));
  CHECK(std::string(ws_report_csv(one)) == ws_report_csv(four));
  CHECK(ws_report_runtime_seconds(one) >= 0.0);
  ws_report_free(one);
  ws_report_free(four);

  const double t[] = {0.5, 1.0};
  ws_report* inc = nullptr;
  REQUIRE(ws_check_increments(null_cfg, t, 2, h, WS_SCENARIO_COMPLETE, 50, 3, 2,
                              &inc) == WS_OK);
  CHECK(std::string(ws_report_json(inc)).find("\"theoretical_corr\"") !=
        std::string::npos);
  ws_report_free(inc);
  CHECK(ws_sim_config_set_treatment_effect(null_cfg, -1, 1, 1) == WS_ERR_CONFIG);
  ws_sim_config_free(null_cfg);
  ws_hierarchy_free(h);
  ws_design_free(d);
}
