// SPDX-FileCopyrightText: (c) 2026 The winseq authors
//
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Talks to the library only through winseq.h.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "winseq/winseq.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitCrossedAtInterim = 2;
constexpr const char* kSeedEnv = "WINSEQ_SEED";

struct Failure {
  std::string message;
};

void check(ws_status s, const std::string& context) {
  if (s != WS_OK) {
    throw Failure{context + ": " + ws_status_name(s) + ": " + ws_last_error()};
  }
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Design = std::unique_ptr<ws_design, Deleter<ws_design, ws_design_free>>;
using Dataset = std::unique_ptr<ws_dataset, Deleter<ws_dataset, ws_dataset_free>>;
using Hierarchy =
    std::unique_ptr<ws_hierarchy, Deleter<ws_hierarchy, ws_hierarchy_free>>;
using SimConfig =
    std::unique_ptr<ws_sim_config, Deleter<ws_sim_config, ws_sim_config_free>>;
using Report = std::unique_ptr<ws_report, Deleter<ws_report, ws_report_free>>;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Failure{"cannot open '" + path + "' for writing"};
  out << text;
  if (!out) throw Failure{"failed writing '" + path + "'"};
}

void emit(const std::string& json, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << json;
  } else {
    write_file(out_path, json);
  }
}

Design load_design(const std::string& path) {
  ws_design* d = nullptr;
  check(ws_design_load(path.c_str(), &d), "design '" + path + "'");
  return Design(d);
}

Hierarchy parse_hierarchy(const std::string& text) {
  ws_hierarchy* h = nullptr;
  check(ws_hierarchy_parse(text.c_str(), &h), "hierarchy");
  return Hierarchy(h);
}

SimConfig make_config(const std::string& path, std::size_t n_total) {
  ws_sim_config* c = nullptr;
  if (!path.empty()) {
    check(ws_sim_config_load(path.c_str(), &c), "simulation config '" + path + "'");
  } else {
    check(ws_sim_config_create(n_total, &c), "simulation config");
  }
  return SimConfig(c);
}

ws_scenario scenario_of(const std::string& s) {
  if (s == "complete" || s == "1") return WS_SCENARIO_COMPLETE;
  if (s == "partial" || s == "2") return WS_SCENARIO_PARTIAL;
  throw Failure{"unknown scenario '" + s + "' (use complete or partial)"};
}

ws_statistic statistic_of(const std::string& s) {
  if (s == "log_win_ratio") return WS_STAT_LOG_WIN_RATIO;
  if (s == "win_difference") return WS_STAT_WIN_DIFFERENCE;
  throw Failure{"unknown statistic '" + s + "'"};
}

// The environment variable, when set, takes precedence over --seed.
std::uint64_t resolve_seed(std::uint64_t flag_value) {
  const char* env = std::getenv(kSeedEnv);
  if (env == nullptr || *env == '\0') return flag_value;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw Failure{std::string(kSeedEnv) + " must be an unsigned integer"};
  }
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw Failure{"'" + item + "' is not a number"};
    }
  }
  return out;
}

unsigned default_workers() {
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group-sequential win ratio design, analysis and simulation"};
  app.require_subcommand(1);

  std::string design_path, data_path, out_path, csv_out, config_path;
  std::string hierarchy = "default";
  std::string scenario = "complete";
  std::string statistic = "log_win_ratio";
  std::string looks = "0.5,1.0";
  std::string dataset_out;
  double horizon = 12.0;
  std::size_t reps = 1000;
  std::size_t n_total = 200;
  std::uint64_t seed = 1;
  unsigned workers = default_workers();
  bool all_looks = false;

  auto* design_cmd = app.add_subcommand("design", "Solve efficacy boundaries");
  design_cmd->add_option("--design", design_path, "Design config (JSON)")->required();
  design_cmd->add_option("--out", out_path, "Write design JSON here");

  auto* analyze_cmd =
      app.add_subcommand("analyze", "Sequential win ratio analysis of subject data");
  analyze_cmd->add_option("--data", data_path, "Subject CSV")->required();
  analyze_cmd->add_option("--design", design_path, "Design config (JSON)")->required();
  analyze_cmd->add_option("--hierarchy", hierarchy, "Tier list or 'default'");
  analyze_cmd->add_option("--scenario", scenario, "complete | partial");
  analyze_cmd->add_option("--statistic", statistic, "log_win_ratio | win_difference");
  analyze_cmd->add_option("--horizon", horizon, "Follow-up horizon in months");
  analyze_cmd->add_flag("--all-looks", all_looks, "Report looks after a crossing");
  analyze_cmd->add_option("--out", out_path, "Write report JSON here");

  auto* simulate_cmd =
      app.add_subcommand("simulate", "Null Monte Carlo of a sequential design");
  simulate_cmd->add_option("--config", config_path, "Simulation config (JSON)");
  simulate_cmd->add_option("--n-total", n_total, "Subjects when --config is absent");
  simulate_cmd->add_option("--design", design_path, "Design config (JSON)");
  simulate_cmd->add_option("--hierarchy", hierarchy, "Tier list or 'default'");
  simulate_cmd->add_option("--scenario", scenario, "complete | partial");
  simulate_cmd->add_option("--statistic", statistic, "log_win_ratio | win_difference");
  simulate_cmd->add_option("--reps", reps, "Replicates");
  simulate_cmd->add_option("--seed", seed, std::string("Master seed (") + kSeedEnv +
                                               " overrides)");
  simulate_cmd->add_option("--workers", workers, "Worker threads");
  simulate_cmd->add_option("--out", out_path, "Write report JSON here");
  simulate_cmd->add_option("--csv-out", csv_out, "Write per-replicate CSV here");
  simulate_cmd->add_option("--dataset-out", dataset_out,
                           "Write one simulated dataset (subject CSV) and exit");

  auto* incr_cmd = app.add_subcommand(
      "check-increments", "Empirical covariance of statistics across looks");
  incr_cmd->add_option("--config", config_path, "Simulation config (JSON)");
  incr_cmd->add_option("--n-total", n_total, "Subjects when --config is absent");
  incr_cmd->add_option("--looks", looks, "Comma-separated information fractions");
  incr_cmd->add_option("--hierarchy", hierarchy, "Tier list or 'default'");
  incr_cmd->add_option("--scenario", scenario, "complete | partial");
  incr_cmd->add_option("--reps", reps, "Replicates");
  incr_cmd->add_option("--seed", seed, std::string("Master seed (") + kSeedEnv +
                                           " overrides)");
  incr_cmd->add_option("--workers", workers, "Worker threads");
  incr_cmd->add_option("--out", out_path, "Write report JSON here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (design_cmd->parsed()) {
      emit(ws_design_json(load_design(design_path).get()), out_path);
      return kExitOk;
    }

    if (analyze_cmd->parsed()) {
      const Design design = load_design(design_path);
      const Hierarchy h = parse_hierarchy(hierarchy);
      ws_dataset* raw = nullptr;
      check(ws_dataset_load_csv(data_path.c_str(), horizon, &raw),
            "data '" + data_path + "'");
      const Dataset data(raw);
      ws_report* rep = nullptr;
      check(ws_analyze(data.get(), design.get(), h.get(), scenario_of(scenario),
                       statistic_of(statistic), all_looks ? 1 : 0, &rep),
            "analysis");
      const Report report(rep);
      emit(ws_report_json(report.get()), out_path);
      return ws_report_crossed_at_interim(report.get()) ? kExitCrossedAtInterim
                                                        : kExitOk;
    }

    if (simulate_cmd->parsed()) {
      const SimConfig config = make_config(config_path, n_total);
      const std::uint64_t master = resolve_seed(seed);
      if (!dataset_out.empty()) {
        ws_dataset* raw = nullptr;
        check(ws_simulate_dataset(config.get(), master, &raw), "simulation");
        const Dataset data(raw);
        check(ws_dataset_save_csv(data.get(), dataset_out.c_str()),
              "dataset '" + dataset_out + "'");
        return kExitOk;
      }
      if (design_path.empty()) throw Failure{"simulate needs --design"};
      const Design design = load_design(design_path);
      const Hierarchy h = parse_hierarchy(hierarchy);
      ws_report* rep = nullptr;
      check(ws_monte_carlo_type1(config.get(), design.get(), h.get(),
                                 scenario_of(scenario), statistic_of(statistic),
                                 reps, master, workers, &rep),
            "simulation");
      const Report report(rep);
      emit(ws_report_json(report.get()), out_path);
      if (!csv_out.empty()) write_file(csv_out, ws_report_csv(report.get()));
      std::fprintf(stderr, "runtime: %.2f s\n", ws_report_runtime_seconds(report.get()));
      return kExitOk;
    }

    if (incr_cmd->parsed()) {
      const SimConfig config = make_config(config_path, n_total);
      const Hierarchy h = parse_hierarchy(hierarchy);
      const std::vector<double> fractions = parse_list(looks);
      ws_report* rep = nullptr;
      check(ws_check_increments(config.get(), fractions.data(), fractions.size(),
                                h.get(), scenario_of(scenario), reps,
                                resolve_seed(seed), workers, &rep),
            "increment check");
      const Report report(rep);
      emit(ws_report_json(report.get()), out_path);
      std::fprintf(stderr, "runtime: %.2f s\n", ws_report_runtime_seconds(report.get()));
      return kExitOk;
    }
  } catch (const Failure& f) {
    std::fprintf(stderr, "error: %s\n", f.message.c_str());
    return kExitError;
  }
  return kExitError;
}
