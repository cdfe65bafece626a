// SPDX-FileCopyrightText: (c) 2026 The winseq authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "winseq/boundaries.hpp"
#include "winseq/dataset.hpp"
#include "winseq/error.hpp"
#include "winseq/ustat.hpp"

namespace winseq {

// Hazard multipliers applied to the treatment arm; 1 everywhere is the null.
struct TreatmentEffect {
  double amputation = 1.0;
  double tlr = 1.0;
  double occlusion = 1.0;

  bool is_null() const noexcept {
    return amputation == 1.0 && tlr == 1.0 && occlusion == 1.0;
  }
};

/// Data-generating process for the vascular composite. Every rate is the
/// probability of at least one event by `horizon` months; hazards are
/// calibrated from it as -log(1 - rate) / horizon.
struct TrialSimConfig {
  std::size_t n_total = 200;
  double allocation_treatment = 1.0;
  double allocation_control = 1.0;
  double horizon = 12.0;
  double rate_amputation = 0.03;
  double rate_tlr = 0.25;
  double rate_occlusion = 0.55;
  // Chance that a TLR following a detected occlusion is not performed.
  double preclusion_fraction = 0.40;
  double accrual_months = 18.0;
  std::vector<double> visit_schedule{1.0, 6.0, 12.0};
  // Probability of dropping out before the horizon (exponential dropout).
  double dropout_rate = 0.0;
  TreatmentEffect treatment_effect;

  // Throws ConfigError.
  void validate() const;
};

TwoSampleDataset simulate_trial_dataset(const TrialSimConfig& config,
                                        std::uint64_t seed);

// Seed of replicate `index` under `master_seed`.
std::uint64_t replicate_seed(std::uint64_t master_seed,
                             std::uint64_t index) noexcept;

enum class Scenario {
  // Only subjects with final data (completed horizon or dropped out).
  CompleteOnly,
  // Every enrolled subject, follow-up truncated at the look's calendar time.
  CompleteAndPartial,
};

enum class TestStatistic { LogWinRatio, WinDifference };

const char* to_string(Scenario s) noexcept;
const char* to_string(TestStatistic s) noexcept;
Scenario parse_scenario(const std::string& text);
TestStatistic parse_statistic(const std::string& text);

struct LookResult {
  std::size_t look_index = 0;  // 1-based
  double planned_fraction = 0.0;
  double info_fraction = 0.0;
  double calendar_month = 0.0;
  std::size_t n_treatment = 0;
  std::size_t n_control = 0;
  double person_years = 0.0;
  WinStatistics stats;
  std::optional<TestResult> win_difference;
  std::optional<TestResult> log_win_ratio;
  std::optional<ErrorCode> win_difference_error;
  std::optional<ErrorCode> log_win_ratio_error;
  // Decision statistic; NaN when its test could not be computed.
  double z = 0.0;
  double z_bound = 0.0;
  bool crossed = false;

  const std::optional<TestResult>& test(TestStatistic s) const noexcept {
    return s == TestStatistic::LogWinRatio ? log_win_ratio : win_difference;
  }
};

struct AnalysisOptions {
  Scenario scenario = Scenario::CompleteOnly;
  TestStatistic statistic = TestStatistic::LogWinRatio;
  // Keep analysing looks after the first crossing.
  bool all_looks = false;
  double confidence_level = 0.95;
};

struct SequentialAnalysis {
  std::vector<LookResult> looks;
  // 1-based look at which the design boundary was first crossed.
  std::optional<std::size_t> stopped_at;
};

/// Evaluates the dataset at each information fraction (no boundaries).
/// Throws InsufficientData if a look has fewer than two subjects per arm.
std::vector<LookResult> evaluate_looks(const TwoSampleDataset& data,
                                       const std::vector<double>& fractions,
                                       const HierarchySpec& hierarchy,
                                       const AnalysisOptions& options);

SequentialAnalysis run_group_sequential_analysis(
    const TwoSampleDataset& data, const GroupSequentialDesign& design,
    const HierarchySpec& hierarchy, const AnalysisOptions& options);

struct MonteCarloOptions {
  std::size_t replicates = 1000;
  std::uint64_t master_seed = 1;
  unsigned workers = 1;
  Scenario scenario = Scenario::CompleteOnly;
  TestStatistic statistic = TestStatistic::LogWinRatio;
  bool keep_records = true;
};

// One replicate at one look, for external audit.
struct ReplicateLookRecord {
  std::size_t replicate = 0;
  std::size_t look = 0;
  double info_fraction = 0.0;
  std::size_t n_treatment = 0;
  std::size_t n_control = 0;
  std::uint64_t wins = 0;
  std::uint64_t losses = 0;
  std::uint64_t ties = 0;
  double win_ratio = 0.0;
  double z = 0.0;
  bool reached = false;
  bool crossed = false;
};

struct LookSummary {
  std::size_t rejections = 0;
  double rejection_rate = 0.0;
  // Replicates that had not stopped before this look.
  std::size_t reached = 0;
  // Among reached replicates with a finite win ratio.
  std::size_t wr_count = 0;
  double wr_mean = 0.0;
  double wr_median = 0.0;
  // Reached replicates whose decision test was degenerate at this look.
  std::size_t degenerate = 0;
  double mean_info_fraction = 0.0;
};

struct Type1Report {
  TrialSimConfig config;
  GroupSequentialDesign design;
  std::string hierarchy;
  MonteCarloOptions options;
  std::vector<LookSummary> looks;
  std::size_t rejections = 0;
  double overall_rejection = 0.0;
  double runtime_seconds = 0.0;
  std::vector<ReplicateLookRecord> records;
};

/// Null-hypothesis Monte Carlo of the sequential design. Results depend only
/// on (config, design, hierarchy, options) minus the worker count.
Type1Report monte_carlo_type1(const TrialSimConfig& config,
                              const GroupSequentialDesign& design,
                              const HierarchySpec& hierarchy,
                              const MonteCarloOptions& options);

struct IncrementMoments {
  // Replicates contributing (degenerate ones are excluded).
  std::size_t n_used = 0;
  double cov = 0.0;
  double var_later = 0.0;
  // cov / var_later; 1 under independent increments.
  double ratio = 0.0;
  double corr_z = 0.0;
};

struct IncrementPair {
  std::size_t k = 0;  // 1-based, k <= l
  std::size_t l = 0;
  double theoretical_corr = 0.0;
  IncrementMoments win_difference;
  IncrementMoments log_win_ratio;
};

struct IncrementCheckReport {
  std::vector<double> fractions;
  Scenario scenario = Scenario::CompleteOnly;
  std::size_t n_replicates = 0;
  std::size_t excluded_win_difference = 0;
  std::size_t excluded_log_win_ratio = 0;
  std::vector<IncrementPair> pairs;
  double runtime_seconds = 0.0;

  const IncrementPair& pair(std::size_t k, std::size_t l) const;
};

/// Empirical covariance structure of the win difference and log win ratio
/// across looks, compared with corr(Z_k, Z_l) = sqrt(t_k / t_l).
IncrementCheckReport check_independent_increments(
    const TrialSimConfig& config, const std::vector<double>& fractions,
    const HierarchySpec& hierarchy, const MonteCarloOptions& options);

}  // namespace winseq
