// SPDX-FileCopyrightText: (c) 2026 The winseq authors
//
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "winseq/trial_sim.hpp"

namespace winseq {

namespace {

constexpr double kMonthsPerYear = 12.0;

struct SubjectRef {
  Arm arm;
  std::size_t index;
  const SubjectRecord* record;
};

std::vector<SubjectRef> all_subjects(const TwoSampleDataset& data) {
  std::vector<SubjectRef> out;
  out.reserve(data.total());
  for (std::size_t i = 0; i < data.m(); ++i)
    out.push_back({Arm::Treatment, i, &data.treatment[i]});
  for (std::size_t j = 0; j < data.n(); ++j)
    out.push_back({Arm::Control, j, &data.control[j]});
  return out;
}

double completion(const SubjectRecord& r) {
  return r.enroll_month + r.followup_months;
}

double elapsed(const SubjectRecord& r, double calendar) {
  return std::clamp(calendar - r.enroll_month, 0.0, r.followup_months);
}

double person_months(const TwoSampleDataset& data, double calendar) {
  double total = 0.0;
  for (const auto& r : data.treatment) total += elapsed(r, calendar);
  for (const auto& r : data.control) total += elapsed(r, calendar);
  return total;
}

void require_two_per_arm(std::size_t look, std::size_t m, std::size_t n) {
  if (m < 2 || n < 2) {
    throw Error(ErrorCode::InsufficientData,
                "look " + std::to_string(look) + " has " + std::to_string(m) +
                    " treatment and " + std::to_string(n) +
                    " control subjects; at least two per arm are needed");
  }
}

void fill_tests(LookResult& look, const ComparisonMatrix& matrix,
                const AnalysisOptions& options) {
  look.stats = compute_win_stats(matrix);
  const std::size_t N = look.n_treatment + look.n_control;
  std::optional<AsymptoticCovariance> cov;
  try {
    cov = asymptotic_covariance(estimate_xi(matrix), matrix.rows(), matrix.cols());
  } catch (const Error& e) {
    look.win_difference_error = e.code();
    look.log_win_ratio_error = e.code();
  }
  if (cov) {
    try {
      look.win_difference =
          win_difference_test(look.stats, *cov, N, options.confidence_level);
    } catch (const Error& e) {
      look.win_difference_error = e.code();
    }
    try {
      look.log_win_ratio =
          log_win_ratio_test(look.stats, *cov, N, options.confidence_level);
    } catch (const Error& e) {
      look.log_win_ratio_error = e.code();
    }
  }
  const auto& decision = look.test(options.statistic);
  look.z = decision ? decision->z : std::numeric_limits<double>::quiet_NaN();
}

std::vector<LookResult> complete_only_looks(const TwoSampleDataset& data,
                                            const std::vector<double>& fractions,
                                            const HierarchySpec& hierarchy,
                                            const AnalysisOptions& options) {
  auto subjects = all_subjects(data);
  std::stable_sort(subjects.begin(), subjects.end(),
                   [](const SubjectRef& a, const SubjectRef& b) {
                     return completion(*a.record) < completion(*b.record);
                   });
  // Every analysed subject has final data, so one full matrix serves all looks.
  const ComparisonMatrix full = build_comparison_matrix(data, hierarchy);
  const double N = static_cast<double>(data.total());

  std::vector<LookResult> looks;
  for (std::size_t k = 0; k < fractions.size(); ++k) {
    const auto count = static_cast<std::size_t>(
        std::ceil(fractions[k] * N - 1e-9));
    const std::size_t take = std::clamp<std::size_t>(count, 1, subjects.size());
    std::vector<std::size_t> rows, cols;
    double py = 0.0;
    for (std::size_t s = 0; s < take; ++s) {
      (subjects[s].arm == Arm::Treatment ? rows : cols).push_back(subjects[s].index);
      py += subjects[s].record->followup_months;
    }
    std::sort(rows.begin(), rows.end());
    std::sort(cols.begin(), cols.end());
    require_two_per_arm(k + 1, rows.size(), cols.size());

    LookResult look;
    look.look_index = k + 1;
    look.planned_fraction = fractions[k];
    look.info_fraction = static_cast<double>(take) / N;
    look.calendar_month = completion(*subjects[take - 1].record);
    look.n_treatment = rows.size();
    look.n_control = cols.size();
    look.person_years = py / kMonthsPerYear;
    fill_tests(look, submatrix(full, rows, cols), options);
    looks.push_back(std::move(look));
  }
  return looks;
}

// Calendar month at which accrued person-time first reaches `target`.
double calendar_for_person_months(const TwoSampleDataset& data, double target,
                                  double last_completion) {
  double lo = 0.0, hi = last_completion;
  for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
    const double mid = 0.5 * (lo + hi);
    (person_months(data, mid) < target ? lo : hi) = mid;
  }
  return hi;
}

std::vector<LookResult> partial_looks(const TwoSampleDataset& data,
                                      const std::vector<double>& fractions,
                                      const HierarchySpec& hierarchy,
                                      const AnalysisOptions& options) {
  double last = 0.0;
  double total_pm = 0.0;
  for (const auto& s : all_subjects(data)) {
    last = std::max(last, completion(*s.record));
    total_pm += s.record->followup_months;
  }

  std::vector<LookResult> looks;
  for (std::size_t k = 0; k < fractions.size(); ++k) {
    const double calendar =
        fractions[k] >= 1.0
            ? last
            : calendar_for_person_months(data, fractions[k] * total_pm, last);
    TwoSampleDataset view;
    for (const auto& r : data.treatment) {
      const double w = elapsed(r, calendar);
      if (w > 0.0) view.treatment.push_back(truncate_record(r, w));
    }
    for (const auto& r : data.control) {
      const double w = elapsed(r, calendar);
      if (w > 0.0) view.control.push_back(truncate_record(r, w));
    }
    require_two_per_arm(k + 1, view.m(), view.n());

    LookResult look;
    look.look_index = k + 1;
    look.planned_fraction = fractions[k];
    const double pm = person_months(data, calendar);
    look.info_fraction = pm / total_pm;
    look.calendar_month = calendar;
    look.n_treatment = view.m();
    look.n_control = view.n();
    look.person_years = pm / kMonthsPerYear;
    fill_tests(look, build_comparison_matrix(view, hierarchy), options);
    looks.push_back(std::move(look));
  }
  return looks;
}

void check_look_fractions(const std::vector<double>& fractions) {
  if (fractions.empty()) {
    throw Error(ErrorCode::InvalidArgument, "at least one look is required");
  }
  for (std::size_t k = 0; k < fractions.size(); ++k) {
    if (!(fractions[k] > 0.0 && fractions[k] <= 1.0) ||
        (k > 0 && !(fractions[k] > fractions[k - 1]))) {
      throw Error(ErrorCode::InvalidArgument,
                  "look fractions must be strictly increasing in (0, 1]");
    }
  }
}

}  // namespace

const char* to_string(Scenario s) noexcept {
  return s == Scenario::CompleteOnly ? "complete" : "partial";
}

const char* to_string(TestStatistic s) noexcept {
  return s == TestStatistic::LogWinRatio ? "log_win_ratio" : "win_difference";
}

Scenario parse_scenario(const std::string& text) {
  if (text == "complete" || text == "1" || text == "complete_only") {
    return Scenario::CompleteOnly;
  }
  if (text == "partial" || text == "2" || text == "complete_and_partial") {
    return Scenario::CompleteAndPartial;
  }
  throw Error(ErrorCode::InvalidArgument,
              "unknown scenario '" + text + "' (use complete or partial)");
}

TestStatistic parse_statistic(const std::string& text) {
  if (text == "log_win_ratio" || text == "wr") return TestStatistic::LogWinRatio;
  if (text == "win_difference" || text == "wd") return TestStatistic::WinDifference;
  throw Error(ErrorCode::InvalidArgument,
              "unknown test statistic '" + text + "'");
}

std::vector<LookResult> evaluate_looks(const TwoSampleDataset& data,
                                       const std::vector<double>& fractions,
                                       const HierarchySpec& hierarchy,
                                       const AnalysisOptions& options) {
  check_look_fractions(fractions);
  if (data.m() == 0 || data.n() == 0) {
    throw Error(ErrorCode::EmptyArm, "dataset has an empty arm");
  }
  return options.scenario == Scenario::CompleteOnly
             ? complete_only_looks(data, fractions, hierarchy, options)
             : partial_looks(data, fractions, hierarchy, options);
}

SequentialAnalysis run_group_sequential_analysis(
    const TwoSampleDataset& data, const GroupSequentialDesign& design,
    const HierarchySpec& hierarchy, const AnalysisOptions& options) {
  validate_design(design);
  SequentialAnalysis out;
  out.looks = evaluate_looks(data, design.fractions, hierarchy, options);
  for (auto& look : out.looks) {
    look.z_bound = design.z_bounds[look.look_index - 1];
    look.crossed = std::isfinite(look.z) && std::fabs(look.z) >= look.z_bound;
    if (design.spending.sides == Sides::OneSided) {
      look.crossed = std::isfinite(look.z) && look.z >= look.z_bound;
    }
    if (look.crossed && !out.stopped_at) out.stopped_at = look.look_index;
  }
  if (out.stopped_at && !options.all_looks) out.looks.resize(*out.stopped_at);
  return out;
}

}  // namespace winseq
