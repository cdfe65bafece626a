// SPDX-FileCopyrightText: (c) 2026 The winseq authors
//
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "winseq/trial_sim.hpp"

namespace winseq {

namespace {

// Runs body(i) for i in [0, count) on `workers` threads. Each index writes
// only its own output slot, so results do not depend on scheduling.
template <class Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
  workers = std::max(1u, workers);
  if (workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned n = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  pool.reserve(n);
  for (unsigned w = 0; w < n; ++w) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

// Neumaier-compensated running sum.
class Accumulator {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double mean(const std::vector<double>& v) {
  Accumulator acc;
  for (double x : v) acc.add(x);
  return v.empty() ? 0.0 : acc.value() / static_cast<double>(v.size());
}

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

double covariance(const std::vector<double>& a, const std::vector<double>& b) {
  const double ma = mean(a);
  const double mb = mean(b);
  Accumulator acc;
  for (std::size_t i = 0; i < a.size(); ++i) acc.add((a[i] - ma) * (b[i] - mb));
  return a.size() < 2 ? 0.0 : acc.value() / static_cast<double>(a.size() - 1);
}

void require_null(const TrialSimConfig& config) {
  config.validate();
  if (!config.treatment_effect.is_null()) {
    throw Error(ErrorCode::ConfigError,
                "null Monte Carlo requires all treatment effect multipliers = 1");
  }
}

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

Type1Report monte_carlo_type1(const TrialSimConfig& config,
                              const GroupSequentialDesign& design,
                              const HierarchySpec& hierarchy,
                              const MonteCarloOptions& options) {
  require_null(config);
  validate_design(design);
  const auto start = std::chrono::steady_clock::now();

  AnalysisOptions analysis;
  analysis.scenario = options.scenario;
  analysis.statistic = options.statistic;
  analysis.all_looks = true;

  const std::size_t K = design.looks();
  std::vector<std::vector<LookResult>> results(options.replicates);
  std::vector<std::optional<std::size_t>> stops(options.replicates);
  parallel_for(options.replicates, options.workers, [&](std::size_t r) {
    const auto data = simulate_trial_dataset(
        config, replicate_seed(options.master_seed, r));
    auto run = run_group_sequential_analysis(data, design, hierarchy, analysis);
    stops[r] = run.stopped_at;
    results[r] = std::move(run.looks);
  });

  Type1Report report;
  report.config = config;
  report.design = design;
  report.hierarchy = hierarchy.to_string();
  report.options = options;
  report.looks.resize(K);
  std::vector<std::vector<double>> ratios(K);
  std::vector<Accumulator> fraction_sums(K);
  for (std::size_t r = 0; r < options.replicates; ++r) {
    const std::size_t stop = stops[r].value_or(K + 1);
    if (stops[r]) ++report.rejections;
    for (std::size_t k = 0; k < K; ++k) {
      const LookResult& look = results[r][k];
      auto& summary = report.looks[k];
      const bool reached = k + 1 <= stop;
      fraction_sums[k].add(look.info_fraction);
      if (reached) {
        ++summary.reached;
        if (k + 1 == stop) ++summary.rejections;
        if (!look.test(options.statistic)) ++summary.degenerate;
        const double wr = look.stats.win_ratio();
        if (std::isfinite(wr)) ratios[k].push_back(wr);
      }
      if (options.keep_records) {
        ReplicateLookRecord rec;
        rec.replicate = r;
        rec.look = k + 1;
        rec.info_fraction = look.info_fraction;
        rec.n_treatment = look.n_treatment;
        rec.n_control = look.n_control;
        rec.wins = look.stats.wins;
        rec.losses = look.stats.losses;
        rec.ties = look.stats.ties;
        rec.win_ratio = look.stats.win_ratio();
        rec.z = look.z;
        rec.reached = reached;
        rec.crossed = look.crossed;
        report.records.push_back(rec);
      }
    }
  }
  const double reps = static_cast<double>(std::max<std::size_t>(1, options.replicates));
  for (std::size_t k = 0; k < K; ++k) {
    auto& s = report.looks[k];
    s.rejection_rate = static_cast<double>(s.rejections) / reps;
    s.wr_count = ratios[k].size();
    s.wr_mean = mean(ratios[k]);
    s.wr_median = median(ratios[k]);
    s.mean_info_fraction = fraction_sums[k].value() / reps;
  }
  report.overall_rejection = static_cast<double>(report.rejections) / reps;
  report.runtime_seconds = elapsed_seconds(start);
  return report;
}

const IncrementPair& IncrementCheckReport::pair(std::size_t k,
                                                std::size_t l) const {
  for (const auto& p : pairs) {
    if (p.k == k && p.l == l) return p;
  }
  throw Error(ErrorCode::InvalidArgument, "no such look pair");
}

IncrementCheckReport check_independent_increments(
    const TrialSimConfig& config, const std::vector<double>& fractions,
    const HierarchySpec& hierarchy, const MonteCarloOptions& options) {
  require_null(config);
  if (fractions.size() < 2) {
    throw Error(ErrorCode::InvalidArgument,
                "increment check needs at least two looks");
  }
  const auto start = std::chrono::steady_clock::now();
  AnalysisOptions analysis;
  analysis.scenario = options.scenario;
  analysis.statistic = options.statistic;

  const std::size_t K = fractions.size();
  std::vector<std::vector<LookResult>> results(options.replicates);
  parallel_for(options.replicates, options.workers, [&](std::size_t r) {
    const auto data = simulate_trial_dataset(
        config, replicate_seed(options.master_seed, r));
    results[r] = evaluate_looks(data, fractions, hierarchy, analysis);
  });

  IncrementCheckReport report;
  report.fractions = fractions;
  report.scenario = options.scenario;
  report.n_replicates = options.replicates;

  // Per statistic: estimate and z at each look, over usable replicates.
  struct Series {
    std::vector<std::vector<double>> estimate, z;
  };
  Series wd{std::vector<std::vector<double>>(K), std::vector<std::vector<double>>(K)};
  Series lwr = wd;
  for (const auto& looks : results) {
    const bool wd_ok = std::all_of(looks.begin(), looks.end(),
                                   [](const LookResult& l) { return l.win_difference.has_value(); });
    const bool lwr_ok = std::all_of(looks.begin(), looks.end(),
                                    [](const LookResult& l) { return l.log_win_ratio.has_value(); });
    if (!wd_ok) ++report.excluded_win_difference;
    if (!lwr_ok) ++report.excluded_log_win_ratio;
    for (std::size_t k = 0; k < K; ++k) {
      if (wd_ok) {
        wd.estimate[k].push_back(looks[k].win_difference->estimate);
        wd.z[k].push_back(looks[k].win_difference->z);
      }
      if (lwr_ok) {
        lwr.estimate[k].push_back(looks[k].log_win_ratio->estimate);
        lwr.z[k].push_back(looks[k].log_win_ratio->z);
      }
    }
  }

  auto moments = [](const Series& s, std::size_t k, std::size_t l) {
    IncrementMoments m;
    m.n_used = s.estimate[l].size();
    m.cov = covariance(s.estimate[k], s.estimate[l]);
    m.var_later = covariance(s.estimate[l], s.estimate[l]);
    m.ratio = m.var_later > 0.0 ? m.cov / m.var_later : 0.0;
    const double vz_k = covariance(s.z[k], s.z[k]);
    const double vz_l = covariance(s.z[l], s.z[l]);
    m.corr_z = (vz_k > 0.0 && vz_l > 0.0)
                   ? std::clamp(covariance(s.z[k], s.z[l]) / std::sqrt(vz_k * vz_l),
                                -1.0, 1.0)
                   : 0.0;
    return m;
  };
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t l = k; l < K; ++l) {
      IncrementPair p;
      p.k = k + 1;
      p.l = l + 1;
      p.theoretical_corr = std::sqrt(fractions[k] / fractions[l]);
      p.win_difference = moments(wd, k, l);
      p.log_win_ratio = moments(lwr, k, l);
      report.pairs.push_back(p);
    }
  }
  report.runtime_seconds = elapsed_seconds(start);
  return report;
}

}  // namespace winseq
