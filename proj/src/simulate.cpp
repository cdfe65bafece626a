// SPDX-FileCopyrightText: (c) 2026 The winseq authors
//
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <random>

#include "winseq/trial_sim.hpp"

namespace winseq {

namespace {

[[noreturn]] void config_error(const std::string& why) {
  throw Error(ErrorCode::ConfigError, "simulation config: " + why);
}

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    config_error(std::string(name) + " must lie in [0, 1]");
  }
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// mt19937_64 output is fully specified by the standard; the conversions
// below are done by hand so streams do not depend on the library's
// distribution implementations.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32)};
    engine_.seed(seq);
  }

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Exponential waiting time; infinite for a zero hazard.
  double exponential(double hazard) {
    const double u = uniform();
    if (!(hazard > 0.0)) return std::numeric_limits<double>::infinity();
    return -std::log1p(-u) / hazard;
  }

 private:
  std::mt19937_64 engine_;
};

double hazard_for(double probability_by_horizon, double horizon) {
  if (probability_by_horizon >= 1.0) return std::numeric_limits<double>::infinity();
  return -std::log1p(-probability_by_horizon) / horizon;
}

SubjectRecord simulate_subject(const TrialSimConfig& c, Arm arm, Stream& rng,
                               std::size_t index) {
  SubjectRecord r;
  r.id = "S" + std::to_string(index + 1);
  r.arm = arm;
  r.enroll_month = c.accrual_months * rng.uniform();

  const bool treated = arm == Arm::Treatment;
  const auto& fx = c.treatment_effect;
  const double h_dropout = hazard_for(c.dropout_rate, c.horizon);
  const double h_amp =
      hazard_for(c.rate_amputation, c.horizon) * (treated ? fx.amputation : 1.0);
  const double h_tlr = hazard_for(c.rate_tlr, c.horizon) * (treated ? fx.tlr : 1.0);
  const double h_occ =
      hazard_for(c.rate_occlusion, c.horizon) * (treated ? fx.occlusion : 1.0);

  r.followup_months = std::min(c.horizon, rng.exponential(h_dropout));
  if (!(r.followup_months > 0.0)) {
    r.followup_months = std::numeric_limits<double>::min();
  }

  const double amputation = rng.exponential(h_amp);
  if (amputation <= r.followup_months) r.amputation_month = amputation;

  // Occlusion is only seen at the first scheduled visit at or after onset,
  // and stays visible at later visits.
  const double onset = rng.exponential(h_occ);
  double detected = std::numeric_limits<double>::infinity();
  for (double v : c.visit_schedule) {
    if (v > r.followup_months) break;
    if (v >= onset && !std::isfinite(detected)) detected = v;
    r.occlusion_visits.push_back({v, v >= detected});
  }

  if (h_tlr > 0.0) {
    double t = 0.0;
    for (;;) {
      t += rng.exponential(h_tlr);
      if (t > r.followup_months) break;
      const double u = rng.uniform();
      if (detected <= t && u < c.preclusion_fraction) continue;
      r.tlr_months.push_back(t);
    }
  }
  return r;
}

}  // namespace

void TrialSimConfig::validate() const {
  if (n_total < 4) config_error("n_total must be at least 4");
  if (!(allocation_treatment > 0.0) || !(allocation_control > 0.0)) {
    config_error("allocation ratios must be positive");
  }
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    config_error("horizon must be positive");
  }
  check_probability(rate_amputation, "rate_amputation");
  check_probability(rate_tlr, "rate_tlr");
  if (rate_tlr >= 1.0) config_error("rate_tlr must be below 1");
  check_probability(rate_occlusion, "rate_occlusion");
  check_probability(preclusion_fraction, "preclusion_fraction");
  check_probability(dropout_rate, "dropout_rate");
  if (dropout_rate >= 1.0) config_error("dropout_rate must be below 1");
  if (!(accrual_months >= 0.0) || !std::isfinite(accrual_months)) {
    config_error("accrual_months must be non-negative");
  }
  for (std::size_t k = 0; k < visit_schedule.size(); ++k) {
    if (!(visit_schedule[k] > 0.0)) config_error("visit months must be positive");
    if (k > 0 && !(visit_schedule[k] > visit_schedule[k - 1])) {
      config_error("visit schedule must be strictly increasing");
    }
  }
  if (!visit_schedule.empty() && visit_schedule.back() > horizon) {
    config_error("horizon must cover every scheduled visit");
  }
  for (double m : {treatment_effect.amputation, treatment_effect.tlr,
                   treatment_effect.occlusion}) {
    if (!(m >= 0.0) || !std::isfinite(m)) {
      config_error("treatment effect multipliers must be finite and >= 0");
    }
  }
}

std::uint64_t replicate_seed(std::uint64_t master_seed,
                             std::uint64_t index) noexcept {
  return splitmix64(master_seed ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

TwoSampleDataset simulate_trial_dataset(const TrialSimConfig& config,
                                        std::uint64_t seed) {
  config.validate();
  const double share = config.allocation_treatment /
                       (config.allocation_treatment + config.allocation_control);
  auto m = static_cast<std::size_t>(
      std::llround(share * static_cast<double>(config.n_total)));
  m = std::clamp<std::size_t>(m, 1, config.n_total - 1);

  Stream rng(seed);
  TwoSampleDataset data;
  data.treatment.reserve(m);
  data.control.reserve(config.n_total - m);
  for (std::size_t i = 0; i < config.n_total; ++i) {
    const Arm arm = i < m ? Arm::Treatment : Arm::Control;
    auto subject = simulate_subject(config, arm, rng, i);
    (arm == Arm::Treatment ? data.treatment : data.control)
        .push_back(std::move(subject));
  }
  return data;
}

}  // namespace winseq
