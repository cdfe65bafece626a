// SPDX-FileCopyrightText: (c) 2026 The winseq authors
//
// SPDX-License-Identifier: Apache-2.0

#include "winseq/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include <nlohmann/json.hpp>

#include "winseq/normal.hpp"

namespace winseq {

namespace {

using ojson = nlohmann::ordered_json;

// Non-finite values become null.
ojson num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round_significant(v);
}

ojson nums(const std::vector<double>& v) {
  ojson a = ojson::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

ojson spending_json(const SpendingSpec& s) {
  ojson j;
  j["family"] = s.family == SpendingFamily::HwangShihDeCani ? "hsd" : "power";
  j[s.family == SpendingFamily::HwangShihDeCani ? "gamma" : "rho"] = num(s.parameter);
  j["alpha"] = num(s.alpha);
  j["sides"] = s.sides == Sides::TwoSided ? "two" : "one";
  return j;
}

ojson design_object(const GroupSequentialDesign& d) {
  ojson j;
  j["spending"] = spending_json(d.spending);
  j["fractions"] = nums(d.fractions);
  j["z_bounds"] = nums(d.z_bounds);
  j["nominal_p"] = nums(d.nominal_p);
  j["cumulative_spend"] = nums(d.cumulative_spend);
  return j;
}

ojson test_json(const std::optional<TestResult>& t,
                const std::optional<ErrorCode>& err) {
  if (!t) {
    ojson j;
    j["error"] = err ? error_code_name(*err) : "unavailable";
    return j;
  }
  ojson j;
  j["estimate"] = num(t->estimate);
  j["std_error"] = num(t->std_error);
  j["z"] = num(t->z);
  j["p_two_sided"] = num(t->p_two_sided);
  j["ci_low"] = num(t->ci_low);
  j["ci_high"] = num(t->ci_high);
  j["information"] = num(t->information);
  return j;
}

ojson look_json(const LookResult& l) {
  ojson j;
  j["look"] = l.look_index;
  j["planned_fraction"] = num(l.planned_fraction);
  j["info_fraction"] = num(l.info_fraction);
  j["calendar_month"] = num(l.calendar_month);
  j["n_treatment"] = l.n_treatment;
  j["n_control"] = l.n_control;
  j["person_years"] = num(l.person_years);
  j["wins"] = l.stats.wins;
  j["losses"] = l.stats.losses;
  j["ties"] = l.stats.ties;
  j["u1"] = num(l.stats.u1);
  j["u2"] = num(l.stats.u2);
  j["win_ratio"] = num(l.stats.win_ratio());
  j["log_win_ratio"] = test_json(l.log_win_ratio, l.log_win_ratio_error);
  j["win_difference"] = test_json(l.win_difference, l.win_difference_error);
  j["z"] = num(l.z);
  j["p_two_sided"] = std::isfinite(l.z) ? num(two_sided_p(l.z)) : ojson(nullptr);
  j["z_bound"] = num(l.z_bound);
  j["crossed"] = l.crossed;
  return j;
}

ojson moments_json(const IncrementMoments& m) {
  ojson j;
  j["n_used"] = m.n_used;
  j["cov"] = num(m.cov);
  j["var_later"] = num(m.var_later);
  j["cov_over_var"] = num(m.ratio);
  j["corr_z"] = num(m.corr_z);
  return j;
}

ojson sim_config_object(const TrialSimConfig& c) {
  ojson j;
  j["n_total"] = c.n_total;
  j["allocation"] = nums({c.allocation_treatment, c.allocation_control});
  j["horizon"] = num(c.horizon);
  j["rate_amputation"] = num(c.rate_amputation);
  j["rate_tlr"] = num(c.rate_tlr);
  j["rate_occlusion"] = num(c.rate_occlusion);
  j["preclusion_fraction"] = num(c.preclusion_fraction);
  j["accrual_months"] = num(c.accrual_months);
  j["visit_schedule"] = nums(c.visit_schedule);
  j["dropout_rate"] = num(c.dropout_rate);
  ojson fx;
  fx["amputation"] = num(c.treatment_effect.amputation);
  fx["tlr"] = num(c.treatment_effect.tlr);
  fx["occlusion"] = num(c.treatment_effect.occlusion);
  j["treatment_effect"] = fx;
  return j;
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

std::string csv_number(double v) {
  if (!std::isfinite(v)) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace


double round_significant(double value, int digits) {
  if (!std::isfinite(value) || value == 0.0) return value;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return std::strtod(buf, nullptr);
}

std::string design_json(const GroupSequentialDesign& design) {
  return dump(design_object(design));
}

std::string analysis_json(const SequentialAnalysis& analysis,
                          const GroupSequentialDesign& design,
                          const HierarchySpec& hierarchy,
                          const AnalysisOptions& options) {
  ojson j;
  j["scenario"] = to_string(options.scenario);
  j["statistic"] = to_string(options.statistic);
  j["hierarchy"] = hierarchy.to_string();
  j["design"] = design_object(design);
  ojson looks = ojson::array();
  for (const auto& l : analysis.looks) looks.push_back(look_json(l));
  j["looks"] = looks;
  j["stopped_at_look"] =
      analysis.stopped_at ? ojson(*analysis.stopped_at) : ojson(nullptr);
  j["crossed_at_interim"] =
      analysis.stopped_at.has_value() && *analysis.stopped_at < design.looks();
  return dump(j);
}

std::string type1_json(const Type1Report& r) {
  ojson j;
  j["replicates"] = r.options.replicates;
  j["master_seed"] = r.options.master_seed;
  j["scenario"] = to_string(r.options.scenario);
  j["statistic"] = to_string(r.options.statistic);
  j["hierarchy"] = r.hierarchy;
  j["config"] = sim_config_object(r.config);
  j["design"] = design_object(r.design);
  ojson looks = ojson::array();
  for (std::size_t k = 0; k < r.looks.size(); ++k) {
    const auto& s = r.looks[k];
    ojson l;
    l["look"] = k + 1;
    l["planned_fraction"] = num(r.design.fractions[k]);
    l["mean_info_fraction"] = num(s.mean_info_fraction);
    l["reached"] = s.reached;
    l["rejections"] = s.rejections;
    l["rejection_rate"] = num(s.rejection_rate);
    l["wr_count"] = s.wr_count;
    l["wr_mean"] = num(s.wr_mean);
    l["wr_median"] = num(s.wr_median);
    l["degenerate"] = s.degenerate;
    looks.push_back(l);
  }
  j["looks"] = looks;
  j["rejections"] = r.rejections;
  j["overall_rejection"] = num(r.overall_rejection);
  return dump(j);
}

std::string type1_records_csv(const Type1Report& r) {
  std::string out =
      "replicate,look,info_fraction,n_treatment,n_control,wins,losses,ties,"
      "win_ratio,z,reached,crossed\n";
  for (const auto& rec : r.records) {
    out += std::to_string(rec.replicate) + ',' + std::to_string(rec.look) + ',' +
           csv_number(rec.info_fraction) + ',' + std::to_string(rec.n_treatment) +
           ',' + std::to_string(rec.n_control) + ',' + std::to_string(rec.wins) +
           ',' + std::to_string(rec.losses) + ',' + std::to_string(rec.ties) +
           ',' + csv_number(rec.win_ratio) + ',' + csv_number(rec.z) + ',' +
           (rec.reached ? "1" : "0") + ',' + (rec.crossed ? "1" : "0") + '\n';
  }
  return out;
}

std::string increments_json(const IncrementCheckReport& r) {
  ojson j;
  j["replicates"] = r.n_replicates;
  j["scenario"] = to_string(r.scenario);
  j["fractions"] = nums(r.fractions);
  j["excluded_win_difference"] = r.excluded_win_difference;
  j["excluded_log_win_ratio"] = r.excluded_log_win_ratio;
  ojson pairs = ojson::array();
  for (const auto& p : r.pairs) {
    ojson e;
    e["k"] = p.k;
    e["l"] = p.l;
    e["theoretical_corr"] = num(p.theoretical_corr);
    e["win_difference"] = moments_json(p.win_difference);
    e["log_win_ratio"] = moments_json(p.log_win_ratio);
    pairs.push_back(e);
  }
  j["pairs"] = pairs;
  return dump(j);
}

std::string sim_config_json(const TrialSimConfig& config) {
  return dump(sim_config_object(config));
}

}  // namespace winseq
