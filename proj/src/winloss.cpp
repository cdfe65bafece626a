// SPDX-FileCopyrightText: (c) 2026 The winseq authors
//
// SPDX-License-Identifier: Apache-2.0

#include "winseq/winloss.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "winseq/error.hpp"

namespace winseq {

namespace {

[[noreturn]] void malformed(const SubjectRecord& r, const std::string& why) {
  throw Error(ErrorCode::MalformedRecord,
              "subject '" + r.id + "': " + why);
}

void check_time(const SubjectRecord& r, double t, const char* what) {
  if (!std::isfinite(t) || t < 0.0) {
    malformed(r, std::string(what) + " must be a finite non-negative month");
  }
  if (t > r.followup_months) {
    malformed(r, std::string(what) + " " + std::to_string(t) +
                     " is after follow-up " +
                     std::to_string(r.followup_months));
  }
}

// In-window summary of one endpoint for one subject.
struct EndpointSummary {
  int count = 0;
  double first = 0.0;  // meaningful only when count > 0
};

EndpointSummary summarize(const SubjectRecord& r, Endpoint e, double window) {
  EndpointSummary s;
  switch (e) {
    case Endpoint::Amputation:
      if (r.amputation_month && *r.amputation_month <= window) {
        s.count = 1;
        s.first = *r.amputation_month;
      }
      break;
    case Endpoint::Tlr:
      for (double t : r.tlr_months) {
        if (t > window) break;
        if (s.count++ == 0) s.first = t;
      }
      break;
    case Endpoint::Occlusion:
      for (const auto& v : r.occlusion_visits) {
        if (v.month > window) break;
        if (v.occluded && s.count++ == 0) s.first = v.month;
      }
      break;
  }
  return s;
}

// Earlier event loses; having an event loses to having none.
Outcome by_first_time(const EndpointSummary& x, const EndpointSummary& y) {
  if (x.count == 0 && y.count == 0) return Outcome::Tie;
  if (y.count == 0) return Outcome::Loss;
  if (x.count == 0) return Outcome::Win;
  if (x.first < y.first) return Outcome::Loss;
  if (x.first > y.first) return Outcome::Win;
  return Outcome::Tie;
}

Outcome by_count(const EndpointSummary& x, const EndpointSummary& y) {
  if (x.count > y.count) return Outcome::Loss;
  if (x.count < y.count) return Outcome::Win;
  return Outcome::Tie;
}

Outcome by_latest_visit(const SubjectRecord& x, const SubjectRecord& y,
                        double window) {
  const auto& vx = x.occlusion_visits;
  const auto& vy = y.occlusion_visits;
  std::size_t i = 0, j = 0;
  const OcclusionVisit* last_x = nullptr;
  const OcclusionVisit* last_y = nullptr;
  while (i < vx.size() && j < vy.size()) {
    if (vx[i].month > window || vy[j].month > window) break;
    if (vx[i].month < vy[j].month) {
      ++i;
    } else if (vy[j].month < vx[i].month) {
      ++j;
    } else {
      last_x = &vx[i++];
      last_y = &vy[j++];
    }
  }
  if (last_x == nullptr) return Outcome::Tie;
  if (last_x->occluded && !last_y->occluded) return Outcome::Loss;
  if (!last_x->occluded && last_y->occluded) return Outcome::Win;
  if (!last_x->occluded) return Outcome::Tie;
  return by_first_time(summarize(x, Endpoint::Occlusion, window),
                       summarize(y, Endpoint::Occlusion, window));
}

Outcome compare_tier(const SubjectRecord& x, const SubjectRecord& y,
                     const TierComparator& tier, double window) {
  if (tier.rule == TierRule::LatestVisitStatusThenTime) {
    return by_latest_visit(x, y, window);
  }
  const EndpointSummary sx = summarize(x, tier.endpoint, window);
  const EndpointSummary sy = summarize(y, tier.endpoint, window);
  switch (tier.rule) {
    case TierRule::TimeToFirstEvent:
      return by_first_time(sx, sy);
    case TierRule::EventCount:
      return by_count(sx, sy);
    case TierRule::CountThenFirstTime: {
      const Outcome o = by_count(sx, sy);
      return o != Outcome::Tie ? o : by_first_time(sx, sy);
    }
    case TierRule::LatestVisitStatusThenTime:
      break;
  }
  return Outcome::Tie;
}

const char* rule_token(TierRule r) {
  switch (r) {
    case TierRule::TimeToFirstEvent: return "time";
    case TierRule::EventCount: return "count";
    case TierRule::CountThenFirstTime: return "count_then_time";
    case TierRule::LatestVisitStatusThenTime: return "latest_visit";
  }
  return "?";
}

const char* endpoint_token(Endpoint e) {
  switch (e) {
    case Endpoint::Amputation: return "amputation";
    case Endpoint::Tlr: return "tlr";
    case Endpoint::Occlusion: return "occlusion";
  }
  return "?";
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

}  // namespace

void validate_record(const SubjectRecord& r, double horizon) {
  if (!std::isfinite(r.enroll_month) || r.enroll_month < 0.0) {
    malformed(r, "enroll_month must be a finite non-negative month");
  }
  if (!(r.followup_months > 0.0) || !std::isfinite(r.followup_months)) {
    malformed(r, "followup_months must be positive");
  }
  if (r.followup_months > horizon) {
    malformed(r, "followup_months exceeds the design horizon " +
                     std::to_string(horizon));
  }
  if (r.amputation_month) check_time(r, *r.amputation_month, "amputation_month");
  for (std::size_t k = 0; k < r.tlr_months.size(); ++k) {
    check_time(r, r.tlr_months[k], "tlr month");
    if (k > 0 && !(r.tlr_months[k] > r.tlr_months[k - 1])) {
      malformed(r, "tlr months must be strictly increasing");
    }
  }
  for (std::size_t k = 0; k < r.occlusion_visits.size(); ++k) {
    check_time(r, r.occlusion_visits[k].month, "visit month");
    if (k > 0 &&
        !(r.occlusion_visits[k].month > r.occlusion_visits[k - 1].month)) {
      malformed(r, "visit months must be strictly increasing");
    }
  }
}

SubjectRecord truncate_record(const SubjectRecord& record, double window) {
  SubjectRecord out = record;
  if (window >= record.followup_months) return out;
  out.followup_months = window;
  if (out.amputation_month && *out.amputation_month > window) {
    out.amputation_month.reset();
  }
  std::erase_if(out.tlr_months, [&](double t) { return t > window; });
  std::erase_if(out.occlusion_visits,
                [&](const OcclusionVisit& v) { return v.month > window; });
  return out;
}

HierarchySpec::HierarchySpec(std::vector<TierComparator> tiers)
    : tiers_(std::move(tiers)) {
  if (tiers_.empty()) {
    throw Error(ErrorCode::EmptyHierarchy, "hierarchy has no tiers");
  }
  for (const auto& t : tiers_) {
    if (t.rule == TierRule::LatestVisitStatusThenTime &&
        t.endpoint != Endpoint::Occlusion) {
      throw Error(ErrorCode::InvalidArgument,
                  "latest_visit is only defined for the occlusion endpoint");
    }
  }
}

HierarchySpec HierarchySpec::vascular_default() {
  return HierarchySpec({
      {TierRule::TimeToFirstEvent, Endpoint::Amputation},
      {TierRule::CountThenFirstTime, Endpoint::Tlr},
      {TierRule::LatestVisitStatusThenTime, Endpoint::Occlusion},
  });
}

HierarchySpec HierarchySpec::parse(std::string_view text) {
  text = trim(text);
  if (text == "default") return vascular_default();
  std::vector<TierComparator> tiers;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    text = comma == std::string_view::npos ? std::string_view{}
                                           : text.substr(comma + 1);
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      throw Error(ErrorCode::InvalidArgument,
                  "hierarchy tier '" + std::string(item) +
                      "' is not of the form rule:endpoint");
    }
    const std::string_view rule = trim(item.substr(0, colon));
    const std::string_view endpoint = trim(item.substr(colon + 1));
    TierComparator tier;
    if (rule == "time") {
      tier.rule = TierRule::TimeToFirstEvent;
    } else if (rule == "count") {
      tier.rule = TierRule::EventCount;
    } else if (rule == "count_then_time") {
      tier.rule = TierRule::CountThenFirstTime;
    } else if (rule == "latest_visit") {
      tier.rule = TierRule::LatestVisitStatusThenTime;
    } else {
      throw Error(ErrorCode::InvalidArgument,
                  "unknown hierarchy rule '" + std::string(rule) + "'");
    }
    if (endpoint == "amputation") {
      tier.endpoint = Endpoint::Amputation;
    } else if (endpoint == "tlr") {
      tier.endpoint = Endpoint::Tlr;
    } else if (endpoint == "occlusion") {
      tier.endpoint = Endpoint::Occlusion;
    } else {
      throw Error(ErrorCode::InvalidArgument,
                  "unknown hierarchy endpoint '" + std::string(endpoint) + "'");
    }
    tiers.push_back(tier);
  }
  return HierarchySpec(std::move(tiers));
}

std::string HierarchySpec::to_string() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < tiers_.size(); ++k) {
    if (k) os << ',';
    os << rule_token(tiers_[k].rule) << ':' << endpoint_token(tiers_[k].endpoint);
  }
  return os.str();
}

PairOutcome compare_pair_unchecked(const SubjectRecord& x,
                                   const SubjectRecord& y,
                                   const HierarchySpec& hierarchy) noexcept {
  PairOutcome out;
  out.common_window_months = std::min(x.followup_months, y.followup_months);
  const auto& tiers = hierarchy.tiers();
  for (std::size_t k = 0; k < tiers.size(); ++k) {
    const Outcome o = compare_tier(x, y, tiers[k], out.common_window_months);
    if (o != Outcome::Tie) {
      out.result = o;
      out.deciding_tier = k;
      return out;
    }
  }
  return out;
}

PairOutcome compare_pair(const SubjectRecord& x, const SubjectRecord& y,
                         const HierarchySpec& hierarchy) {
  validate_record(x);
  validate_record(y);
  return compare_pair_unchecked(x, y, hierarchy);
}

const char* to_string(Outcome o) noexcept {
  switch (o) {
    case Outcome::Win: return "Win";
    case Outcome::Loss: return "Loss";
    case Outcome::Tie: return "Tie";
  }
  return "?";
}

const char* to_string(Arm a) noexcept {
  return a == Arm::Treatment ? "T" : "C";
}

}  // namespace winseq
