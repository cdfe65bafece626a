// SPDX-FileCopyrightText: (c) 2026 The winseq authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace winseq {

enum class Arm { Treatment, Control };

struct OcclusionVisit {
  double month = 0.0;
  bool occluded = false;

  bool operator==(const OcclusionVisit&) const = default;
};

// One randomized subject. All times are months; enroll_month is calendar time
// since study start, every other field is time since the subject's enrollment.
struct SubjectRecord {
  std::string id;
  Arm arm = Arm::Treatment;
  double enroll_month = 0.0;
  double followup_months = 0.0;
  std::optional<double> amputation_month;
  std::vector<double> tlr_months;
  std::vector<OcclusionVisit> occlusion_visits;

  bool operator==(const SubjectRecord&) const = default;
};

// Throws Error(MalformedRecord) naming the violated invariant.
void validate_record(const SubjectRecord& record,
                     double horizon = std::numeric_limits<double>::infinity());

// Copy of `record` with every event and visit after `window` removed and
// follow-up capped at `window`.
SubjectRecord truncate_record(const SubjectRecord& record, double window);

enum class Endpoint { Amputation, Tlr, Occlusion };

enum class TierRule {
  TimeToFirstEvent,
  EventCount,
  CountThenFirstTime,
  LatestVisitStatusThenTime,
};

struct TierComparator {
  TierRule rule = TierRule::TimeToFirstEvent;
  Endpoint endpoint = Endpoint::Amputation;

  bool operator==(const TierComparator&) const = default;
};

/// Ordered endpoint hierarchy; tier 0 has the highest clinical priority.
///
/// Text form is a comma-separated list of `rule:endpoint` items, e.g.
/// `time:amputation,count_then_time:tlr,latest_visit:occlusion`. Rules are
/// `time`, `count`, `count_then_time` and `latest_visit`; `latest_visit` is
/// only defined for the occlusion endpoint.
class HierarchySpec {
 public:
  explicit HierarchySpec(std::vector<TierComparator> tiers);

  // Amputation timing, then TLR count with earlier-first-TLR tiebreak, then
  // occlusion status at the latest shared visit.
  static HierarchySpec vascular_default();
  static HierarchySpec parse(std::string_view text);

  const std::vector<TierComparator>& tiers() const noexcept { return tiers_; }
  std::size_t size() const noexcept { return tiers_.size(); }
  std::string to_string() const;

 private:
  std::vector<TierComparator> tiers_;
};

// Values are the kernel contributions phi1 - phi2 from the treatment side.
enum class Outcome : std::int8_t { Loss = -1, Tie = 0, Win = 1 };

struct PairOutcome {
  Outcome result = Outcome::Tie;
  std::optional<std::size_t> deciding_tier;
  double common_window_months = 0.0;
};

/// Compares treatment subject `x` against control subject `y`. Both records
/// are evaluated over the closed window [0, min(followup_x, followup_y)].
PairOutcome compare_pair(const SubjectRecord& x, const SubjectRecord& y,
                         const HierarchySpec& hierarchy);

// Same as compare_pair without validating the records. Callers must have run
// validate_record on both.
PairOutcome compare_pair_unchecked(const SubjectRecord& x,
                                   const SubjectRecord& y,
                                   const HierarchySpec& hierarchy) noexcept;

inline Outcome reverse(Outcome o) noexcept {
  return static_cast<Outcome>(-static_cast<int>(o));
}

const char* to_string(Outcome o) noexcept;
const char* to_string(Arm a) noexcept;

}  // namespace winseq
