// SPDX-FileCopyrightText: (c) 2026 The winseq authors
//
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "winseq/dataset.hpp"
#include "winseq/error.hpp"
#include "winseq/winloss.hpp"

using namespace winseq;
using winseq::testing::random_record;

namespace {

SubjectRecord subject(std::string id, Arm arm, double followup) {
  SubjectRecord r;
  r.id = std::move(id);
  r.arm = arm;
  r.followup_months = followup;
  return r;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

}  // namespace

TEST_CASE("earlier amputation loses at the first tier") {
  auto x = subject("x", Arm::Treatment, 12);
  x.amputation_month = 3;
  const auto y = subject("y", Arm::Control, 12);
  const auto out = compare_pair(x, y, HierarchySpec::vascular_default());
  CHECK(out.result == Outcome::Loss);
  REQUIRE(out.deciding_tier.has_value());
  CHECK(*out.deciding_tier == 0);
  CHECK(out.common_window_months == 12);
}

TEST_CASE("identical records tie") {
  auto x = subject("x", Arm::Treatment, 12);
  x.tlr_months = {4, 9};
  x.occlusion_visits = {{1, false}, {6, true}, {12, true}};
  auto y = x;
  y.arm = Arm::Control;
  const auto out = compare_pair(x, y, HierarchySpec::vascular_default());
  CHECK(out.result == Outcome::Tie);
  CHECK_FALSE(out.deciding_tier.has_value());
}

TEST_CASE("events after the common window are ignored") {
  auto x = subject("x", Arm::Treatment, 12);
  x.tlr_months = {10};
  const auto y = subject("y", Arm::Control, 6);
  const auto out = compare_pair(x, y, HierarchySpec::vascular_default());
  CHECK(out.result == Outcome::Tie);
  CHECK(out.common_window_months == 6);
}

TEST_CASE("event exactly at the window edge counts") {
  auto x = subject("x", Arm::Treatment, 12);
  x.tlr_months = {6};
  const auto y = subject("y", Arm::Control, 6);
  CHECK(compare_pair(x, y, HierarchySpec::vascular_default()).result ==
        Outcome::Loss);
}

TEST_CASE("tier rules") {
  const auto amp_time = HierarchySpec::parse("time:amputation");
  auto x = subject("x", Arm::Treatment, 12);
  auto y = subject("y", Arm::Control, 12);
  x.amputation_month = 5;
  y.amputation_month = 4;
  CHECK(compare_pair(x, y, amp_time).result == Outcome::Win);

  SUBCASE("count: more events lose") {
    const auto h = HierarchySpec::parse("count:tlr");
    x.tlr_months = {1, 2};
    y.tlr_months = {11};
    CHECK(compare_pair(x, y, h).result == Outcome::Loss);
    y.tlr_months = {1, 3};
    CHECK(compare_pair(x, y, h).result == Outcome::Tie);
  }
  SUBCASE("count then time: equal counts, earlier first event loses") {
    const auto h = HierarchySpec::parse("count_then_time:tlr");
    x.tlr_months = {2, 8};
    y.tlr_months = {3, 4};
    CHECK(compare_pair(x, y, h).result == Outcome::Loss);
    x.tlr_months = {3, 9};
    CHECK(compare_pair(x, y, h).result == Outcome::Tie);
  }
  SUBCASE("latest visit: occluded loses, earlier detection loses") {
    const auto h = HierarchySpec::parse("latest_visit:occlusion");
    x.occlusion_visits = {{1, false}, {6, false}, {12, false}};
    y.occlusion_visits = {{1, false}, {6, false}, {12, true}};
    CHECK(compare_pair(x, y, h).result == Outcome::Win);
    x.occlusion_visits = {{1, false}, {6, true}, {12, true}};
    CHECK(compare_pair(x, y, h).result == Outcome::Loss);
    x.occlusion_visits = {{1, false}, {6, false}, {12, true}};
    CHECK(compare_pair(x, y, h).result == Outcome::Tie);
  }
  SUBCASE("latest visit uses only visits both subjects attended") {
    const auto h = HierarchySpec::parse("latest_visit:occlusion");
    x.occlusion_visits = {{1, false}, {6, false}};
    y.occlusion_visits = {{1, false}, {12, true}};
    CHECK(compare_pair(x, y, h).result == Outcome::Tie);
    x.occlusion_visits.clear();
    CHECK(compare_pair(x, y, h).result == Outcome::Tie);
  }
}

TEST_CASE("hierarchy parsing") {
  CHECK(HierarchySpec::parse("default").tiers() ==
        HierarchySpec::vascular_default().tiers());
  const auto h = HierarchySpec::vascular_default();
  CHECK(HierarchySpec::parse(h.to_string()).tiers() == h.tiers());
  CHECK(code_of([] { HierarchySpec({}); }) == ErrorCode::EmptyHierarchy);
  CHECK(code_of([] { HierarchySpec::parse(""); }) == ErrorCode::EmptyHierarchy);
  CHECK(code_of([] { HierarchySpec::parse("latest_visit:tlr"); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([] { HierarchySpec::parse("fastest:tlr"); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("malformed records are rejected") {
  const auto h = HierarchySpec::vascular_default();
  const auto ok = subject("ok", Arm::Control, 12);
  auto bad = subject("bad", Arm::Treatment, 12);
  SUBCASE("amputation after follow-up") { bad.amputation_month = 13; }
  SUBCASE("unsorted tlr") { bad.tlr_months = {5, 3}; }
  SUBCASE("repeated visit") { bad.occlusion_visits = {{6, false}, {6, true}}; }
  SUBCASE("nonpositive follow-up") { bad.followup_months = 0; }
  SUBCASE("negative enrollment") { bad.enroll_month = -1; }
  CHECK(code_of([&] { compare_pair(bad, ok, h); }) == ErrorCode::MalformedRecord);
  CHECK(code_of([&] { validate_record(ok, 6); }) == ErrorCode::MalformedRecord);
}

TEST_CASE("antisymmetry on random records") {
  std::mt19937_64 rng(101);
  const auto h = HierarchySpec::vascular_default();
  for (int rep = 0; rep < 2000; ++rep) {
    const auto x = random_record(rng, Arm::Treatment);
    const auto y = random_record(rng, Arm::Control);
    const auto xy = compare_pair(x, y, h);
    const auto yx = compare_pair(y, x, h);
    REQUIRE(yx.result == reverse(xy.result));
    REQUIRE(yx.deciding_tier == xy.deciding_tier);
    REQUIRE(xy.deciding_tier.has_value() == (xy.result != Outcome::Tie));
    REQUIRE(xy.common_window_months ==
            std::min(x.followup_months, y.followup_months));
  }
}

TEST_CASE("truncation never flips a time-to-first-event decision") {
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto h = HierarchySpec::parse("time:amputation");
  for (int rep = 0; rep < 2000; ++rep) {
    const auto x = random_record(rng, Arm::Treatment);
    const auto y = random_record(rng, Arm::Control);
    const auto before = compare_pair(x, y, h).result;
    const double cut = 0.25 + unit(rng) * (x.followup_months - 0.25);
    const auto after = compare_pair(truncate_record(x, cut), y, h).result;
    if (before != Outcome::Tie) REQUIRE(after != reverse(before));
  }
}

TEST_CASE("lower tiers cannot override a decisive first tier") {
  std::mt19937_64 rng(303);
  const auto h = HierarchySpec::vascular_default();
  int decisive = 0;
  for (int rep = 0; rep < 2000; ++rep) {
    auto x = random_record(rng, Arm::Treatment);
    auto y = random_record(rng, Arm::Control);
    const auto out = compare_pair(x, y, h);
    if (out.deciding_tier != std::size_t{0}) continue;
    ++decisive;
    const auto x2 = random_record(rng, Arm::Treatment);
    const auto y2 = random_record(rng, Arm::Control);
    x.tlr_months.clear();
    y.tlr_months.clear();
    for (double t : x2.tlr_months)
      if (t <= x.followup_months) x.tlr_months.push_back(t);
    for (double t : y2.tlr_months)
      if (t <= y.followup_months) y.tlr_months.push_back(t);
    x.occlusion_visits.clear();
    y.occlusion_visits.clear();
    REQUIRE(compare_pair(x, y, h).result == out.result);
  }
  CHECK(decisive > 50);
}

TEST_CASE("comparison matrix") {
  const auto h = HierarchySpec::vascular_default();
  SUBCASE("single pair") {
    auto t = subject("t", Arm::Treatment, 12);
    auto c = subject("c", Arm::Control, 12);
    c.amputation_month = 2;
    const auto mat = build_comparison_matrix(make_dataset({t, c}), h);
    REQUIRE(mat.rows() == 1);
    REQUIRE(mat.cols() == 1);
    CHECK(mat.at(0, 0) == Outcome::Win);
  }
  SUBCASE("entries agree with pairwise comparison") {
    auto t1 = subject("t1", Arm::Treatment, 12);
    auto t2 = subject("t2", Arm::Treatment, 12);
    auto c1 = subject("c1", Arm::Control, 12);
    auto c2 = subject("c2", Arm::Control, 12);
    t2.tlr_months = {4};
    c1.tlr_months = {5};
    c2.tlr_months = {4};
    const auto data = make_dataset({t1, c1, t2, c2});
    const auto mat = build_comparison_matrix(data, h);
    CHECK(mat == winseq::testing::matrix_from({{Outcome::Win, Outcome::Win},
                                               {Outcome::Loss, Outcome::Tie}}));
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        CHECK(mat.at(i, j) ==
              compare_pair(data.treatment[i], data.control[j], h).result);
    CHECK(mat.swapped_arms().at(0, 1) == Outcome::Win);
    CHECK(build_comparison_matrix(data, h) == mat);
  }
  SUBCASE("empty control arm") {
    const auto data = make_dataset({subject("t", Arm::Treatment, 12)});
    CHECK(code_of([&] { build_comparison_matrix(data, h); }) ==
          ErrorCode::EmptyArm);
  }
}
