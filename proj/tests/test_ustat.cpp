// SPDX-FileCopyrightText: (c) 2026 The winseq authors
//
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "winseq/error.hpp"
#include "winseq/normal.hpp"
#include "winseq/ustat.hpp"

using namespace winseq;
using winseq::testing::matrix_from;

namespace {

constexpr Outcome W = Outcome::Win;
constexpr Outcome L = Outcome::Loss;
constexpr Outcome T = Outcome::Tie;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

}  // namespace

TEST_CASE("win statistics of a 2x2 matrix") {
  const auto s = compute_win_stats(matrix_from({{W, W}, {L, T}}));
  CHECK(s.wins == 2);
  CHECK(s.losses == 1);
  CHECK(s.ties == 1);
  CHECK(s.u1 == 0.5);
  CHECK(s.u2 == 0.25);
  CHECK(s.u1 / s.u2 == 2.0);
  CHECK(s.win_ratio() == 2.0);
  CHECK(s.win_difference() == 0.25);
}

TEST_CASE("win ratio edge cases") {
  const auto ties = compute_win_stats(matrix_from({{T, T}, {T, T}}));
  CHECK(ties.u1 == 0.0);
  CHECK(ties.u2 == 0.0);
  CHECK(std::isnan(ties.win_ratio()));
  CHECK(std::isinf(compute_win_stats(matrix_from({{W}})).win_ratio()));
}

TEST_CASE("xi of a 2x2 matrix") {
  const auto xi = estimate_xi(matrix_from({{W, W}, {L, T}}));
  CHECK(xi.xi10[0][0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(xi.xi10[0][1] == doctest::Approx(-0.125).epsilon(1e-15));
  CHECK(xi.xi10[1][0] == doctest::Approx(-0.125).epsilon(1e-15));
}

TEST_CASE("xi of constant matrices is zero") {
  const auto xi = estimate_xi(matrix_from({{W, W, W}, {W, W, W}}));
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      CHECK(xi.xi10[a][b] == 0.0);
      CHECK(xi.xi01[a][b] == 0.0);
    }
}

TEST_CASE("xi needs two subjects per arm") {
  CHECK(code_of([] { estimate_xi(matrix_from({{W, L}})); }) ==
        ErrorCode::DegenerateSample);
  CHECK(code_of([] { estimate_xi(matrix_from({{W}, {L}})); }) ==
        ErrorCode::DegenerateSample);
}

TEST_CASE("fast xi agrees with triple enumeration") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> dim(2, 6);
  for (int rep = 0; rep < 200; ++rep) {
    const auto mat = winseq::testing::random_matrix(rng, dim(rng), dim(rng));
    const auto fast = estimate_xi(mat);
    const auto slow = winseq::testing::brute_force_xi(mat);
    const auto u = compute_win_stats(mat);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        REQUIRE(std::abs(fast.xi10[a][b] - slow.xi10[a][b]) <= 1e-12);
        REQUIRE(std::abs(fast.xi01[a][b] - slow.xi01[a][b]) <= 1e-12);
        REQUIRE(fast.xi10[a][b] == fast.xi10[b][a]);
        REQUIRE(fast.xi01[a][b] == fast.xi01[b][a]);
      }
    const double uu[2] = {u.u1, u.u2};
    for (int a = 0; a < 2; ++a) {
      REQUIRE(fast.xi10[a][a] >= -uu[a] * uu[a] - 1e-12);
      REQUIRE(fast.xi01[a][a] >= -uu[a] * uu[a] - 1e-12);
    }
  }
}

TEST_CASE("asymptotic covariance") {
  XiEstimates xi;
  xi.xi10 = {{{0.1, 0.02}, {0.02, 0.3}}};
  xi.xi01 = {{{0.05, -0.01}, {-0.01, 0.07}}};
  const auto cov = asymptotic_covariance(xi, 5, 5);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      CHECK(cov.sigma[a][b] ==
            doctest::Approx(2 * xi.xi10[a][b] + 2 * xi.xi01[a][b]));
  const auto unequal = asymptotic_covariance(xi, 3, 9);
  CHECK(unequal.sigma[0][0] == doctest::Approx(4.0 * 0.1 + 12.0 / 9.0 * 0.05));
  CHECK(asymptotic_covariance(XiEstimates{}, 4, 4).sigma ==
        AsymptoticCovariance{}.sigma);
}

TEST_CASE("tests at the null estimate") {
  // Both arms hold latent scores {0, 1, 2}, so u1 == u2.
  const auto mat = matrix_from({{T, L, L}, {W, T, L}, {W, W, T}});
  const auto s = compute_win_stats(mat);
  REQUIRE(s.u1 == s.u2);
  const auto cov = asymptotic_covariance(estimate_xi(mat), 3, 3);
  const auto wd = win_difference_test(s, cov, 6);
  CHECK(wd.estimate == 0.0);
  CHECK(wd.z == 0.0);
  CHECK(wd.p_two_sided == 1.0);
  CHECK(wd.ci_low < 0.0);
  CHECK(wd.ci_high > 0.0);
  const auto lw = log_win_ratio_test(s, cov, 6);
  CHECK(lw.estimate == 0.0);
  CHECK(lw.ci_low < 1.0);
  CHECK(lw.ci_high > 1.0);
  CHECK(lw.information == doctest::Approx(1.0 / (lw.std_error * lw.std_error)));
}

TEST_CASE("test error paths") {
  const auto ties = matrix_from({{T, T}, {T, T}});
  const auto s = compute_win_stats(ties);
  const auto cov = asymptotic_covariance(estimate_xi(ties), 2, 2);
  CHECK(code_of([&] { win_difference_test(s, cov, 4); }) ==
        ErrorCode::ZeroVariance);
  const auto no_loss = matrix_from({{W, T}, {T, W}});
  const auto s2 = compute_win_stats(no_loss);
  const auto cov2 = asymptotic_covariance(estimate_xi(no_loss), 2, 2);
  CHECK(code_of([&] { log_win_ratio_test(s2, cov2, 4); }) ==
        ErrorCode::DegenerateWinRatio);
}

TEST_CASE("test statistics are consistent") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 200; ++rep) {
    const auto mat = winseq::testing::latent_matrix(rng, 8, 7, 0.3);
    const auto s = compute_win_stats(mat);
    if (s.wins == 0 || s.losses == 0) continue;
    const auto cov = asymptotic_covariance(estimate_xi(mat), 8, 7);
    REQUIRE(cov.sigma[0][1] == cov.sigma[1][0]);
    const auto wd = win_difference_test(s, cov, 15);
    const double var = (cov.sigma[0][0] + cov.sigma[1][1] - 2 * cov.sigma[0][1]) / 15;
    REQUIRE(wd.std_error == doctest::Approx(std::sqrt(var)));
    REQUIRE(wd.z == doctest::Approx(wd.estimate / wd.std_error));
    REQUIRE(wd.p_two_sided == doctest::Approx(2 * normal_sf(std::abs(wd.z))));
    REQUIRE(wd.ci_low < wd.ci_high);
    const auto lw = log_win_ratio_test(s, cov, 15);
    const double lvar = (cov.sigma[0][0] / (s.u1 * s.u1) +
                         cov.sigma[1][1] / (s.u2 * s.u2) -
                         2 * cov.sigma[0][1] / (s.u1 * s.u2)) / 15;
    REQUIRE(lw.std_error == doctest::Approx(std::sqrt(lvar)));
    REQUIRE(lw.estimate == doctest::Approx(std::log(s.u1 / s.u2)));
    REQUIRE(lw.ci_low == doctest::Approx(std::exp(lw.estimate - 1.959963984540054 * lw.std_error)));
    REQUIRE(lw.ci_high == doctest::Approx(std::exp(lw.estimate + 1.959963984540054 * lw.std_error)));
  }
}

TEST_CASE("swapping arms mirrors every statistic") {
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 200; ++rep) {
    const auto mat = winseq::testing::latent_matrix(rng, 12, 10, -0.2);
    const auto sw = mat.swapped_arms();
    const auto s = compute_win_stats(mat);
    const auto t = compute_win_stats(sw);
    if (s.wins == 0 || s.losses == 0) continue;
    REQUIRE(t.u1 == s.u2);
    REQUIRE(t.u2 == s.u1);
    const auto c = asymptotic_covariance(estimate_xi(mat), 12, 10);
    const auto d = asymptotic_covariance(estimate_xi(sw), 10, 12);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        REQUIRE(d.sigma[1 - a][1 - b] == doctest::Approx(c.sigma[a][b]).epsilon(1e-12));
    REQUIRE(win_difference_test(t, d, 22).estimate ==
            doctest::Approx(-win_difference_test(s, c, 22).estimate));
    REQUIRE(log_win_ratio_test(t, d, 22).estimate ==
            doctest::Approx(-log_win_ratio_test(s, c, 22).estimate));
  }
}

TEST_CASE("sigma11/N tracks the resampling variance of U1") {
  std::mt19937_64 rng(17);
  const std::size_t m = 30, n = 40, reps = 4000;
  auto draw = [&] { return winseq::testing::latent_matrix(rng, m, n, 0.3); };
  std::vector<double> u1s, predicted;
  for (std::size_t r = 0; r < reps; ++r) {
    const auto mat = draw();
    u1s.push_back(compute_win_stats(mat).u1);
    predicted.push_back(asymptotic_covariance(estimate_xi(mat), m, n).sigma[0][0] /
                        static_cast<double>(m + n));
  }
  const double sd = winseq::testing::sample_sd(u1s);
  const double emp_var = sd * sd;
  const double mean_pred = winseq::testing::sample_mean(predicted);
  // Sampling error of a variance estimate from 4000 draws is about 2.2%.
  CHECK(mean_pred == doctest::Approx(emp_var).epsilon(0.08));
}
