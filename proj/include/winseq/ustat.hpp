// SPDX-FileCopyrightText: (c) 2026 The winseq authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "winseq/dataset.hpp"

namespace winseq {

// Index 0 is the win kernel phi1 (treatment wins), index 1 the loss kernel
// phi2 (treatment loses).
using Matrix2 = std::array<std::array<double, 2>, 2>;

struct WinStatistics {
  std::size_t m = 0;
  std::size_t n = 0;
  std::uint64_t wins = 0;
  std::uint64_t losses = 0;
  std::uint64_t ties = 0;
  double u1 = 0.0;
  double u2 = 0.0;

  double tau1_hat() const noexcept { return u1; }
  double tau2_hat() const noexcept { return u2; }
  double win_difference() const noexcept { return u1 - u2; }
  // W / L; infinite when there are no losses, NaN when there are neither.
  double win_ratio() const noexcept;

  bool operator==(const WinStatistics&) const = default;
};

struct XiEstimates {
  // xi10[u][v]: covariance of kernels u and v sharing a treatment subject.
  Matrix2 xi10{};
  // xi01[u][v]: covariance of kernels u and v sharing a control subject.
  Matrix2 xi01{};
};

struct AsymptoticCovariance {
  // Covariance of sqrt(N) * (U1, U2).
  Matrix2 sigma{};
};

struct TestResult {
  double estimate = 0.0;
  double std_error = 0.0;
  double z = 0.0;
  double p_two_sided = 1.0;
  // For the log win ratio test these are on the ratio scale.
  double ci_low = 0.0;
  double ci_high = 0.0;
  double information = 0.0;
  double confidence_level = 0.95;
};

WinStatistics compute_win_stats(const ComparisonMatrix& matrix);

/// Plug-in estimates of the one-shared-subject kernel covariances.
///
/// Row sums R_i^u over control subjects give
///   xi10^{uv} = sum_i (R_i^u R_i^v - sum_j phi_u phi_v) / (m n (n-1)) - U_u U_v
/// and column sums give xi01 symmetrically. Runs in O(m n).
/// Requires m >= 2 and n >= 2 (DegenerateSample otherwise).
XiEstimates estimate_xi(const ComparisonMatrix& matrix);

/// sigma_uv = (N/m) xi10^{uv} + (N/n) xi01^{uv}, off-diagonals averaged.
AsymptoticCovariance asymptotic_covariance(const XiEstimates& xi,
                                           std::size_t m, std::size_t n);

/// Wald test of U1 - U2 = 0 with SE sqrt((s11 + s22 - 2 s12) / N).
TestResult win_difference_test(const WinStatistics& stats,
                               const AsymptoticCovariance& cov, std::size_t N,
                               double confidence_level = 0.95);

/// Wald test of log(U1/U2) = 0. Delta-method variance with plug-in tau:
///   (s11/U1^2 + s22/U2^2 - 2 s12/(U1 U2)) / N.
TestResult log_win_ratio_test(const WinStatistics& stats,
                              const AsymptoticCovariance& cov, std::size_t N,
                              double confidence_level = 0.95);

// Variances at or below this are reported as ZeroVariance.
inline constexpr double kVarianceFloor = 1e-12;

}  // namespace winseq
