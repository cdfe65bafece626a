// SPDX-FileCopyrightText: (c) 2026 The winseq authors
//
// SPDX-License-Identifier: Apache-2.0

#include "winseq/ustat.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "winseq/error.hpp"
#include "winseq/normal.hpp"

namespace winseq {

namespace {

void require_nonempty(const ComparisonMatrix& matrix) {
  if (matrix.rows() == 0 || matrix.cols() == 0) {
    throw Error(ErrorCode::EmptyArm, "comparison matrix is empty");
  }
}

double critical_value(double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw Error(ErrorCode::DomainError, "confidence level must be in (0, 1)");
  }
  return normal_quantile(0.5 + 0.5 * level);
}

TestResult wald(double estimate, double variance, double level) {
  if (!(variance > kVarianceFloor)) {
    throw Error(ErrorCode::ZeroVariance,
                "estimated variance " + std::to_string(variance) +
                    " is not positive");
  }
  TestResult t;
  t.confidence_level = level;
  t.estimate = estimate;
  t.std_error = std::sqrt(variance);
  t.z = estimate / t.std_error;
  t.p_two_sided = two_sided_p(t.z);
  const double half = critical_value(level) * t.std_error;
  t.ci_low = estimate - half;
  t.ci_high = estimate + half;
  t.information = 1.0 / variance;
  return t;
}

}  // namespace

double WinStatistics::win_ratio() const noexcept {
  if (losses == 0) {
    return wins == 0 ? std::numeric_limits<double>::quiet_NaN()
                     : std::numeric_limits<double>::infinity();
  }
  return static_cast<double>(wins) / static_cast<double>(losses);
}

WinStatistics compute_win_stats(const ComparisonMatrix& matrix) {
  require_nonempty(matrix);
  WinStatistics s;
  s.m = matrix.rows();
  s.n = matrix.cols();
  for (std::size_t i = 0; i < s.m; ++i) {
    for (Outcome o : matrix.row(i)) {
      if (o == Outcome::Win) {
        ++s.wins;
      } else if (o == Outcome::Loss) {
        ++s.losses;
      }
    }
  }
  const std::uint64_t pairs = static_cast<std::uint64_t>(s.m) * s.n;
  s.ties = pairs - s.wins - s.losses;
  s.u1 = static_cast<double>(s.wins) / static_cast<double>(pairs);
  s.u2 = static_cast<double>(s.losses) / static_cast<double>(pairs);
  return s;
}

XiEstimates estimate_xi(const ComparisonMatrix& matrix) {
  const std::size_t m = matrix.rows();
  const std::size_t n = matrix.cols();
  if (m < 2 || n < 2) {
    throw Error(ErrorCode::DegenerateSample,
                "xi estimation needs at least two subjects per arm (m=" +
                    std::to_string(m) + ", n=" + std::to_string(n) + ")");
  }

  // Win/loss counts per row and per column. For indicator kernels
  // sum_j phi_u phi_v equals R^u when u == v and 0 otherwise.
  std::vector<std::int64_t> col_win(n, 0), col_loss(n, 0);
  std::int64_t total_win = 0, total_loss = 0;
  std::int64_t row_ww = 0, row_ll = 0, row_wl = 0;
  for (std::size_t i = 0; i < m; ++i) {
    std::int64_t rw = 0, rl = 0;
    const auto row = matrix.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (row[j] == Outcome::Win) {
        ++rw;
        ++col_win[j];
      } else if (row[j] == Outcome::Loss) {
        ++rl;
        ++col_loss[j];
      }
    }
    total_win += rw;
    total_loss += rl;
    row_ww += rw * rw;
    row_ll += rl * rl;
    row_wl += rw * rl;
  }
  std::int64_t col_ww = 0, col_ll = 0, col_wl = 0;
  for (std::size_t j = 0; j < n; ++j) {
    col_ww += col_win[j] * col_win[j];
    col_ll += col_loss[j] * col_loss[j];
    col_wl += col_win[j] * col_loss[j];
  }

  const double md = static_cast<double>(m);
  const double nd = static_cast<double>(n);
  const double pairs = md * nd;
  const double u[2] = {static_cast<double>(total_win) / pairs,
                       static_cast<double>(total_loss) / pairs};
  const double row_denom = pairs * (nd - 1.0);
  const double col_denom = pairs * (md - 1.0);

  const std::int64_t row_num[2][2] = {{row_ww - total_win, row_wl},
                                      {row_wl, row_ll - total_loss}};
  const std::int64_t col_num[2][2] = {{col_ww - total_win, col_wl},
                                      {col_wl, col_ll - total_loss}};
  XiEstimates xi;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      xi.xi10[a][b] = static_cast<double>(row_num[a][b]) / row_denom - u[a] * u[b];
      xi.xi01[a][b] = static_cast<double>(col_num[a][b]) / col_denom - u[a] * u[b];
    }
  }
  return xi;
}

AsymptoticCovariance asymptotic_covariance(const XiEstimates& xi,
                                           std::size_t m, std::size_t n) {
  if (m == 0 || n == 0) {
    throw Error(ErrorCode::EmptyArm, "covariance needs m >= 1 and n >= 1");
  }
  const double N = static_cast<double>(m + n);
  const double wm = N / static_cast<double>(m);
  const double wn = N / static_cast<double>(n);
  AsymptoticCovariance cov;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      cov.sigma[a][b] = wm * xi.xi10[a][b] + wn * xi.xi01[a][b];
    }
  }
  const double off = 0.5 * (cov.sigma[0][1] + cov.sigma[1][0]);
  cov.sigma[0][1] = off;
  cov.sigma[1][0] = off;
  return cov;
}

TestResult win_difference_test(const WinStatistics& stats,
                               const AsymptoticCovariance& cov, std::size_t N,
                               double confidence_level) {
  if (N == 0) throw Error(ErrorCode::InvalidArgument, "N must be positive");
  const auto& s = cov.sigma;
  const double variance =
      (s[0][0] + s[1][1] - 2.0 * s[0][1]) / static_cast<double>(N);
  return wald(stats.u1 - stats.u2, variance, confidence_level);
}

TestResult log_win_ratio_test(const WinStatistics& stats,
                              const AsymptoticCovariance& cov, std::size_t N,
                              double confidence_level) {
  if (N == 0) throw Error(ErrorCode::InvalidArgument, "N must be positive");
  if (!(stats.u1 > 0.0) || !(stats.u2 > 0.0)) {
    throw Error(ErrorCode::DegenerateWinRatio,
                "log win ratio undefined with W=" + std::to_string(stats.wins) +
                    ", L=" + std::to_string(stats.losses));
  }
  const auto& s = cov.sigma;
  const double t1 = stats.tau1_hat();
  const double t2 = stats.tau2_hat();
  const double variance =
      (s[0][0] / (t1 * t1) + s[1][1] / (t2 * t2) - 2.0 * s[0][1] / (t1 * t2)) /
      static_cast<double>(N);
  TestResult t = wald(std::log(t1 / t2), variance, confidence_level);
  t.ci_low = std::exp(t.ci_low);
  t.ci_high = std::exp(t.ci_high);
  return t;
}

}  // namespace winseq
