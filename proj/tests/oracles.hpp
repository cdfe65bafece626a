// SPDX-FileCopyrightText: (c) 2026 The winseq authors
//
// SPDX-License-Identifier: Apache-2.0

// Test-only reference computations and random generators. Nothing here calls
// into the code paths it is used to check.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "winseq/dataset.hpp"
#include "winseq/ustat.hpp"

namespace winseq::testing {

inline int phi(Outcome o, int kernel) {
  return kernel == 0 ? (o == Outcome::Win) : (o == Outcome::Loss);
}

inline double brute_u(const ComparisonMatrix& x, int kernel) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) s += phi(x.at(i, j), kernel);
  return s / static_cast<double>(x.rows() * x.cols());
}

// Enumerates every (i, j, j' != j) triple for xi10 and (i, i' != i, j) for
// xi01, then subtracts U_u U_v.
inline XiEstimates brute_force_xi(const ComparisonMatrix& x) {
  const std::size_t m = x.rows(), n = x.cols();
  const double u[2] = {brute_u(x, 0), brute_u(x, 1)};
  XiEstimates out;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      long long s10 = 0, s01 = 0;
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t jj = 0; jj < n; ++jj)
            if (jj != j) s10 += phi(x.at(i, j), a) * phi(x.at(i, jj), b);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t ii = 0; ii < m; ++ii)
            if (ii != i) s01 += phi(x.at(i, j), a) * phi(x.at(ii, j), b);
      out.xi10[a][b] = static_cast<double>(s10) /
                           static_cast<double>(m * n * (n - 1)) - u[a] * u[b];
      out.xi01[a][b] = static_cast<double>(s01) /
                           static_cast<double>(n * m * (m - 1)) - u[a] * u[b];
    }
  }
  return out;
}

inline ComparisonMatrix random_matrix(std::mt19937_64& rng, std::size_t m,
                                      std::size_t n) {
  std::uniform_int_distribution<int> cell(-1, 1);
  std::vector<Outcome> cells(m * n);
  for (auto& c : cells) c = static_cast<Outcome>(cell(rng));
  return ComparisonMatrix(m, n, std::move(cells));
}

// Pairs compared through rounded latent scores, so subjects carry real
// effects and the kernel covariances are bounded away from zero.
inline ComparisonMatrix latent_matrix(std::mt19937_64& rng, std::size_t m,
                                      std::size_t n, double shift = 0.0) {
  std::normal_distribution<double> norm(0.0, 1.0);
  std::vector<double> x(m), y(n);
  for (auto& v : x) v = std::round(1.5 * norm(rng) + shift);
  for (auto& v : y) v = std::round(1.5 * norm(rng));
  std::vector<Outcome> cells(m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      cells[i * n + j] = x[i] > y[j]   ? Outcome::Win
                         : x[i] < y[j] ? Outcome::Loss
                                       : Outcome::Tie;
  return ComparisonMatrix(m, n, std::move(cells));
}

inline ComparisonMatrix matrix_from(
    std::initializer_list<std::initializer_list<Outcome>> rows) {
  const std::size_t m = rows.size();
  const std::size_t n = rows.begin()->size();
  std::vector<Outcome> cells;
  for (const auto& r : rows) cells.insert(cells.end(), r.begin(), r.end());
  return ComparisonMatrix(m, n, std::move(cells));
}

// A valid record with random events over a random follow-up.
inline SubjectRecord random_record(std::mt19937_64& rng, Arm arm,
                                   double horizon = 12.0) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SubjectRecord r;
  r.id = "R";
  r.arm = arm;
  r.followup_months = unit(rng) < 0.5 ? horizon : 0.5 + (horizon - 0.5) * unit(rng);
  // Coarse month grid so equal times (ties) actually occur.
  auto month = [&] { return std::floor(unit(rng) * r.followup_months) + 0.0; };
  if (unit(rng) < 0.2) r.amputation_month = month();
  const int tlrs = static_cast<int>(unit(rng) * 3.0);
  for (int k = 0; k < tlrs; ++k) {
    const double t = month();
    if (r.tlr_months.empty() || t > r.tlr_months.back()) r.tlr_months.push_back(t);
  }
  bool occluded = false;
  for (double v : {1.0, 6.0, 12.0}) {
    if (v > r.followup_months) break;
    occluded = occluded || unit(rng) < 0.3;
    r.occlusion_visits.push_back({v, occluded});
  }
  return r;
}

inline double sample_mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double sample_sd(const std::vector<double>& v) {
  const double m = sample_mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace winseq::testing
