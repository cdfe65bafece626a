// SPDX-FileCopyrightText: (c) 2026 The winseq authors
//
// SPDX-License-Identifier: Apache-2.0

#include "winseq/normal.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/distributions/normal.hpp>

#include "winseq/error.hpp"

namespace winseq {

double normal_pdf(double x) noexcept {
  return std::exp(-0.5 * x * x) * (std::numbers::inv_sqrtpi / std::numbers::sqrt2);
}

double normal_cdf(double x) noexcept {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double normal_sf(double x) noexcept {
  return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorCode::DomainError, "normal quantile needs p in (0, 1)");
  }
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

double two_sided_p(double z) noexcept {
  return std::erfc(std::fabs(z) / std::numbers::sqrt2);
}

}  // namespace winseq
