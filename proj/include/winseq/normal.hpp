// SPDX-FileCopyrightText: (c) 2026 The winseq authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace winseq {

double normal_pdf(double x) noexcept;
double normal_cdf(double x) noexcept;
// Upper tail 1 - Phi(x), accurate far into the tail.
double normal_sf(double x) noexcept;
// Inverse of normal_cdf on (0, 1).
double normal_quantile(double p);
// P(|Z| >= |z|).
double two_sided_p(double z) noexcept;

}  // namespace winseq
