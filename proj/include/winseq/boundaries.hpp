// SPDX-FileCopyrightText: (c) 2026 The winseq authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace winseq {

enum class SpendingFamily { HwangShihDeCani, Power };
enum class Sides { OneSided, TwoSided };

struct SpendingSpec {
  SpendingFamily family = SpendingFamily::HwangShihDeCani;
  // gamma for Hwang-Shih-DeCani, rho for the power family.
  double parameter = -3.0;
  double alpha = 0.05;
  Sides sides = Sides::TwoSided;

  static SpendingSpec hwang_shih_decani(double gamma, double alpha,
                                        Sides sides = Sides::TwoSided);
  static SpendingSpec power(double rho, double alpha,
                            Sides sides = Sides::TwoSided);

  // Throws InvalidArgument on gamma == 0, rho <= 0 or alpha outside (0, 1).
  void validate() const;
  std::string describe() const;
};

// Cumulative alpha spent by information fraction t in [0, 1].
double spending_value(const SpendingSpec& spec, double t);

struct GridOptions {
  // Integration range in standard deviations around the mean of the process.
  double half_width = 8.0;
  // Simpson intervals per look (even).
  int nodes = 512;
  // Target accuracy of each solved stagewise crossing probability.
  double root_tolerance = 1e-8;
};

struct GroupSequentialDesign {
  std::vector<double> fractions;
  SpendingSpec spending;
  GridOptions grid;
  std::vector<double> z_bounds;
  std::vector<double> nominal_p;
  std::vector<double> cumulative_spend;

  std::size_t looks() const noexcept { return fractions.size(); }
};

/// Efficacy boundaries for looks at `fractions` (strictly increasing, last
/// equal to 1). Each z-bound is chosen so the null probability of first
/// crossing at that look equals the incremental spend, with
/// corr(Z_j, Z_k) = sqrt(t_j / t_k). Two-sided designs reject on |Z| >= z.
GroupSequentialDesign solve_boundaries(std::vector<double> fractions,
                                       const SpendingSpec& spec,
                                       const GridOptions& grid = {});

/// Stagewise first-crossing probabilities when E[Z_k] = drift * sqrt(t_k).
std::vector<double> crossing_probability(const GroupSequentialDesign& design,
                                         double drift);

// Checks the structural invariants of a design (e.g. one loaded from disk).
void validate_design(const GroupSequentialDesign& design);

}  // namespace winseq
