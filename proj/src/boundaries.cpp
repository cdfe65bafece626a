// SPDX-FileCopyrightText: (c) 2026 The winseq authors
//
// SPDX-License-Identifier: Apache-2.0

#include "winseq/boundaries.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "winseq/error.hpp"
#include "winseq/normal.hpp"

namespace winseq {

namespace {

void check_fractions(const std::vector<double>& fractions) {
  if (fractions.empty()) {
    throw Error(ErrorCode::InvalidArgument, "design needs at least one look");
  }
  for (std::size_t k = 0; k < fractions.size(); ++k) {
    const double t = fractions[k];
    if (!(t > 0.0 && t <= 1.0)) {
      throw Error(ErrorCode::InvalidArgument,
                  "information fractions must lie in (0, 1]");
    }
    if (k > 0 && !(t > fractions[k - 1])) {
      throw Error(ErrorCode::InvalidArgument,
                  "information fractions must be strictly increasing");
    }
  }
  if (fractions.back() != 1.0) {
    throw Error(ErrorCode::InvalidArgument,
                "the last information fraction must be 1");
  }
}

void check_grid(const GridOptions& g) {
  if (g.nodes < 2 || g.nodes % 2 != 0) {
    throw Error(ErrorCode::InvalidArgument,
                "grid nodes must be an even number >= 2");
  }
  if (!(g.half_width > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "grid half width must be positive");
  }
  if (!(g.root_tolerance > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "root tolerance must be positive");
  }
}

// Sub-density of the score process W(t) = Z sqrt(t) restricted to the
// continuation region of every look so far, stored at Simpson nodes with the
// quadrature weights already folded in.
class ContinuationDensity {
 public:
  explicit ContinuationDensity(const GridOptions& grid) : grid_(grid) {}

  // Probability of crossing at the next look (fraction t, boundary z) given
  // the current state; works before the first look as well.
  double exit_probability(double t, double z, bool two_sided,
                          double drift) const {
    const double b = z * std::sqrt(t);
    const double dt = t - t_;
    const double sd = std::sqrt(dt);
    if (first_) {
      const double mean = drift * t;
      double p = normal_sf((b - mean) / sd);
      if (two_sided) p += normal_cdf((-b - mean) / sd);
      return p;
    }
    double p = 0.0;
    for (std::size_t i = 0; i < x_.size(); ++i) {
      const double mean = x_[i] + drift * dt;
      double tail = normal_sf((b - mean) / sd);
      if (two_sided) tail += normal_cdf((-b - mean) / sd);
      p += wg_[i] * tail;
    }
    return p;
  }

  double mass() const {
    if (first_) return 1.0;
    double s = 0.0;
    for (double v : wg_) s += v;
    return s;
  }

  // Moves the density to look (t, z), keeping only non-crossed paths.
  void advance(double t, double z, bool two_sided, double drift) {
    const double b = z * std::sqrt(t);
    const double centre = drift * t;
    const double reach = grid_.half_width * std::sqrt(t);
    double hi = std::min(b, centre + reach);
    double lo = two_sided ? std::max(-b, centre - reach) : centre - reach;
    if (!(hi > lo)) {
      hi = lo = centre;
    }
    const int intervals = grid_.nodes;
    const double h = (hi - lo) / intervals;
    std::vector<double> x(intervals + 1), wg(intervals + 1);
    const double dt = t - t_;
    const double sd = std::sqrt(dt);
    for (int k = 0; k <= intervals; ++k) {
      x[k] = lo + h * k;
      const double simpson = (k == 0 || k == intervals) ? 1.0 : (k % 2 ? 4.0 : 2.0);
      double density = 0.0;
      if (first_) {
        density = normal_pdf((x[k] - drift * t) / sd) / sd;
      } else {
        for (std::size_t i = 0; i < x_.size(); ++i) {
          density += wg_[i] * normal_pdf((x[k] - x_[i] - drift * dt) / sd);
        }
        density /= sd;
      }
      wg[k] = density * simpson * h / 3.0;
    }
    x_ = std::move(x);
    wg_ = std::move(wg);
    t_ = t;
    first_ = false;
  }

 private:
  GridOptions grid_;
  bool first_ = true;
  double t_ = 0.0;
  std::vector<double> x_;
  std::vector<double> wg_;
};

double nominal_from_z(double z, Sides sides) {
  return sides == Sides::TwoSided ? two_sided_p(z) : normal_sf(z);
}

}  // namespace

SpendingSpec SpendingSpec::hwang_shih_decani(double gamma, double alpha,
                                             Sides sides) {
  SpendingSpec s{SpendingFamily::HwangShihDeCani, gamma, alpha, sides};
  s.validate();
  return s;
}

SpendingSpec SpendingSpec::power(double rho, double alpha, Sides sides) {
  SpendingSpec s{SpendingFamily::Power, rho, alpha, sides};
  s.validate();
  return s;
}

void SpendingSpec::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "alpha must lie in (0, 1)");
  }
  if (!std::isfinite(parameter)) {
    throw Error(ErrorCode::InvalidArgument, "spending parameter must be finite");
  }
  if (family == SpendingFamily::HwangShihDeCani && parameter == 0.0) {
    throw Error(ErrorCode::InvalidArgument,
                "Hwang-Shih-DeCani gamma must be nonzero");
  }
  if (family == SpendingFamily::Power && !(parameter > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "power family rho must be positive");
  }
}

std::string SpendingSpec::describe() const {
  std::ostringstream os;
  os << (family == SpendingFamily::HwangShihDeCani ? "HSD(gamma=" : "Power(rho=")
     << parameter << "), alpha=" << alpha
     << (sides == Sides::TwoSided ? " two-sided" : " one-sided");
  return os.str();
}

double spending_value(const SpendingSpec& spec, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(ErrorCode::DomainError,
                "spending function needs t in [0, 1], got " + std::to_string(t));
  }
  spec.validate();
  if (t == 0.0) return 0.0;
  if (t == 1.0) return spec.alpha;
  if (spec.family == SpendingFamily::HwangShihDeCani) {
    const double g = spec.parameter;
    return spec.alpha * std::expm1(-g * t) / std::expm1(-g);
  }
  return spec.alpha * std::pow(t, spec.parameter);
}

GroupSequentialDesign solve_boundaries(std::vector<double> fractions,
                                       const SpendingSpec& spec,
                                       const GridOptions& grid) {
  spec.validate();
  check_fractions(fractions);
  check_grid(grid);

  GroupSequentialDesign d;
  d.fractions = std::move(fractions);
  d.spending = spec;
  d.grid = grid;
  const bool two_sided = spec.sides == Sides::TwoSided;

  ContinuationDensity state(grid);
  double spent = 0.0;
  for (std::size_t k = 0; k < d.fractions.size(); ++k) {
    const double t = d.fractions[k];
    const double cumulative = spending_value(spec, t);
    const double target = cumulative - spent;
    const double remaining = state.mass();
    if (!(target > 0.0) || !(target < remaining)) {
      throw Error(ErrorCode::InfeasibleSpend,
                  "look " + std::to_string(k + 1) + " spends " +
                      std::to_string(target) + " with " +
                      std::to_string(remaining) + " probability remaining");
    }

    double z = 0.0;
    if (k == 0) {
      z = normal_quantile(1.0 - (two_sided ? 0.5 * target : target));
    } else {
      // Crossing probability decreases in z; bracket then bisect.
      double lo = 0.0, hi = 1.0;
      while (state.exit_probability(t, hi, two_sided, 0.0) > target) {
        hi *= 2.0;
        if (hi > 64.0) {
          throw Error(ErrorCode::ConvergenceFailure,
                      "could not bracket boundary at look " +
                          std::to_string(k + 1));
        }
      }
      bool converged = false;
      for (int it = 0; it < 200; ++it) {
        z = 0.5 * (lo + hi);
        const double diff = state.exit_probability(t, z, two_sided, 0.0) - target;
        if (std::fabs(diff) < grid.root_tolerance * 1e-2 || hi - lo < 1e-14) {
          converged = std::fabs(diff) < grid.root_tolerance;
          break;
        }
        (diff > 0.0 ? lo : hi) = z;
      }
      if (!converged) {
        throw Error(ErrorCode::ConvergenceFailure,
                    "boundary search did not converge at look " +
                        std::to_string(k + 1));
      }
    }
    d.z_bounds.push_back(z);
    d.nominal_p.push_back(nominal_from_z(z, spec.sides));
    d.cumulative_spend.push_back(cumulative);
    spent = cumulative;
    if (k + 1 < d.fractions.size()) state.advance(t, z, two_sided, 0.0);
  }
  return d;
}

std::vector<double> crossing_probability(const GroupSequentialDesign& design,
                                         double drift) {
  validate_design(design);
  const bool two_sided = design.spending.sides == Sides::TwoSided;
  ContinuationDensity state(design.grid);
  std::vector<double> out;
  out.reserve(design.looks());
  for (std::size_t k = 0; k < design.looks(); ++k) {
    const double t = design.fractions[k];
    const double z = design.z_bounds[k];
    out.push_back(state.exit_probability(t, z, two_sided, drift));
    if (k + 1 < design.looks()) state.advance(t, z, two_sided, drift);
  }
  return out;
}

void validate_design(const GroupSequentialDesign& d) {
  d.spending.validate();
  check_fractions(d.fractions);
  check_grid(d.grid);
  const std::size_t k = d.looks();
  if (d.z_bounds.size() != k || d.nominal_p.size() != k ||
      d.cumulative_spend.size() != k) {
    throw Error(ErrorCode::InvalidArgument,
                "design vectors must all have one entry per look");
  }
  for (double z : d.z_bounds) {
    if (!(z > 0.0) || !std::isfinite(z)) {
      throw Error(ErrorCode::InvalidArgument, "z bounds must be positive");
    }
  }
}

}  // namespace winseq
