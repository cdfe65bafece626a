// SPDX-FileCopyrightText: (c) 2026 The winseq authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <limits>
#include <string>
#include <string_view>

#include "winseq/boundaries.hpp"
#include "winseq/dataset.hpp"
#include "winseq/error.hpp"
#include "winseq/trial_sim.hpp"

namespace winseq {

// Parse failure with the 1-based line and column (field index) it refers to.
class CsvError : public Error {
 public:
  CsvError(ErrorCode code, std::size_t line, std::size_t column,
           std::string field, const std::string& what)
      : Error(code, what), line_(line), column_(column), field_(std::move(field)) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string field_;
};

// Subject CSV columns, in order.
inline constexpr std::string_view kSubjectCsvHeader =
    "subject_id,arm,enroll_month,followup_months,amputation_month,tlr_months,"
    "occlusion_visits";

/// Reads subject rows. `tlr_months` is a `;`-separated list of months and
/// `occlusion_visits` a `;`-separated list of `month:status` with status 0/1.
/// Row order is preserved within each arm.
TwoSampleDataset parse_subject_csv(
    const std::filesystem::path& path,
    double horizon = std::numeric_limits<double>::infinity());

TwoSampleDataset parse_subject_csv_text(
    std::string_view text,
    double horizon = std::numeric_limits<double>::infinity(),
    std::string_view source = "<memory>");

// Treatment rows first, then control; numbers in shortest round-trip form.
std::string format_subject_csv(const TwoSampleDataset& data);
void write_subject_csv(const TwoSampleDataset& data,
                       const std::filesystem::path& path);

struct DesignConfig {
  std::vector<double> fractions;
  SpendingSpec spending;
  GridOptions grid;
};

/// JSON design file, e.g.
/// {"alpha": 0.05, "sides": "two", "family": "hsd", "gamma": -3,
///  "fractions": [0.5, 0.75, 1.0]}
/// `family` is `hsd` (with `gamma`) or `power` (with `rho`). Optional `grid`
/// object: half_width, nodes, root_tolerance.
DesignConfig parse_design_config(std::string_view json_text);
DesignConfig load_design_config(const std::filesystem::path& path);

/// JSON simulation file mirroring TrialSimConfig field names; any field may
/// be omitted to keep its default.
TrialSimConfig parse_sim_config(std::string_view json_text);
TrialSimConfig load_sim_config(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace winseq
