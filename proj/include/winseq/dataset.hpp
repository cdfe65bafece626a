// SPDX-FileCopyrightText: (c) 2026 The winseq authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "winseq/winloss.hpp"

namespace winseq {

struct TwoSampleDataset {
  std::vector<SubjectRecord> treatment;
  std::vector<SubjectRecord> control;

  std::size_t m() const noexcept { return treatment.size(); }
  std::size_t n() const noexcept { return control.size(); }
  std::size_t total() const noexcept { return m() + n(); }

  bool operator==(const TwoSampleDataset&) const = default;
};

// Splits by arm, keeping input order within each arm.
TwoSampleDataset make_dataset(std::vector<SubjectRecord> subjects);

// Row-major m x n grid of pair outcomes, row i = treatment subject i.
class ComparisonMatrix {
 public:
  ComparisonMatrix() = default;
  ComparisonMatrix(std::size_t rows, std::size_t cols);
  ComparisonMatrix(std::size_t rows, std::size_t cols,
                   std::vector<Outcome> cells);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return cells_.empty(); }

  Outcome at(std::size_t i, std::size_t j) const noexcept {
    return cells_[i * cols_ + j];
  }
  void set(std::size_t i, std::size_t j, Outcome o) noexcept {
    cells_[i * cols_ + j] = o;
  }
  std::span<const Outcome> row(std::size_t i) const noexcept {
    return {cells_.data() + i * cols_, cols_};
  }

  // Matrix of the same pairs seen from the control arm (transpose with
  // Win/Loss exchanged).
  ComparisonMatrix swapped_arms() const;

  bool operator==(const ComparisonMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Outcome> cells_;
};

ComparisonMatrix build_comparison_matrix(const TwoSampleDataset& data,
                                         const HierarchySpec& hierarchy);

// Restricts a matrix to the listed rows and columns, in the given order.
ComparisonMatrix submatrix(const ComparisonMatrix& full,
                           std::span<const std::size_t> rows,
                           std::span<const std::size_t> cols);

}  // namespace winseq
