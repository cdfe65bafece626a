// SPDX-FileCopyrightText: (c) 2026 The winseq authors
//
// SPDX-License-Identifier: Apache-2.0

#include "winseq/dataset.hpp"

#include "winseq/error.hpp"

namespace winseq {

TwoSampleDataset make_dataset(std::vector<SubjectRecord> subjects) {
  TwoSampleDataset data;
  for (auto& s : subjects) {
    (s.arm == Arm::Treatment ? data.treatment : data.control)
        .push_back(std::move(s));
  }
  return data;
}

ComparisonMatrix::ComparisonMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), cells_(rows * cols, Outcome::Tie) {}

ComparisonMatrix::ComparisonMatrix(std::size_t rows, std::size_t cols,
                                   std::vector<Outcome> cells)
    : rows_(rows), cols_(cols), cells_(std::move(cells)) {
  if (cells_.size() != rows * cols) {
    throw Error(ErrorCode::InvalidArgument,
                "matrix cell count does not match its shape");
  }
}

ComparisonMatrix ComparisonMatrix::swapped_arms() const {
  ComparisonMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out.set(j, i, reverse(at(i, j)));
  }
  return out;
}

ComparisonMatrix build_comparison_matrix(const TwoSampleDataset& data,
                                         const HierarchySpec& hierarchy) {
  if (data.m() == 0 || data.n() == 0) {
    throw Error(ErrorCode::EmptyArm,
                "both arms need at least one subject (m=" +
                    std::to_string(data.m()) +
                    ", n=" + std::to_string(data.n()) + ")");
  }
  for (const auto& r : data.treatment) validate_record(r);
  for (const auto& r : data.control) validate_record(r);

  ComparisonMatrix out(data.m(), data.n());
  for (std::size_t i = 0; i < data.m(); ++i) {
    for (std::size_t j = 0; j < data.n(); ++j) {
      out.set(i, j,
              compare_pair_unchecked(data.treatment[i], data.control[j],
                                     hierarchy)
                  .result);
    }
  }
  return out;
}

ComparisonMatrix submatrix(const ComparisonMatrix& full,
                           std::span<const std::size_t> rows,
                           std::span<const std::size_t> cols) {
  ComparisonMatrix out(rows.size(), cols.size());
  for (std::size_t a = 0; a < rows.size(); ++a) {
    const auto src = full.row(rows[a]);
    for (std::size_t b = 0; b < cols.size(); ++b) out.set(a, b, src[cols[b]]);
  }
  return out;
}

}  // namespace winseq
