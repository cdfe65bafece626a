// SPDX-FileCopyrightText: (c) 2026 The winseq authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace winseq {

enum class ErrorCode {
  InvalidArgument = 1,
  MalformedRecord,
  EmptyHierarchy,
  EmptyArm,
  DegenerateSample,
  ZeroVariance,
  DegenerateWinRatio,
  DomainError,
  InfeasibleSpend,
  ConvergenceFailure,
  ConfigError,
  InsufficientData,
  ParseError,
  DuplicateId,
  InvariantViolation,
  IoError,
};

const char* error_code_name(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so the
// C layer can map it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace winseq
