// SPDX-FileCopyrightText: (c) 2026 The winseq authors
//
// SPDX-License-Identifier: Apache-2.0

#include "winseq/error.hpp"

namespace winseq {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::EmptyHierarchy: return "EmptyHierarchy";
    case ErrorCode::EmptyArm: return "EmptyArm";
    case ErrorCode::DegenerateSample: return "DegenerateSample";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
    case ErrorCode::DegenerateWinRatio: return "DegenerateWinRatio";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::InfeasibleSpend: return "InfeasibleSpend";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace winseq
