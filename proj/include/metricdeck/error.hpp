// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace metricdeck {

enum class ErrorCode {
  kMalformedInput,
  kUnknownColumn,
  kUnknownDimension,
  kGranularityTooFine,
  kSplitOutOfDomain,
  kEmptyResult,
  kZeroBaseValue,
  kIncompatibleUnits,
  kNotAdjacent,
  kMergeRejected,
  kTooShort,
  kInsufficientOverlap,
  kConstantSeries,
  kZeroMean,
  kUnknownTarget,
  kBadPosition,
  kEmptyIntersection,
  kIndexOutOfRange,
  kSchemaViolation,
  kVersionMismatch,
  kVersionConflict,
  kInvalidConfig,
  kBindFailure,
  kDataDirUnavailable,
};

// Stable machine-readable name, e.g. "SplitOutOfDomain".
std::string_view error_code_name(ErrorCode code);

// Every failure in the library surfaces as this exception. `details` carries
// per-row diagnostics for ingestion failures and is empty otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::vector<std::string> details = {})
      : std::runtime_error(message), code_(code), details_(std::move(details)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::string>& details() const noexcept { return details_; }

 private:
  ErrorCode code_;
  std::vector<std::string> details_;
};

}  // namespace metricdeck
