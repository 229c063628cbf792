// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#include "metricdeck/error.hpp"

namespace metricdeck {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedInput: return "MalformedInput";
    case ErrorCode::kUnknownColumn: return "UnknownColumn";
    case ErrorCode::kUnknownDimension: return "UnknownDimension";
    case ErrorCode::kGranularityTooFine: return "GranularityTooFine";
    case ErrorCode::kSplitOutOfDomain: return "SplitOutOfDomain";
    case ErrorCode::kEmptyResult: return "EmptyResult";
    case ErrorCode::kZeroBaseValue: return "ZeroBaseValue";
    case ErrorCode::kIncompatibleUnits: return "IncompatibleUnits";
    case ErrorCode::kNotAdjacent: return "NotAdjacent";
    case ErrorCode::kMergeRejected: return "MergeRejected";
    case ErrorCode::kTooShort: return "TooShort";
    case ErrorCode::kInsufficientOverlap: return "InsufficientOverlap";
    case ErrorCode::kConstantSeries: return "ConstantSeries";
    case ErrorCode::kZeroMean: return "ZeroMean";
    case ErrorCode::kUnknownTarget: return "UnknownTarget";
    case ErrorCode::kBadPosition: return "BadPosition";
    case ErrorCode::kEmptyIntersection: return "EmptyIntersection";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kSchemaViolation: return "SchemaViolation";
    case ErrorCode::kVersionMismatch: return "VersionMismatch";
    case ErrorCode::kVersionConflict: return "VersionConflict";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kBindFailure: return "BindFailure";
    case ErrorCode::kDataDirUnavailable: return "DataDirUnavailable";
  }
  return "Unknown";
}

}  // namespace metricdeck
