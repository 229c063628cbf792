// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "metricdeck/calendar.hpp"
#include "metricdeck/metrics.hpp"

namespace metricdeck {

// Smoothed z-score detector settings. Defaults are the values tuned for
// day, month and year metrics alike.
struct ExtremaParams {
  std::size_t lag = 5;     // moving-window length, >= 2
  double threshold = 3.5;  // signal distance in standard deviations, > 0
  double influence = 0.5;  // weight of a signalling point in the window, [0, 1]

  // Throws InvalidConfig.
  void validate() const;
  bool operator==(const ExtremaParams&) const = default;
};

enum class ExtremumKind { kPeak, kValley };
std::string_view extremum_kind_name(ExtremumKind k);

struct ExtremumSignal {
  std::size_t index = 0;
  ExtremumKind kind = ExtremumKind::kPeak;
  double zscore = 0.0;  // (v - mean) / stddev of the preceding window
  bool operator==(const ExtremumSignal& o) const { return index == o.index && kind == o.kind; }
};

struct ExtremumSpan {
  TimeInterval interval;
  ExtremumKind kind;
  double salience;  // max |z| over the span's signals
};

// Window statistics use the population standard deviation over the last
// `lag` filtered values, floored at 1e-9 * max(1, |mean|). A signalling point
// enters the window as influence * v + (1 - influence) * previous filtered.
// Throws TooShort when values.size() < lag + 1.
std::vector<ExtremumSignal> detect_extrema(std::span<const double> values,
                                           const ExtremaParams& params = {});

// Contiguous same-kind signals form one span, padded by `lag` buckets on each
// side and clipped to the series domain. Overlapping spans of one kind are
// fused. Sorted by salience, highest first.
std::vector<ExtremumSpan> extremum_spans(const Series& series, const ExtremaParams& params = {});

// Sample Pearson coefficient. Throws InsufficientOverlap below 3 pairs and
// ConstantSeries when either side has zero variance.
double pearson_r(std::span<const double> a, std::span<const double> b);

// Pairs are matched by timestamp after bringing both to the coarser
// granularity; unmatched points are dropped.
double pearson_r(const Series& a, const Series& b);

// Population standard deviation over |mean|. Throws TooShort or ZeroMean.
double coefficient_of_variation(std::span<const double> values);

}  // namespace metricdeck
