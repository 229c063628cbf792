// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#include "metricdeck/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "metricdeck/error.hpp"

namespace metricdeck {

void ExtremaParams::validate() const {
  if (lag < 2) throw Error(ErrorCode::kInvalidConfig, "lag must be at least 2");
  if (!(threshold > 0.0) || !std::isfinite(threshold)) {
    throw Error(ErrorCode::kInvalidConfig, "threshold must be positive");
  }
  if (!(influence >= 0.0 && influence <= 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "influence must lie in [0, 1]");
  }
}

std::string_view extremum_kind_name(ExtremumKind k) {
  return k == ExtremumKind::kPeak ? "Peak" : "Valley";
}

namespace {

// Moving window over the last `lag` filtered values. Statistics are summed
// oldest to newest.
class FilterWindow {
 public:
  explicit FilterWindow(std::span<const double> seed) : buf_(seed.begin(), seed.end()) {
    recompute();
  }

  double mean() const { return mean_; }
  double stddev() const { return sd_; }

  void push(double v) {
    buf_[head_] = v;
    head_ = (head_ + 1) % buf_.size();
    recompute();
  }

 private:
  void recompute() {
    const std::size_t n = buf_.size();
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) sum += buf_[(head_ + k) % n];
    mean_ = sum / static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      double d = buf_[(head_ + k) % n] - mean_;
      ss += d * d;
    }
    sd_ = std::sqrt(ss / static_cast<double>(n));
  }

  std::vector<double> buf_;
  std::size_t head_ = 0;
  double mean_ = 0.0;
  double sd_ = 0.0;
};

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

std::vector<ExtremumSignal> detect_extrema(std::span<const double> values,
                                           const ExtremaParams& params) {
  params.validate();
  if (values.size() < params.lag + 1) {
    throw Error(ErrorCode::kTooShort, "need at least " + std::to_string(params.lag + 1) +
                                          " values, got " + std::to_string(values.size()));
  }
  FilterWindow window(values.first(params.lag));
  double previous = values[params.lag - 1];
  std::vector<ExtremumSignal> signals;
  for (std::size_t t = params.lag; t < values.size(); ++t) {
    const double v = values[t];
    const double mean = window.mean();
    const double sd = std::max(window.stddev(), 1e-9 * std::max(1.0, std::abs(mean)));
    double filtered = v;
    if (v > mean + params.threshold * sd) {
      signals.push_back({t, ExtremumKind::kPeak, (v - mean) / sd});
      filtered = params.influence * v + (1.0 - params.influence) * previous;
    } else if (v < mean - params.threshold * sd) {
      signals.push_back({t, ExtremumKind::kValley, (v - mean) / sd});
      filtered = params.influence * v + (1.0 - params.influence) * previous;
    }
    window.push(filtered);
    previous = filtered;
  }
  return signals;
}

std::vector<ExtremumSpan> extremum_spans(const Series& series, const ExtremaParams& params) {
  std::vector<double> values = series.values();
  std::vector<ExtremumSignal> signals = detect_extrema(values, params);
  if (signals.empty()) return {};
  const TimeInterval domain = *series.domain();
  const auto pad = static_cast<std::int64_t>(params.lag);

  std::vector<ExtremumSpan> spans;
  std::size_t i = 0;
  while (i < signals.size()) {
    std::size_t j = i;
    double salience = std::abs(signals[i].zscore);
    while (j + 1 < signals.size() && signals[j + 1].index == signals[j].index + 1 &&
           signals[j + 1].kind == signals[i].kind) {
      ++j;
      salience = std::max(salience, std::abs(signals[j].zscore));
    }
    Timestamp first = series.points[signals[i].index].timestamp.advanced(-pad);
    Timestamp last = series.points[signals[j].index].timestamp.advanced(pad);
    TimeInterval padded(std::max(first.first_day(), domain.start()),
                        std::min(last.last_day(), domain.end()));
    spans.push_back({padded, signals[i].kind, salience});
    i = j + 1;
  }

  // Fuse overlapping spans of the same kind.
  std::stable_sort(spans.begin(), spans.end(), [](const ExtremumSpan& a, const ExtremumSpan& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.interval.start() < b.interval.start();
  });
  std::vector<ExtremumSpan> fused;
  for (const auto& s : spans) {
    if (!fused.empty() && fused.back().kind == s.kind && fused.back().interval.intersects(s.interval)) {
      fused.back().interval = fused.back().interval.hull(s.interval);
      fused.back().salience = std::max(fused.back().salience, s.salience);
    } else {
      fused.push_back(s);
    }
  }
  std::stable_sort(fused.begin(), fused.end(), [](const ExtremumSpan& a, const ExtremumSpan& b) {
    if (a.salience != b.salience) return a.salience > b.salience;
    return a.interval.start() < b.interval.start();
  });
  return fused;
}

double pearson_r(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kMalformedInput, "pearson_r needs equal-length inputs");
  }
  if (a.size() < 3) {
    throw Error(ErrorCode::kInsufficientOverlap,
                "need at least 3 paired values, got " + std::to_string(a.size()));
  }
  const double ma = mean_of(a);
  const double mb = mean_of(b);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) {
    throw Error(ErrorCode::kConstantSeries, "correlation undefined for a constant series");
  }
  return std::clamp(sab / (std::sqrt(saa) * std::sqrt(sbb)), -1.0, 1.0);
}

double pearson_r(const Series& a, const Series& b) {
  Granularity g = coarsest(a.granularity, b.granularity);
  Series ra = reaggregate(a, g);
  Series rb = reaggregate(b, g);
  std::vector<double> xa, xb;
  std::size_t i = 0, j = 0;
  while (i < ra.points.size() && j < rb.points.size()) {
    if (ra.points[i].timestamp < rb.points[j].timestamp) {
      ++i;
    } else if (rb.points[j].timestamp < ra.points[i].timestamp) {
      ++j;
    } else {
      xa.push_back(ra.points[i++].value);
      xb.push_back(rb.points[j++].value);
    }
  }
  return pearson_r(xa, xb);
}

double coefficient_of_variation(std::span<const double> values) {
  if (values.size() < 2) {
    throw Error(ErrorCode::kTooShort, "coefficient of variation needs at least 2 values");
  }
  const double m = mean_of(values);
  if (m == 0.0) throw Error(ErrorCode::kZeroMean, "coefficient of variation undefined at mean 0");
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(values.size())) / std::abs(m);
}

}  // namespace metricdeck
