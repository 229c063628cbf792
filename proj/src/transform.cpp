// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#include "metricdeck/transform.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "metricdeck/error.hpp"

namespace metricdeck {

std::string_view y_mode_name(YMode m) {
  switch (m) {
    case YMode::kZeroMax: return "ZeroMax";
    case YMode::kMinMax: return "MinMax";
    case YMode::kIndexedPercent: return "IndexedPercent";
  }
  return "ZeroMax";
}

YMode parse_y_mode(std::string_view s) {
  if (s == "ZeroMax") return YMode::kZeroMax;
  if (s == "MinMax") return YMode::kMinMax;
  if (s == "IndexedPercent") return YMode::kIndexedPercent;
  throw Error(ErrorCode::kMalformedInput, "unknown yMode '" + std::string(s) + "'");
}

std::string_view x_mode_name(XMode m) { return m == XMode::kAbsolute ? "Absolute" : "Relative"; }

XMode parse_x_mode(std::string_view s) {
  if (s == "Absolute") return XMode::kAbsolute;
  if (s == "Relative") return XMode::kRelative;
  throw Error(ErrorCode::kMalformedInput, "unknown xMode '" + std::string(s) + "'");
}

std::string_view provenance_name(Provenance p) {
  return p == Provenance::kManual ? "Manual" : "Recommended";
}

Provenance parse_provenance(std::string_view s) {
  if (s == "Manual") return Provenance::kManual;
  if (s == "Recommended") return Provenance::kRecommended;
  throw Error(ErrorCode::kMalformedInput, "unknown provenance '" + std::string(s) + "'");
}

std::string_view split_mode_name(SplitMode m) {
  switch (m) {
    case SplitMode::kRetainBefore: return "RetainBefore";
    case SplitMode::kRetainAfter: return "RetainAfter";
    case SplitMode::kSplitIntoTwo: return "SplitIntoTwo";
  }
  return "SplitIntoTwo";
}

SplitMode parse_split_mode(std::string_view s) {
  if (s == "RetainBefore") return SplitMode::kRetainBefore;
  if (s == "RetainAfter") return SplitMode::kRetainAfter;
  if (s == "SplitIntoTwo") return SplitMode::kSplitIntoTwo;
  throw Error(ErrorCode::kMalformedInput, "unknown split mode '" + std::string(s) + "'");
}

Axis parse_axis(std::string_view s) {
  if (s == "Y" || s == "y") return Axis::kY;
  if (s == "X" || s == "x") return Axis::kX;
  throw Error(ErrorCode::kMalformedInput, "unknown axis '" + std::string(s) + "'");
}

std::string_view merge_reason_name(MergeReason r) {
  switch (r) {
    case MergeReason::kOk: return "Ok";
    case MergeReason::kNoOverlap: return "NoOverlap";
    case MergeReason::kIncomparableDomains: return "IncomparableDomains";
  }
  return "Ok";
}

Granularity effective_granularity(const VizCardSpec& card, const Catalog& catalog) {
  Granularity g = card.granularity;
  for (const auto& id : card.metric_ids) {
    g = coarsest(g, catalog.collection_of(id).native_granularity);
  }
  return g;
}

namespace {

TimeInterval data_domain(const VizCardSpec& card, const Catalog& catalog, Granularity g) {
  if (!card.populated()) {
    throw Error(ErrorCode::kEmptyResult, "card '" + card.id + "' has no metrics");
  }
  std::optional<TimeInterval> hull;
  for (const auto& id : card.metric_ids) {
    TimeInterval d = catalog.domain(id);
    hull = hull ? hull->hull(d) : d;
  }
  return snap_outward(*hull, g);
}

// Keeps what survives inside `window`: obfuscations clipped, anchored
// annotations dropped when their anchor falls outside.
void clip_decorations(VizCardSpec& card, const TimeInterval& window) {
  std::vector<TimeInterval> masks;
  for (const auto& m : card.obfuscations) {
    if (auto clipped = m.intersect(window)) masks.push_back(*clipped);
  }
  card.obfuscations = std::move(masks);
  std::erase_if(card.annotations,
                [&](const Annotation& a) { return a.anchor && !window.contains(*a.anchor); });
}

VizCardSpec narrowed(const VizCardSpec& card, const TimeInterval& window) {
  VizCardSpec out = card;
  out.time_filter = window;
  clip_decorations(out, window);
  return out;
}

}  // namespace

TimeInterval effective_domain(const VizCardSpec& card, const Catalog& catalog) {
  TimeInterval data = data_domain(card, catalog, effective_granularity(card, catalog));
  if (!card.time_filter) return data;
  auto d = card.time_filter->intersect(data);
  if (!d) {
    throw Error(ErrorCode::kEmptyResult,
                "time filter of card '" + card.id + "' misses the data domain " + data.to_string());
  }
  return *d;
}

std::vector<Series> card_series(const VizCardSpec& card, const Catalog& catalog) {
  Granularity g = effective_granularity(card, catalog);
  TimeInterval domain = effective_domain(card, catalog);
  std::vector<Series> out;
  out.reserve(card.metric_ids.size());
  for (const auto& id : card.metric_ids) {
    out.push_back(slice_time_range(catalog.series(id, g, card.dim_filters), domain));
  }
  return out;
}

CardFacts card_facts(const VizCardSpec& card, const Catalog& catalog) {
  CardFacts f;
  f.granularity = effective_granularity(card, catalog);
  f.data_domain = data_domain(card, catalog, f.granularity);
  f.domain = effective_domain(card, catalog);
  f.unit = catalog.metric(card.metric_ids.front()).unit;
  for (const auto& id : card.metric_ids) {
    if (catalog.metric(id).unit != *f.unit) {
      f.unit.reset();
      break;
    }
  }
  for (const auto& s : card_series(card, catalog)) {
    for (const auto& p : s.points) f.max_abs = std::max(f.max_abs, std::abs(p.value));
  }
  return f;
}

void validate_viz_card(const VizCardSpec& card, const Catalog& catalog) {
  if (!card.populated()) {
    throw Error(ErrorCode::kEmptyResult, "card '" + card.id + "' has no metrics");
  }
  for (const auto& id : card.metric_ids) catalog.metric(id);
  for (const auto& [key, value] : card.dim_filters) {
    bool known = false;
    for (const auto& id : card.metric_ids) {
      const auto& dims = catalog.collection_of(id).dimension_names;
      known = known || std::find(dims.begin(), dims.end(), key) != dims.end();
    }
    if (!known) throw Error(ErrorCode::kUnknownDimension, "unknown dimension '" + key + "'");
  }
  effective_domain(card, catalog);
}

std::vector<VizCardSpec> split_at(const VizCardSpec& card, const CardFacts& facts,
                                  const Timestamp& split_point, SplitMode mode) {
  Date boundary = Timestamp::containing(split_point.first_day(), facts.granularity).first_day();
  if (boundary <= facts.domain.start() || boundary > facts.domain.end()) {
    throw Error(ErrorCode::kSplitOutOfDomain, "split point " + split_point.to_string() +
                                                  " is not strictly inside " +
                                                  facts.domain.to_string());
  }
  TimeInterval before(facts.domain.start(), boundary.plus_days(-1));
  TimeInterval after(boundary, facts.domain.end());
  switch (mode) {
    case SplitMode::kRetainBefore: return {narrowed(card, before)};
    case SplitMode::kRetainAfter: return {narrowed(card, after)};
    case SplitMode::kSplitIntoTwo: {
      VizCardSpec second = narrowed(card, after);
      second.id.clear();
      return {narrowed(card, before), std::move(second)};
    }
  }
  return {};
}

VizCardSpec retain_span(const VizCardSpec& card, const CardFacts& facts, const TimeInterval& span) {
  auto window = snap_outward(span, facts.granularity).intersect(facts.domain);
  if (!window) {
    throw Error(ErrorCode::kEmptyResult,
                "span " + span.to_string() + " misses card domain " + facts.domain.to_string());
  }
  return narrowed(card, *window);
}

std::array<VizCardSpec, 2> exclude_span(const VizCardSpec& card, const CardFacts& facts,
                                        const TimeInterval& span) {
  TimeInterval snapped = snap_outward(span, facts.granularity);
  if (snapped.start() <= facts.domain.start() || snapped.end() >= facts.domain.end()) {
    throw Error(ErrorCode::kEmptyResult, "excluding " + span.to_string() +
                                             " leaves no data on one side of " +
                                             facts.domain.to_string());
  }
  VizCardSpec after =
      narrowed(card, TimeInterval(snapped.end().plus_days(1), facts.domain.end()));
  after.id.clear();
  return {narrowed(card, TimeInterval(facts.domain.start(), snapped.start().plus_days(-1))),
          std::move(after)};
}

Series index_percent(const Series& series) {
  Series out = series;
  if (out.points.empty()) return out;
  double base = out.points.front().value;
  if (base == 0.0) {
    throw Error(ErrorCode::kZeroBaseValue,
                "series '" + series.metric_id + "' starts at 0 and cannot be indexed");
  }
  for (auto& p : out.points) p.value = 100.0 * (p.value - base) / base;
  return out;
}

CollatedFrame index_percent(const CollatedFrame& frame) {
  CollatedFrame out = frame;
  for (auto& col : out.columns) {
    auto first = std::find_if(col.values.begin(), col.values.end(),
                              [](const auto& v) { return v.has_value(); });
    if (first == col.values.end()) continue;
    double base = **first;
    if (base == 0.0) {
      throw Error(ErrorCode::kZeroBaseValue,
                  "series '" + col.metric_id + "' starts at 0 and cannot be indexed");
    }
    for (auto& v : col.values) {
      if (v) v = 100.0 * (*v - base) / base;
    }
  }
  return out;
}

std::pair<double, double> y_domain(const AxisConfig& axis, const CollatedFrame& frame) {
  CollatedFrame indexed;
  const CollatedFrame* f = &frame;
  if (axis.y_mode == YMode::kIndexedPercent) {
    indexed = index_percent(frame);
    f = &indexed;
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& col : f->columns) {
    for (const auto& v : col.values) {
      if (!v) continue;
      lo = std::min(lo, *v);
      hi = std::max(hi, *v);
    }
  }
  if (lo > hi) throw Error(ErrorCode::kEmptyResult, "frame holds no values");
  if (axis.y_mode == YMode::kZeroMax) return {std::min(0.0, lo), std::max(0.0, hi)};
  return {lo, hi};
}

RelativeSeries relativize_time(const Series& series) {
  if (series.points.empty()) {
    throw Error(ErrorCode::kEmptyResult, "cannot relativize an empty series");
  }
  RelativeSeries out;
  out.metric_id = series.metric_id;
  out.granularity = series.granularity;
  std::int64_t origin = series.points.front().timestamp.ordinal();
  for (const auto& p : series.points) {
    out.points.push_back({p.timestamp.ordinal() - origin, p.value});
  }
  return out;
}

VizCardSpec coordinate_axes(const VizCardSpec& right, const CardFacts& right_facts,
                            const VizCardSpec& left, const CardFacts& left_facts, Axis axis) {
  VizCardSpec out = right;
  if (axis == Axis::kY) {
    bool both_indexed = right.axis.y_mode == YMode::kIndexedPercent &&
                        left.axis.y_mode == YMode::kIndexedPercent;
    bool same_unit = right_facts.unit && left_facts.unit && *right_facts.unit == *left_facts.unit;
    bool one_indexed = (right.axis.y_mode == YMode::kIndexedPercent) !=
                       (left.axis.y_mode == YMode::kIndexedPercent);
    if (!both_indexed && (!same_unit || one_indexed)) {
      throw Error(ErrorCode::kIncompatibleUnits,
                  "cannot share a y-domain between '" + left.id + "' (" +
                      left_facts.unit.value_or("mixed units") + ") and '" + right.id + "' (" +
                      right_facts.unit.value_or("mixed units") + ")");
    }
    out.axis.coordinated_y_with = left.id;
    return out;
  }

  TimeInterval window = left_facts.domain;
  if (right.axis.x_mode == XMode::kRelative) {
    Timestamp ls = Timestamp::containing(left_facts.domain.start(), left_facts.granularity);
    Timestamp le = Timestamp::containing(left_facts.domain.end(), left_facts.granularity);
    std::int64_t span = le.ordinal() - ls.ordinal();
    Timestamp rs = Timestamp::containing(right_facts.domain.start(), left_facts.granularity);
    window = snap_outward(TimeInterval(right_facts.domain.start(), rs.advanced(span).last_day()),
                          right_facts.granularity);
  }
  auto clipped = window.intersect(right_facts.data_domain);
  if (!clipped) {
    throw Error(ErrorCode::kEmptyResult, "left card's range " + window.to_string() +
                                             " has no data for card '" + right.id + "'");
  }
  out.time_filter = *clipped;
  clip_decorations(out, *clipped);
  out.axis.coordinated_x_with = left.id;
  return out;
}

MergeVerdict can_merge(const VizCardSpec& a, const CardFacts& a_facts, const VizCardSpec& b,
                       const CardFacts& b_facts, double comparability_factor) {
  Granularity common = coarsest(a_facts.granularity, b_facts.granularity);
  if (!snap_outward(a_facts.domain, common).intersects(snap_outward(b_facts.domain, common))) {
    return {false, MergeReason::kNoOverlap,
            "the cards share no time span: " + a_facts.domain.to_string() + " vs " +
                b_facts.domain.to_string()};
  }
  if (a_facts.unit && b_facts.unit && *a_facts.unit == *b_facts.unit) {
    return {true, MergeReason::kOk, ""};
  }
  if (a.axis.y_mode == YMode::kIndexedPercent && b.axis.y_mode == YMode::kIndexedPercent) {
    return {true, MergeReason::kOk, ""};
  }
  double hi = std::max(a_facts.max_abs, b_facts.max_abs);
  double lo = std::min(a_facts.max_abs, b_facts.max_abs);
  double ratio = hi == 0.0 ? 1.0 : (lo == 0.0 ? std::numeric_limits<double>::infinity() : hi / lo);
  if (ratio <= comparability_factor) return {true, MergeReason::kOk, ""};
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "value magnitudes differ by a factor of %.3g (limit %.3g) and units differ", ratio,
                comparability_factor);
  return {false, MergeReason::kIncomparableDomains, buf};
}

VizCardSpec merge_cards(const VizCardSpec& a, const CardFacts& a_facts, const VizCardSpec& b,
                        const CardFacts& b_facts, double comparability_factor) {
  MergeVerdict verdict = can_merge(a, a_facts, b, b_facts, comparability_factor);
  if (!verdict.ok) {
    throw Error(ErrorCode::kMergeRejected,
                std::string(merge_reason_name(verdict.reason)) + ": " + verdict.message);
  }
  Granularity common = coarsest(a_facts.granularity, b_facts.granularity);
  std::optional<TimeInterval> overlap = a_facts.domain.intersect(b_facts.domain);
  if (!overlap) {
    // Only reachable when the spans meet inside one coarse bucket.
    overlap = snap_outward(a_facts.domain, common).intersect(snap_outward(b_facts.domain, common));
  }

  VizCardSpec out;
  out.granularity = coarsest(common, coarsest(a.granularity, b.granularity));
  out.metric_ids = a.metric_ids;
  for (const auto& id : b.metric_ids) {
    if (std::find(out.metric_ids.begin(), out.metric_ids.end(), id) == out.metric_ids.end()) {
      out.metric_ids.push_back(id);
    }
  }
  out.time_filter = *overlap;
  out.dim_filters = a.dim_filters;
  out.dim_filters.insert(b.dim_filters.begin(), b.dim_filters.end());
  if (a.axis.y_mode == b.axis.y_mode) out.axis.y_mode = a.axis.y_mode;
  if (a.axis.x_mode == b.axis.x_mode) out.axis.x_mode = a.axis.x_mode;
  out.annotations = a.annotations;
  for (Annotation ann : b.annotations) {
    auto clash = [&](const Annotation& x) { return x.id == ann.id; };
    while (std::any_of(out.annotations.begin(), out.annotations.end(), clash)) ann.id += "-b";
    out.annotations.push_back(std::move(ann));
  }
  out.obfuscations = a.obfuscations;
  out.obfuscations.insert(out.obfuscations.end(), b.obfuscations.begin(), b.obfuscations.end());
  clip_decorations(out, *overlap);
  out.provenance = Provenance::kManual;
  return out;
}

}  // namespace metricdeck
