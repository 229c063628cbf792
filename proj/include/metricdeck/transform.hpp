// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "metricdeck/calendar.hpp"
#include "metricdeck/metrics.hpp"

namespace metricdeck {

enum class YMode { kZeroMax, kMinMax, kIndexedPercent };
enum class XMode { kAbsolute, kRelative };
enum class Axis { kY, kX };
enum class Provenance { kManual, kRecommended };
enum class SplitMode { kRetainBefore, kRetainAfter, kSplitIntoTwo };
enum class AnnotationKind { kHorizontalReference };

std::string_view y_mode_name(YMode m);
YMode parse_y_mode(std::string_view s);
std::string_view x_mode_name(XMode m);
XMode parse_x_mode(std::string_view s);
std::string_view provenance_name(Provenance p);
Provenance parse_provenance(std::string_view s);
std::string_view split_mode_name(SplitMode m);
SplitMode parse_split_mode(std::string_view s);
Axis parse_axis(std::string_view s);

struct AxisConfig {
  YMode y_mode = YMode::kZeroMax;
  XMode x_mode = XMode::kAbsolute;
  std::optional<std::string> coordinated_y_with;
  std::optional<std::string> coordinated_x_with;
  bool operator==(const AxisConfig&) const = default;
};

struct Annotation {
  std::string id;
  AnnotationKind kind = AnnotationKind::kHorizontalReference;
  double y_value = 0.0;
  std::optional<std::string> metric_id;
  // Date the annotation was placed at, if any. Anchored annotations follow the
  // sub-card containing the anchor on split; unanchored ones are copied.
  std::optional<Date> anchor;
  bool operator==(const Annotation&) const = default;
};

// Declarative line-chart card. An empty metric list is an unpopulated
// placeholder card.
struct VizCardSpec {
  std::string id;
  std::vector<std::string> metric_ids;
  Granularity granularity = Granularity::kMonth;
  std::optional<TimeInterval> time_filter;
  DimensionMap dim_filters;
  AxisConfig axis;
  std::vector<Annotation> annotations;
  std::vector<TimeInterval> obfuscations;
  Provenance provenance = Provenance::kManual;

  bool populated() const { return !metric_ids.empty(); }
  bool operator==(const VizCardSpec&) const = default;
};

// What a transform needs to know about a card's data, resolved from a catalog.
struct CardFacts {
  Granularity granularity = Granularity::kDay;  // effective (coarsest of card and natives)
  TimeInterval data_domain{Date{}, Date{}};     // hull of the metrics' data
  TimeInterval domain{Date{}, Date{}};          // data_domain narrowed by the time filter
  std::optional<std::string> unit;              // nullopt when units are mixed
  double max_abs = 0.0;                         // over the displayed values
};

Granularity effective_granularity(const VizCardSpec& card, const Catalog& catalog);
// Throws EmptyResult when the filter misses the data.
TimeInterval effective_domain(const VizCardSpec& card, const Catalog& catalog);
// Displayed series: dimension filters, effective granularity, sliced to the domain.
std::vector<Series> card_series(const VizCardSpec& card, const Catalog& catalog);
CardFacts card_facts(const VizCardSpec& card, const Catalog& catalog);
// Populated card whose metrics exist, whose dimension filters name known
// dimensions, and whose filter overlaps the data. Throws on the first problem.
void validate_viz_card(const VizCardSpec& card, const Catalog& catalog);

// Split point is snapped to the start of the card-granularity bucket holding
// it and must fall strictly after the domain start.
std::vector<VizCardSpec> split_at(const VizCardSpec& card, const CardFacts& facts,
                                  const Timestamp& split_point, SplitMode mode);

// Spans are snapped outward to whole buckets of the card granularity.
VizCardSpec retain_span(const VizCardSpec& card, const CardFacts& facts, const TimeInterval& span);
std::array<VizCardSpec, 2> exclude_span(const VizCardSpec& card, const CardFacts& facts,
                                        const TimeInterval& span);

Series index_percent(const Series& series);
CollatedFrame index_percent(const CollatedFrame& frame);

std::pair<double, double> y_domain(const AxisConfig& axis, const CollatedFrame& frame);

struct RelativePoint {
  std::int64_t offset = 0;
  double value = 0.0;
  bool operator==(const RelativePoint&) const = default;
};

struct RelativeSeries {
  std::string metric_id;
  Granularity granularity = Granularity::kDay;
  std::vector<RelativePoint> points;
};

RelativeSeries relativize_time(const Series& series);

// Adjacency is checked by the document layer; this validates units and
// rewrites the right card.
VizCardSpec coordinate_axes(const VizCardSpec& right, const CardFacts& right_facts,
                            const VizCardSpec& left, const CardFacts& left_facts, Axis axis);

enum class MergeReason { kOk, kNoOverlap, kIncomparableDomains };
std::string_view merge_reason_name(MergeReason r);

struct MergeVerdict {
  bool ok = false;
  MergeReason reason = MergeReason::kOk;
  std::string message;
};

inline constexpr double kDefaultComparabilityFactor = 10.0;

MergeVerdict can_merge(const VizCardSpec& a, const CardFacts& a_facts, const VizCardSpec& b,
                       const CardFacts& b_facts, double comparability_factor = kDefaultComparabilityFactor);

// Result has no id; the document layer assigns one when it replaces the pair.
VizCardSpec merge_cards(const VizCardSpec& a, const CardFacts& a_facts, const VizCardSpec& b,
                        const CardFacts& b_facts, double comparability_factor = kDefaultComparabilityFactor);

}  // namespace metricdeck
