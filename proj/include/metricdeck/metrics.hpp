// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "metricdeck/calendar.hpp"

namespace metricdeck {

enum class Aggregation { kSum, kMean, kLast };

std::string_view aggregation_name(Aggregation a);
Aggregation parse_aggregation(std::string_view name);

// Dimension name -> category value. Also used as an equality-filter predicate.
using DimensionMap = std::map<std::string, std::string>;

struct DataRow {
  Timestamp timestamp;
  DimensionMap dims;
  double value = 0.0;
};

struct Metric {
  std::string id;
  std::string name;
  std::string unit;
  Aggregation aggregation = Aggregation::kSum;
  std::string collection_id;
  std::vector<DataRow> rows;  // sorted by (timestamp, dims), pairs unique
};

struct MetricColumn {
  std::string column;
  std::string id;  // defaults to column
  std::string name;
  std::string unit;
  Aggregation aggregation = Aggregation::kSum;
};

// Collection metadata supplied alongside the raw data.
struct Manifest {
  std::string id;
  std::string name;
  Granularity granularity = Granularity::kDay;
  std::string temporal_attribute;
  std::vector<std::string> dimensions;
  std::vector<MetricColumn> metrics;
};

struct MetricCollection {
  std::string id;
  std::string name;
  Granularity native_granularity = Granularity::kDay;
  std::string temporal_attribute;
  std::vector<std::string> dimension_names;
  std::vector<Metric> metrics;

  const Metric* find(std::string_view metric_id) const;
  Manifest manifest() const;
};

struct SeriesPoint {
  Timestamp timestamp;
  double value = 0.0;
  bool operator==(const SeriesPoint&) const = default;
};

// Timestamps strictly increasing; absent buckets are gaps.
struct Series {
  std::string metric_id;
  Granularity granularity = Granularity::kDay;
  Aggregation aggregation = Aggregation::kSum;
  std::vector<SeriesPoint> points;

  bool empty() const { return points.empty(); }
  std::vector<double> values() const;
  // Hull of the buckets covered, or nullopt when empty.
  std::optional<TimeInterval> domain() const;
  bool operator==(const Series&) const = default;
};

struct FrameColumn {
  std::string metric_id;
  std::vector<std::optional<double>> values;  // aligned with the timeline; nullopt = gap
};

struct CollatedFrame {
  Granularity granularity = Granularity::kDay;
  std::vector<Timestamp> timeline;
  std::vector<FrameColumn> columns;
};

enum class InputFormat { kCsv, kJson };

// CSV: header row plus one record per timestamp (and dimension combination).
// JSON: an array of row objects keyed by column name, or an object with a
// "rows" member holding that array. Empty cells and nulls are treated as
// missing observations.
MetricCollection ingest_collection(std::string_view source, InputFormat format,
                                   const Manifest& manifest);

Metric filter_dimensions(const Metric& metric, const DimensionMap& predicate,
                         std::span<const std::string> dimension_names);

// Collapses dimensions and aggregates into buckets of `target`. Empty buckets
// are omitted.
Series to_series(const Metric& metric, Granularity target);

// Re-buckets an already aggregated series at a coarser granularity.
Series reaggregate(const Series& series, Granularity target);

Series slice_time_range(const Series& series, const TimeInterval& range);

CollatedFrame collate(std::span<const Series> series);

// Read-only index over a set of ingested collections. Metric ids are unique
// across the catalog.
class Catalog {
 public:
  Catalog() = default;
  explicit Catalog(std::vector<std::shared_ptr<const MetricCollection>> collections);

  // Replaces a collection with the same id. Throws MalformedInput when a metric
  // id collides with one in another collection.
  void add(std::shared_ptr<const MetricCollection> collection);

  const std::vector<std::shared_ptr<const MetricCollection>>& collections() const {
    return collections_;
  }
  const MetricCollection* find_collection(std::string_view id) const;
  const Metric* find_metric(std::string_view metric_id) const;
  const Metric& metric(std::string_view metric_id) const;  // throws UnknownTarget
  const MetricCollection& collection_of(std::string_view metric_id) const;
  // All metric ids, sorted.
  std::vector<std::string> metric_ids() const;

  // Full temporal domain of the metric's rows.
  TimeInterval domain(std::string_view metric_id) const;
  // Dimension-filtered and aggregated series. Predicate keys that the metric's
  // collection does not define are ignored.
  Series series(std::string_view metric_id, Granularity g,
                const DimensionMap& predicate = {}) const;

 private:
  std::vector<std::shared_ptr<const MetricCollection>> collections_;
};

}  // namespace metricdeck
