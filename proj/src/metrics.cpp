// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#include "metricdeck/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include <json.hpp>

#include "metricdeck/csv.hpp"
#include "metricdeck/error.hpp"

namespace metricdeck {

std::string_view aggregation_name(Aggregation a) {
  switch (a) {
    case Aggregation::kSum: return "Sum";
    case Aggregation::kMean: return "Mean";
    case Aggregation::kLast: return "Last";
  }
  return "Sum";
}

Aggregation parse_aggregation(std::string_view name) {
  if (name == "Sum" || name == "sum") return Aggregation::kSum;
  if (name == "Mean" || name == "mean") return Aggregation::kMean;
  if (name == "Last" || name == "last") return Aggregation::kLast;
  throw Error(ErrorCode::kMalformedInput, "unknown aggregation '" + std::string(name) + "'");
}

const Metric* MetricCollection::find(std::string_view metric_id) const {
  for (const auto& m : metrics) {
    if (m.id == metric_id) return &m;
  }
  return nullptr;
}

Manifest MetricCollection::manifest() const {
  Manifest m;
  m.id = id;
  m.name = name;
  m.granularity = native_granularity;
  m.temporal_attribute = temporal_attribute;
  m.dimensions = dimension_names;
  for (const auto& metric : metrics) {
    m.metrics.push_back({metric.id, metric.id, metric.name, metric.unit, metric.aggregation});
  }
  return m;
}

std::vector<double> Series::values() const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.value);
  return out;
}

std::optional<TimeInterval> Series::domain() const {
  if (points.empty()) return std::nullopt;
  return TimeInterval(points.front().timestamp.first_day(), points.back().timestamp.last_day());
}

namespace {

std::optional<double> parse_number(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

void validate_manifest(const Manifest& manifest) {
  if (manifest.id.empty()) throw Error(ErrorCode::kMalformedInput, "manifest id is empty");
  if (manifest.temporal_attribute.empty()) {
    throw Error(ErrorCode::kMalformedInput, "manifest names no temporal attribute");
  }
  if (manifest.metrics.empty()) {
    throw Error(ErrorCode::kMalformedInput, "manifest declares no metric columns");
  }
  std::set<std::string> ids;
  for (const auto& m : manifest.metrics) {
    const std::string& id = m.id.empty() ? m.column : m.id;
    if (!ids.insert(id).second) {
      throw Error(ErrorCode::kMalformedInput, "duplicate metric id '" + id + "'");
    }
  }
}

class CollectionBuilder {
 public:
  explicit CollectionBuilder(const Manifest& manifest) : manifest_(manifest) {
    validate_manifest(manifest);
    collection_.id = manifest.id;
    collection_.name = manifest.name.empty() ? manifest.id : manifest.name;
    collection_.native_granularity = manifest.granularity;
    collection_.temporal_attribute = manifest.temporal_attribute;
    collection_.dimension_names = manifest.dimensions;
    for (const auto& col : manifest.metrics) {
      Metric m;
      m.id = col.id.empty() ? col.column : col.id;
      m.name = col.name.empty() ? m.id : col.name;
      m.unit = col.unit;
      m.aggregation = col.aggregation;
      m.collection_id = manifest.id;
      collection_.metrics.push_back(std::move(m));
    }
  }

  // nullopt (with a diagnostic recorded) when the timestamp is bad.
  std::optional<Timestamp> timestamp(std::size_t row, std::string_view text) {
    try {
      return Timestamp::parse(text, manifest_.granularity);
    } catch (const Error& e) {
      diagnose(row, "column '" + manifest_.temporal_attribute + "': " + e.what());
      return std::nullopt;
    }
  }

  void add(std::size_t metric_index, std::size_t row, const Timestamp& ts,
           const DimensionMap& dims, std::optional<std::string_view> text, double number) {
    double value = number;
    if (text) {
      auto parsed = parse_number(*text);
      if (!parsed) {
        diagnose(row, "value '" + std::string(*text) + "' in column '" +
                          manifest_.metrics[metric_index].column + "' is not a finite number");
        return;
      }
      value = *parsed;
    } else if (!std::isfinite(value)) {
      diagnose(row, "non-finite value in column '" + manifest_.metrics[metric_index].column + "'");
      return;
    }
    collection_.metrics[metric_index].rows.push_back({ts, dims, value});
    origin_[metric_index].push_back(row);
  }

  void diagnose(std::size_t row, std::string message) {
    diagnostics_.push_back("row " + std::to_string(row) + ": " + std::move(message));
  }

  MetricCollection finish() {
    for (std::size_t i = 0; i < collection_.metrics.size(); ++i) {
      auto& rows = collection_.metrics[i].rows;
      auto& origin = origin_[i];
      std::vector<std::size_t> order(rows.size());
      for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
      auto key_less = [&](std::size_t a, std::size_t b) {
        if (rows[a].timestamp != rows[b].timestamp) return rows[a].timestamp < rows[b].timestamp;
        if (rows[a].dims != rows[b].dims) return rows[a].dims < rows[b].dims;
        return origin[a] < origin[b];
      };
      std::stable_sort(order.begin(), order.end(), key_less);
      std::vector<DataRow> sorted;
      sorted.reserve(rows.size());
      for (std::size_t k = 0; k < order.size(); ++k) {
        const auto& r = rows[order[k]];
        if (!sorted.empty() && sorted.back().timestamp == r.timestamp &&
            sorted.back().dims == r.dims) {
          diagnose(origin[order[k]], "duplicate (timestamp, dims) " + r.timestamp.to_string() +
                                         " for metric '" + collection_.metrics[i].id + "'");
          continue;
        }
        sorted.push_back(r);
      }
      rows = std::move(sorted);
    }
    if (!diagnostics_.empty()) {
      std::stable_sort(diagnostics_.begin(), diagnostics_.end(),
                       [](const std::string& a, const std::string& b) {
                         return row_of(a) < row_of(b);
                       });
      throw Error(ErrorCode::kMalformedInput, diagnostics_.front(), diagnostics_);
    }
    return std::move(collection_);
  }

 private:
  static std::size_t row_of(const std::string& diag) {
    std::size_t v = 0;
    std::from_chars(diag.data() + 4, diag.data() + diag.size(), v);
    return v;
  }

  const Manifest& manifest_;
  MetricCollection collection_;
  std::map<std::size_t, std::vector<std::size_t>> origin_;
  std::vector<std::string> diagnostics_;
};

std::size_t column_index(const std::vector<std::string>& header, const std::string& name) {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) {
    throw Error(ErrorCode::kUnknownColumn, "manifest references absent column '" + name + "'");
  }
  return static_cast<std::size_t>(it - header.begin());
}

MetricCollection ingest_csv(std::string_view source, const Manifest& manifest) {
  auto records = csv::read(source);
  if (records.empty()) throw Error(ErrorCode::kMalformedInput, "input has no header row");
  const auto& header = records.front().fields;

  CollectionBuilder builder(manifest);
  std::size_t time_col = column_index(header, manifest.temporal_attribute);
  std::vector<std::size_t> dim_cols;
  for (const auto& d : manifest.dimensions) dim_cols.push_back(column_index(header, d));
  std::vector<std::size_t> metric_cols;
  for (const auto& m : manifest.metrics) metric_cols.push_back(column_index(header, m.column));

  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != header.size()) {
      builder.diagnose(rec.line, "expected " + std::to_string(header.size()) + " fields, found " +
                                     std::to_string(rec.fields.size()));
      continue;
    }
    auto ts = builder.timestamp(rec.line, rec.fields[time_col]);
    if (!ts) continue;
    DimensionMap dims;
    for (std::size_t d = 0; d < dim_cols.size(); ++d) {
      dims[manifest.dimensions[d]] = rec.fields[dim_cols[d]];
    }
    for (std::size_t m = 0; m < metric_cols.size(); ++m) {
      const std::string& cell = rec.fields[metric_cols[m]];
      if (cell.empty()) continue;
      builder.add(m, rec.line, *ts, dims, std::string_view(cell), 0.0);
    }
  }
  return builder.finish();
}

MetricCollection ingest_json(std::string_view source, const Manifest& manifest) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(source);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedInput, std::string("invalid JSON: ") + e.what());
  }
  const nlohmann::json* rows = &doc;
  if (doc.is_object()) {
    if (!doc.contains("rows")) throw Error(ErrorCode::kMalformedInput, "JSON input lacks 'rows'");
    rows = &doc["rows"];
  }
  if (!rows->is_array()) throw Error(ErrorCode::kMalformedInput, "'rows' is not an array");

  CollectionBuilder builder(manifest);
  auto require_column = [&](const std::string& name) {
    for (const auto& row : *rows) {
      if (row.is_object() && row.contains(name)) return;
    }
    if (!rows->empty()) {
      throw Error(ErrorCode::kUnknownColumn, "manifest references absent column '" + name + "'");
    }
  };
  require_column(manifest.temporal_attribute);
  for (const auto& d : manifest.dimensions) require_column(d);
  for (const auto& m : manifest.metrics) require_column(m.column);

  std::size_t index = 0;
  for (const auto& row : *rows) {
    ++index;
    if (!row.is_object()) {
      builder.diagnose(index, "row is not an object");
      continue;
    }
    auto t = row.find(manifest.temporal_attribute);
    if (t == row.end() || !t->is_string()) {
      builder.diagnose(index, "missing or non-string '" + manifest.temporal_attribute + "'");
      continue;
    }
    auto ts = builder.timestamp(index, t->get_ref<const std::string&>());
    if (!ts) continue;
    DimensionMap dims;
    bool dims_ok = true;
    for (const auto& d : manifest.dimensions) {
      auto it = row.find(d);
      if (it == row.end() || !it->is_string()) {
        builder.diagnose(index, "missing or non-string dimension '" + d + "'");
        dims_ok = false;
        break;
      }
      dims[d] = it->get<std::string>();
    }
    if (!dims_ok) continue;
    for (std::size_t m = 0; m < manifest.metrics.size(); ++m) {
      auto it = row.find(manifest.metrics[m].column);
      if (it == row.end() || it->is_null()) continue;
      if (it->is_number()) {
        builder.add(m, index, *ts, dims, std::nullopt, it->get<double>());
      } else if (it->is_string()) {
        const auto& s = it->get_ref<const std::string&>();
        if (s.empty()) continue;
        builder.add(m, index, *ts, dims, std::string_view(s), 0.0);
      } else {
        builder.diagnose(index, "value in column '" + manifest.metrics[m].column +
                                    "' is not a number");
      }
    }
  }
  return builder.finish();
}

double aggregate(std::span<const double> values, Aggregation a) {
  double sum = 0.0;
  for (double v : values) sum += v;
  switch (a) {
    case Aggregation::kSum: return sum;
    case Aggregation::kMean: return sum / static_cast<double>(values.size());
    case Aggregation::kLast: return values.back();
  }
  return sum;
}

}  // namespace

MetricCollection ingest_collection(std::string_view source, InputFormat format,
                                   const Manifest& manifest) {
  return format == InputFormat::kCsv ? ingest_csv(source, manifest)
                                     : ingest_json(source, manifest);
}

Metric filter_dimensions(const Metric& metric, const DimensionMap& predicate,
                         std::span<const std::string> dimension_names) {
  for (const auto& [key, value] : predicate) {
    if (std::find(dimension_names.begin(), dimension_names.end(), key) == dimension_names.end()) {
      throw Error(ErrorCode::kUnknownDimension, "unknown dimension '" + key + "'");
    }
  }
  Metric out = metric;
  if (predicate.empty()) return out;
  std::erase_if(out.rows, [&](const DataRow& row) {
    for (const auto& [key, value] : predicate) {
      auto it = row.dims.find(key);
      if (it == row.dims.end() || it->second != value) return true;
    }
    return false;
  });
  return out;
}

Series to_series(const Metric& metric, Granularity target) {
  Series out;
  out.metric_id = metric.id;
  out.granularity = target;
  out.aggregation = metric.aggregation;
  if (metric.rows.empty()) return out;
  if (target < metric.rows.front().timestamp.granularity()) {
    throw Error(ErrorCode::kGranularityTooFine,
                "cannot disaggregate metric '" + metric.id + "' to " +
                    std::string(granularity_name(target)));
  }

  // Rows are sorted by timestamp, so each bucket is a contiguous run.
  std::vector<double> bucket;
  std::size_t i = 0;
  while (i < metric.rows.size()) {
    Timestamp key = metric.rows[i].timestamp.coarsen(target);
    bucket.clear();
    if (metric.aggregation == Aggregation::kLast) {
      // Dimensions at the latest native timestamp in the bucket are summed.
      Timestamp latest = metric.rows[i].timestamp;
      double at_latest = 0.0;
      for (; i < metric.rows.size() && metric.rows[i].timestamp.coarsen(target) == key; ++i) {
        if (metric.rows[i].timestamp != latest) {
          latest = metric.rows[i].timestamp;
          at_latest = 0.0;
        }
        at_latest += metric.rows[i].value;
      }
      out.points.push_back({key, at_latest});
      continue;
    }
    for (; i < metric.rows.size() && metric.rows[i].timestamp.coarsen(target) == key; ++i) {
      bucket.push_back(metric.rows[i].value);
    }
    out.points.push_back({key, aggregate(bucket, metric.aggregation)});
  }
  return out;
}

Series reaggregate(const Series& series, Granularity target) {
  if (target == series.granularity) return series;
  if (target < series.granularity) {
    throw Error(ErrorCode::kGranularityTooFine,
                "cannot disaggregate series '" + series.metric_id + "'");
  }
  Series out;
  out.metric_id = series.metric_id;
  out.granularity = target;
  out.aggregation = series.aggregation;
  std::vector<double> bucket;
  std::size_t i = 0;
  while (i < series.points.size()) {
    Timestamp key = series.points[i].timestamp.coarsen(target);
    bucket.clear();
    for (; i < series.points.size() && series.points[i].timestamp.coarsen(target) == key; ++i) {
      bucket.push_back(series.points[i].value);
    }
    out.points.push_back({key, aggregate(bucket, series.aggregation)});
  }
  return out;
}

Series slice_time_range(const Series& series, const TimeInterval& range) {
  Series out = series;
  std::erase_if(out.points,
                [&](const SeriesPoint& p) { return !p.timestamp.interval().intersects(range); });
  return out;
}

CollatedFrame collate(std::span<const Series> series) {
  CollatedFrame frame;
  if (series.empty()) return frame;
  Granularity common = series.front().granularity;
  for (const auto& s : series) common = coarsest(common, s.granularity);
  frame.granularity = common;

  std::vector<Series> aligned;
  aligned.reserve(series.size());
  std::set<Timestamp> union_timeline;
  for (const auto& s : series) {
    aligned.push_back(reaggregate(s, common));
    for (const auto& p : aligned.back().points) union_timeline.insert(p.timestamp);
  }
  frame.timeline.assign(union_timeline.begin(), union_timeline.end());

  for (const auto& s : aligned) {
    FrameColumn col;
    col.metric_id = s.metric_id;
    col.values.assign(frame.timeline.size(), std::nullopt);
    std::size_t slot = 0;
    for (const auto& p : s.points) {
      while (frame.timeline[slot] < p.timestamp) ++slot;
      col.values[slot] = p.value;
    }
    frame.columns.push_back(std::move(col));
  }
  return frame;
}

Catalog::Catalog(std::vector<std::shared_ptr<const MetricCollection>> collections) {
  for (auto& c : collections) add(std::move(c));
}

void Catalog::add(std::shared_ptr<const MetricCollection> collection) {
  for (const auto& existing : collections_) {
    if (existing->id == collection->id) continue;
    for (const auto& m : collection->metrics) {
      if (existing->find(m.id)) {
        throw Error(ErrorCode::kMalformedInput, "metric id '" + m.id +
                                                    "' already defined by collection '" +
                                                    existing->id + "'");
      }
    }
  }
  auto it = std::find_if(collections_.begin(), collections_.end(),
                         [&](const auto& c) { return c->id == collection->id; });
  if (it != collections_.end()) {
    *it = std::move(collection);
  } else {
    collections_.push_back(std::move(collection));
  }
}

const MetricCollection* Catalog::find_collection(std::string_view id) const {
  for (const auto& c : collections_) {
    if (c->id == id) return c.get();
  }
  return nullptr;
}

const Metric* Catalog::find_metric(std::string_view metric_id) const {
  for (const auto& c : collections_) {
    if (const Metric* m = c->find(metric_id)) return m;
  }
  return nullptr;
}

const Metric& Catalog::metric(std::string_view metric_id) const {
  const Metric* m = find_metric(metric_id);
  if (!m) throw Error(ErrorCode::kUnknownTarget, "unknown metric '" + std::string(metric_id) + "'");
  return *m;
}

const MetricCollection& Catalog::collection_of(std::string_view metric_id) const {
  for (const auto& c : collections_) {
    if (c->find(metric_id)) return *c;
  }
  throw Error(ErrorCode::kUnknownTarget, "unknown metric '" + std::string(metric_id) + "'");
}

std::vector<std::string> Catalog::metric_ids() const {
  std::vector<std::string> ids;
  for (const auto& c : collections_) {
    for (const auto& m : c->metrics) ids.push_back(m.id);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

TimeInterval Catalog::domain(std::string_view metric_id) const {
  const Metric& m = metric(metric_id);
  if (m.rows.empty()) {
    throw Error(ErrorCode::kEmptyResult, "metric '" + m.id + "' has no observations");
  }
  return {m.rows.front().timestamp.first_day(), m.rows.back().timestamp.last_day()};
}

Series Catalog::series(std::string_view metric_id, Granularity g,
                       const DimensionMap& predicate) const {
  const MetricCollection& c = collection_of(metric_id);
  const Metric& m = *c.find(metric_id);
  DimensionMap applicable;
  for (const auto& [k, v] : predicate) {
    if (std::find(c.dimension_names.begin(), c.dimension_names.end(), k) !=
        c.dimension_names.end()) {
      applicable.emplace(k, v);
    }
  }
  if (applicable.empty()) return to_series(m, g);
  return to_series(filter_dimensions(m, applicable, c.dimension_names), g);
}

}  // namespace metricdeck
