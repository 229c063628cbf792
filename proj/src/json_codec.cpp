// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#include "metricdeck/json_codec.hpp"

#include <initializer_list>
#include <map>
#include <set>

#include "metricdeck/error.hpp"

namespace metricdeck::codec {

namespace {

[[noreturn]] void violation(const std::string& what) {
  throw Error(ErrorCode::kSchemaViolation, what);
}

// Checked view over a JSON object with a fixed member set.
class Obj {
 public:
  Obj(const Json& j, std::string_view type, std::initializer_list<std::string_view> allowed)
      : j_(j), type_(type) {
    if (!j.is_object()) violation(std::string(type) + " must be an object");
    for (const auto& [key, _] : j.items()) {
      bool known = false;
      for (auto a : allowed) known = known || key == a;
      if (!known) violation("unknown member '" + key + "' in " + std::string(type));
    }
  }

  bool has(std::string_view key) const {
    auto it = j_.find(key);
    return it != j_.end() && !it->is_null();
  }

  const Json& at(std::string_view key) const {
    auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) {
      violation(std::string(type_) + " lacks '" + std::string(key) + "'");
    }
    return *it;
  }

  std::string str(std::string_view key) const {
    const Json& v = at(key);
    if (!v.is_string()) violation(field(key) + " must be a string");
    return v.get<std::string>();
  }
  std::string str_or(std::string_view key, std::string fallback) const {
    return has(key) ? str(key) : fallback;
  }
  double num(std::string_view key) const {
    const Json& v = at(key);
    if (!v.is_number()) violation(field(key) + " must be a number");
    return v.get<double>();
  }
  std::int64_t integer(std::string_view key) const {
    const Json& v = at(key);
    if (!v.is_number_integer()) violation(field(key) + " must be an integer");
    return v.get<std::int64_t>();
  }
  bool boolean(std::string_view key) const {
    const Json& v = at(key);
    if (!v.is_boolean()) violation(field(key) + " must be a boolean");
    return v.get<bool>();
  }
  const Json& array(std::string_view key) const {
    const Json& v = at(key);
    if (!v.is_array()) violation(field(key) + " must be an array");
    return v;
  }
  std::vector<std::string> strings(std::string_view key) const {
    std::vector<std::string> out;
    if (!has(key)) return out;
    for (const auto& s : array(key)) {
      if (!s.is_string()) violation(field(key) + " must hold strings");
      out.push_back(s.get<std::string>());
    }
    return out;
  }

 private:
  std::string field(std::string_view key) const {
    return std::string(type_) + "." + std::string(key);
  }
  const Json& j_;
  std::string_view type_;
};

// Vocabulary parsers throw MalformedInput; inside documents that is a schema problem.
template <typename Fn>
auto as_schema(Fn fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kMalformedInput) violation(e.what());
    throw;
  }
}

Date date_from(const std::string& s) {
  return as_schema([&] { return Date::parse(s); });
}

}  // namespace

Json parse(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    violation(std::string("invalid JSON: ") + e.what());
  }
}

Json to_json(const TimeInterval& v) {
  return {{"start", v.start().to_string()}, {"end", v.end().to_string()}};
}

TimeInterval interval_from_json(const Json& j) {
  Obj o(j, "TimeInterval", {"start", "end"});
  Date s = date_from(o.str("start"));
  Date e = date_from(o.str("end"));
  return as_schema([&] { return TimeInterval(s, e); });
}

Json to_json(const Manifest& v) {
  Json metrics = Json::array();
  for (const auto& m : v.metrics) {
    metrics.push_back({{"column", m.column},
                       {"id", m.id.empty() ? m.column : m.id},
                       {"name", m.name},
                       {"unit", m.unit},
                       {"aggregation", aggregation_name(m.aggregation)}});
  }
  return {{"id", v.id},
          {"name", v.name},
          {"granularity", granularity_name(v.granularity)},
          {"temporalAttribute", v.temporal_attribute},
          {"dimensions", v.dimensions},
          {"metrics", metrics}};
}

Manifest manifest_from_json(const Json& j) {
  Obj o(j, "Manifest",
        {"id", "name", "granularity", "temporalAttribute", "dimensions", "metrics", "format"});
  Manifest m;
  m.id = o.str("id");
  m.name = o.str_or("name", m.id);
  m.granularity = as_schema([&] { return parse_granularity(o.str("granularity")); });
  m.temporal_attribute = o.str("temporalAttribute");
  m.dimensions = o.strings("dimensions");
  for (const auto& mj : o.array("metrics")) {
    Obj mo(mj, "MetricColumn", {"column", "id", "name", "unit", "aggregation"});
    MetricColumn c;
    c.column = mo.str("column");
    c.id = mo.str_or("id", c.column);
    c.name = mo.str_or("name", c.id);
    c.unit = mo.str_or("unit", "");
    c.aggregation = as_schema([&] { return parse_aggregation(mo.str("aggregation")); });
    m.metrics.push_back(std::move(c));
  }
  return m;
}

Json to_json(const MetricCollection& v) {
  // One row object per (timestamp, dims) holding every metric observed there.
  std::map<std::pair<Timestamp, DimensionMap>, Json> rows;
  for (const auto& metric : v.metrics) {
    for (const auto& r : metric.rows) {
      Json& row = rows[{r.timestamp, r.dims}];
      if (row.is_null()) {
        row = Json::object();
        row[v.temporal_attribute] = r.timestamp.to_string();
        for (const auto& [k, val] : r.dims) row[k] = val;
      }
      row[metric.id] = r.value;
    }
  }
  Json arr = Json::array();
  for (auto& [_, row] : rows) arr.push_back(std::move(row));
  return {{"schemaVersion", kSchemaVersion}, {"manifest", to_json(v.manifest())}, {"rows", arr}};
}

MetricCollection collection_from_json(const Json& j) {
  Obj o(j, "MetricCollection", {"schemaVersion", "manifest", "rows"});
  if (o.integer("schemaVersion") != kSchemaVersion) {
    throw Error(ErrorCode::kVersionMismatch, "unsupported collection schemaVersion");
  }
  Manifest m = manifest_from_json(o.at("manifest"));
  Json body = {{"rows", o.array("rows")}};
  return ingest_collection(body.dump(), InputFormat::kJson, m);
}

Json collection_summary(const MetricCollection& v) {
  Json metrics = Json::array();
  for (const auto& m : v.metrics) {
    Json mj = {{"id", m.id},
               {"name", m.name},
               {"unit", m.unit},
               {"aggregation", aggregation_name(m.aggregation)},
               {"rows", m.rows.size()}};
    if (!m.rows.empty()) {
      mj["domain"] = to_json(TimeInterval(m.rows.front().timestamp.first_day(),
                                          m.rows.back().timestamp.last_day()));
    }
    metrics.push_back(std::move(mj));
  }
  return {{"id", v.id},
          {"name", v.name},
          {"granularity", granularity_name(v.native_granularity)},
          {"temporalAttribute", v.temporal_attribute},
          {"dimensions", v.dimension_names},
          {"metrics", metrics}};
}

Json to_json(const Series& v) {
  Json points = Json::array();
  for (const auto& p : v.points) points.push_back({p.timestamp.to_string(), p.value});
  return {{"metricId", v.metric_id},
          {"granularity", granularity_name(v.granularity)},
          {"points", points}};
}

Json to_json(const CollatedFrame& v) {
  Json timeline = Json::array();
  for (const auto& t : v.timeline) timeline.push_back(t.to_string());
  Json columns = Json::array();
  for (const auto& c : v.columns) {
    Json values = Json::array();
    for (const auto& x : c.values) values.push_back(x ? Json(*x) : Json(nullptr));
    columns.push_back({{"metricId", c.metric_id}, {"values", values}});
  }
  return {{"granularity", granularity_name(v.granularity)},
          {"timeline", timeline},
          {"columns", columns}};
}

Json to_json(const Annotation& v) {
  Json j = {{"id", v.id}, {"kind", "HorizontalReference"}, {"yValue", v.y_value}};
  if (v.metric_id) j["metricId"] = *v.metric_id;
  if (v.anchor) j["anchor"] = v.anchor->to_string();
  return j;
}

Annotation annotation_from_json(const Json& j) {
  Obj o(j, "Annotation", {"id", "kind", "yValue", "metricId", "anchor"});
  Annotation a;
  a.id = o.str_or("id", "");
  if (o.str_or("kind", "HorizontalReference") != "HorizontalReference") {
    violation("Annotation.kind must be HorizontalReference");
  }
  a.y_value = o.num("yValue");
  if (o.has("metricId")) a.metric_id = o.str("metricId");
  if (o.has("anchor")) a.anchor = date_from(o.str("anchor"));
  return a;
}

Json to_json(const AxisConfig& v) {
  Json j = {{"yMode", y_mode_name(v.y_mode)}, {"xMode", x_mode_name(v.x_mode)}};
  if (v.coordinated_y_with) j["coordinatedYWith"] = *v.coordinated_y_with;
  if (v.coordinated_x_with) j["coordinatedXWith"] = *v.coordinated_x_with;
  return j;
}

AxisConfig axis_from_json(const Json& j) {
  Obj o(j, "AxisConfig", {"yMode", "xMode", "coordinatedYWith", "coordinatedXWith"});
  AxisConfig a;
  if (o.has("yMode")) a.y_mode = as_schema([&] { return parse_y_mode(o.str("yMode")); });
  if (o.has("xMode")) a.x_mode = as_schema([&] { return parse_x_mode(o.str("xMode")); });
  if (o.has("coordinatedYWith")) a.coordinated_y_with = o.str("coordinatedYWith");
  if (o.has("coordinatedXWith")) a.coordinated_x_with = o.str("coordinatedXWith");
  return a;
}

Json to_json(const VizCardSpec& v) {
  Json annotations = Json::array();
  for (const auto& a : v.annotations) annotations.push_back(to_json(a));
  Json masks = Json::array();
  for (const auto& m : v.obfuscations) masks.push_back(to_json(m));
  Json j = {{"type", "viz"},
            {"id", v.id},
            {"metricIds", v.metric_ids},
            {"granularity", granularity_name(v.granularity)},
            {"dimFilters", v.dim_filters},
            {"axis", to_json(v.axis)},
            {"annotations", annotations},
            {"obfuscations", masks},
            {"provenance", provenance_name(v.provenance)}};
  if (v.time_filter) j["timeFilter"] = to_json(*v.time_filter);
  return j;
}

VizCardSpec viz_card_from_json(const Json& j) {
  Obj o(j, "VizCardSpec",
        {"type", "id", "metricIds", "granularity", "timeFilter", "dimFilters", "axis",
         "annotations", "obfuscations", "provenance"});
  if (o.has("type") && o.str("type") != "viz") violation("VizCardSpec.type must be 'viz'");
  VizCardSpec c;
  c.id = o.str_or("id", "");
  c.metric_ids = o.strings("metricIds");
  if (o.has("granularity")) {
    c.granularity = as_schema([&] { return parse_granularity(o.str("granularity")); });
  }
  if (o.has("timeFilter")) c.time_filter = interval_from_json(o.at("timeFilter"));
  if (o.has("dimFilters")) {
    const Json& d = o.at("dimFilters");
    if (!d.is_object()) violation("VizCardSpec.dimFilters must be an object");
    for (const auto& [k, val] : d.items()) {
      if (!val.is_string()) violation("dimension filter values must be strings");
      c.dim_filters[k] = val.get<std::string>();
    }
  }
  if (o.has("axis")) c.axis = axis_from_json(o.at("axis"));
  if (o.has("annotations")) {
    for (const auto& a : o.array("annotations")) c.annotations.push_back(annotation_from_json(a));
  }
  if (o.has("obfuscations")) {
    for (const auto& m : o.array("obfuscations")) c.obfuscations.push_back(interval_from_json(m));
  }
  if (o.has("provenance")) {
    c.provenance = as_schema([&] { return parse_provenance(o.str("provenance")); });
  }
  return c;
}

Json to_json(const TimeMention& v) {
  return {{"charStart", v.char_start},
          {"charEnd", v.char_end},
          {"interval", to_json(v.interval)},
          {"surface", v.surface}};
}

TimeMention mention_from_json(const Json& j) {
  Obj o(j, "TimeMention", {"charStart", "charEnd", "interval", "surface"});
  TimeMention m;
  auto start = o.integer("charStart");
  auto end = o.integer("charEnd");
  if (start < 0 || end < start) violation("TimeMention offsets out of order");
  m.char_start = static_cast<std::size_t>(start);
  m.char_end = static_cast<std::size_t>(end);
  m.interval = interval_from_json(o.at("interval"));
  m.surface = o.str("surface");
  return m;
}

Json to_json(const ParagraphLink& v) {
  Json mentions = Json::array();
  for (const auto& m : v.mentions) mentions.push_back(to_json(m));
  return {{"paragraphId", v.paragraph_id},
          {"targetCardId", v.target_card_id},
          {"referenceDate", v.reference_date.to_string()},
          {"mentions", mentions}};
}

ParagraphLink link_from_json(const Json& j) {
  Obj o(j, "ParagraphLink", {"paragraphId", "targetCardId", "referenceDate", "mentions"});
  ParagraphLink l;
  l.paragraph_id = o.str("paragraphId");
  l.target_card_id = o.str("targetCardId");
  l.reference_date = date_from(o.str("referenceDate"));
  for (const auto& m : o.array("mentions")) l.mentions.push_back(mention_from_json(m));
  return l;
}

Json to_json(const Card& v) {
  if (const auto* viz = std::get_if<VizCardSpec>(&v)) return to_json(*viz);
  const auto& t = std::get<TextCard>(v);
  Json paragraphs = Json::array();
  for (const auto& p : t.paragraphs) {
    Json pj = {{"id", p.id}, {"text", p.text}};
    if (p.link) pj["link"] = to_json(*p.link);
    paragraphs.push_back(std::move(pj));
  }
  return {{"type", "text"}, {"id", t.id}, {"paragraphs", paragraphs}};
}

Card card_from_json(const Json& j) {
  if (!j.is_object()) violation("card must be an object");
  auto type = j.find("type");
  if (type == j.end() || !type->is_string()) violation("card lacks 'type'");
  if (*type == "viz") return viz_card_from_json(j);
  if (*type != "text") violation("card.type must be 'viz' or 'text'");
  Obj o(j, "TextCard", {"type", "id", "paragraphs"});
  TextCard t;
  t.id = o.str_or("id", "");
  if (o.has("paragraphs")) {
    for (const auto& pj : o.array("paragraphs")) {
      Obj po(pj, "Paragraph", {"id", "text", "link"});
      Paragraph p;
      p.id = po.str_or("id", "");
      p.text = po.str_or("text", "");
      if (po.has("link")) p.link = link_from_json(po.at("link"));
      t.paragraphs.push_back(std::move(p));
    }
  }
  return t;
}

Json to_json(const Canvas& v) {
  Json scenes = Json::array();
  for (const auto& s : v.scenes) {
    Json cards = Json::array();
    for (const auto& c : s.cards) cards.push_back(to_json(c));
    scenes.push_back({{"id", s.id}, {"cards", cards}});
  }
  return {{"schemaVersion", kSchemaVersion},
          {"id", v.id},
          {"title", v.title},
          {"collectionIds", v.collection_ids},
          {"recommendationsEnabled", v.recommendations_enabled},
          {"version", v.version},
          {"nextId", v.next_id},
          {"scenes", scenes}};
}

Canvas canvas_from_json(const Json& j) {
  Obj o(j, "Canvas",
        {"schemaVersion", "id", "title", "collectionIds", "recommendationsEnabled", "version",
         "nextId", "scenes"});
  if (o.integer("schemaVersion") != kSchemaVersion) {
    throw Error(ErrorCode::kVersionMismatch,
                "canvas schemaVersion " + std::to_string(o.integer("schemaVersion")) +
                    " is not supported (expected " + std::to_string(kSchemaVersion) + ")");
  }
  Canvas c;
  c.id = o.str("id");
  c.title = o.str_or("title", "");
  c.collection_ids = o.strings("collectionIds");
  c.recommendations_enabled = o.has("recommendationsEnabled") ? o.boolean("recommendationsEnabled") : true;
  c.version = o.integer("version");
  c.next_id = o.integer("nextId");
  for (const auto& sj : o.array("scenes")) {
    Obj so(sj, "Scene", {"id", "cards"});
    Scene s;
    s.id = so.str("id");
    for (const auto& cj : so.array("cards")) s.cards.push_back(card_from_json(cj));
    c.scenes.push_back(std::move(s));
  }
  validate_ids(c);
  return c;
}

Json to_json(const SceneSummary& v) {
  Json j = {{"sceneId", v.scene_id}, {"metricIds", v.metric_ids}};
  j["coverage"] = v.coverage ? to_json(*v.coverage) : Json(nullptr);
  return j;
}

Json to_json(const MergeVerdict& v) {
  return {{"ok", v.ok}, {"reason", merge_reason_name(v.reason)}, {"message", v.message}};
}

Json to_json(const ExtremumSignal& v) {
  return {{"index", v.index}, {"kind", extremum_kind_name(v.kind)}, {"zscore", v.zscore}};
}

Json to_json(const ExtremaParams& v) {
  return {{"lag", v.lag}, {"threshold", v.threshold}, {"influence", v.influence}};
}

ExtremaParams extrema_params_from_json(const Json& j) {
  Obj o(j, "ExtremaParams", {"lag", "threshold", "influence"});
  ExtremaParams p;
  if (o.has("lag")) {
    auto lag = o.integer("lag");
    if (lag < 0) violation("ExtremaParams.lag must be positive");
    p.lag = static_cast<std::size_t>(lag);
  }
  if (o.has("threshold")) p.threshold = o.num("threshold");
  if (o.has("influence")) p.influence = o.num("influence");
  return p;
}

std::string serialize(const Canvas& canvas) { return to_json(canvas).dump(); }

Canvas deserialize(std::string_view bytes) { return canvas_from_json(parse(bytes)); }

}  // namespace metricdeck::codec
