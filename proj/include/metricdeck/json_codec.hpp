// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

// JSON wire and storage formats. Readers reject unknown members and map any
// structural problem to SchemaViolation. See docs/schema.md.

#include <string>
#include <string_view>

#include <json.hpp>

#include "metricdeck/analysis.hpp"
#include "metricdeck/document.hpp"
#include "metricdeck/metrics.hpp"
#include "metricdeck/timexpr.hpp"
#include "metricdeck/transform.hpp"

namespace metricdeck::codec {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const TimeInterval& v);
TimeInterval interval_from_json(const Json& j);

Json to_json(const Manifest& v);
Manifest manifest_from_json(const Json& j);

// Storage form: {"schemaVersion", "manifest", "rows"} where rows follow the
// JSON ingest contract, so a stored collection re-ingests losslessly.
Json to_json(const MetricCollection& v);
MetricCollection collection_from_json(const Json& j);
// Listing form: metadata and per-metric domains, no rows.
Json collection_summary(const MetricCollection& v);

Json to_json(const Series& v);
Json to_json(const CollatedFrame& v);

Json to_json(const Annotation& v);
Annotation annotation_from_json(const Json& j);
Json to_json(const AxisConfig& v);
AxisConfig axis_from_json(const Json& j);
Json to_json(const VizCardSpec& v);
// Missing members take their defaults, so request bodies may be partial.
VizCardSpec viz_card_from_json(const Json& j);

Json to_json(const TimeMention& v);
TimeMention mention_from_json(const Json& j);
Json to_json(const ParagraphLink& v);
ParagraphLink link_from_json(const Json& j);

Json to_json(const Card& v);
Card card_from_json(const Json& j);
Json to_json(const Canvas& v);
Canvas canvas_from_json(const Json& j);

Json to_json(const SceneSummary& v);
Json to_json(const MergeVerdict& v);
Json to_json(const ExtremumSignal& v);
Json to_json(const ExtremaParams& v);
ExtremaParams extrema_params_from_json(const Json& j);

// Canonical bytes: sorted keys, no insignificant whitespace.
std::string serialize(const Canvas& canvas);
// Throws SchemaViolation (malformed or truncated) or VersionMismatch.
Canvas deserialize(std::string_view bytes);

Json parse(std::string_view text);  // SchemaViolation on bad JSON

}  // namespace metricdeck::codec
