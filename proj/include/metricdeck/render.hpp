// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "metricdeck/document.hpp"
#include "metricdeck/metrics.hpp"
#include "metricdeck/transform.hpp"

namespace metricdeck {

struct SeriesLegend {
  std::string metric_id;
  std::string name;
  std::string unit;
};

// Everything a client needs to draw one VizCard.
struct RenderedFrame {
  std::string card_id;
  CollatedFrame frame;                  // values already transformed for y_mode
  std::vector<SeriesLegend> legend;     // parallel to frame.columns
  AxisConfig axis;
  std::pair<double, double> y_domain;
  std::string y_domain_source;          // card whose data produced y_domain
  TimeInterval x_domain{Date{}, Date{}};
  std::vector<std::int64_t> x_offsets;  // filled in Relative x mode
  std::vector<Annotation> annotations;
  std::vector<TimeInterval> obfuscations;
  bool filtered = false;                // the card shows a subset of its data
  Provenance provenance = Provenance::kManual;
};

// Applies dimension and time filters, granularity, axis modes and y-axis
// coordination. Coordination resolves against the current left card, so
// edits there show up on the next render.
RenderedFrame render_frame(const Canvas& canvas, std::string_view card_id, const Catalog& catalog);

// The y-domain a card displays with, after following coordination links.
std::pair<double, double> resolved_y_domain(const Canvas& canvas, const VizCardSpec& card,
                                            const Catalog& catalog);

nlohmann::json to_json(const RenderedFrame& frame);

}  // namespace metricdeck
