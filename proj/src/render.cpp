// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#include "metricdeck/render.hpp"

#include <set>

#include "metricdeck/error.hpp"
#include "metricdeck/json_codec.hpp"

namespace metricdeck {

namespace {

CollatedFrame raw_frame(const VizCardSpec& card, const Catalog& catalog) {
  validate_viz_card(card, catalog);
  std::vector<Series> series = card_series(card, catalog);
  return collate(series);
}

// Follows coordinatedYWith links; a dangling or cyclic link falls back to the
// card's own data.
const VizCardSpec& y_source(const Canvas& canvas, const VizCardSpec& card) {
  const VizCardSpec* current = &card;
  std::set<std::string> visited{card.id};
  while (current->axis.coordinated_y_with) {
    auto loc = locate_card(canvas, *current->axis.coordinated_y_with);
    if (!loc) break;
    const auto* next = std::get_if<VizCardSpec>(&canvas.scenes[loc->scene].cards[loc->index]);
    if (!next || !next->populated() || !visited.insert(next->id).second) break;
    current = next;
  }
  return *current;
}

}  // namespace

std::pair<double, double> resolved_y_domain(const Canvas& canvas, const VizCardSpec& card,
                                            const Catalog& catalog) {
  const VizCardSpec& source = y_source(canvas, card);
  return y_domain(source.axis, raw_frame(source, catalog));
}

RenderedFrame render_frame(const Canvas& canvas, std::string_view card_id, const Catalog& catalog) {
  const VizCardSpec& card = get_viz_card(canvas, card_id);
  RenderedFrame out;
  out.card_id = card.id;
  out.axis = card.axis;
  out.annotations = card.annotations;
  out.obfuscations = card.obfuscations;
  out.provenance = card.provenance;
  out.filtered = card.time_filter.has_value() || !card.dim_filters.empty();

  CollatedFrame frame = raw_frame(card, catalog);
  out.frame = card.axis.y_mode == YMode::kIndexedPercent ? index_percent(frame) : frame;
  const VizCardSpec& source = y_source(canvas, card);
  out.y_domain_source = source.id;
  out.y_domain = &source == &card ? y_domain(card.axis, frame)
                                  : y_domain(source.axis, raw_frame(source, catalog));
  out.x_domain = effective_domain(card, catalog);
  if (card.axis.x_mode == XMode::kRelative && !out.frame.timeline.empty()) {
    const std::int64_t origin = out.frame.timeline.front().ordinal();
    for (const auto& t : out.frame.timeline) out.x_offsets.push_back(t.ordinal() - origin);
  }
  for (const auto& id : card.metric_ids) {
    const Metric& m = catalog.metric(id);
    out.legend.push_back({m.id, m.name, m.unit});
  }
  return out;
}

nlohmann::json to_json(const RenderedFrame& f) {
  using codec::Json;
  Json legend = Json::array();
  for (const auto& l : f.legend) {
    legend.push_back({{"metricId", l.metric_id}, {"name", l.name}, {"unit", l.unit}});
  }
  Json annotations = Json::array();
  for (const auto& a : f.annotations) annotations.push_back(codec::to_json(a));
  Json masks = Json::array();
  for (const auto& m : f.obfuscations) masks.push_back(codec::to_json(m));
  Json j = {{"cardId", f.card_id},
            {"frame", codec::to_json(f.frame)},
            {"legend", legend},
            {"axis", codec::to_json(f.axis)},
            {"yDomain", {f.y_domain.first, f.y_domain.second}},
            {"yDomainSource", f.y_domain_source},
            {"xDomain", codec::to_json(f.x_domain)},
            {"annotations", annotations},
            {"obfuscations", masks},
            {"filtered", f.filtered},
            {"provenance", provenance_name(f.provenance)}};
  if (f.axis.x_mode == XMode::kRelative) j["xOffsets"] = f.x_offsets;
  return j;
}

}  // namespace metricdeck
