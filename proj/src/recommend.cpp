// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#include "metricdeck/recommend.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "metricdeck/error.hpp"

namespace metricdeck {

std::string_view recommendation_kind_name(RecommendationKind k) {
  switch (k) {
    case RecommendationKind::kDrillDown: return "DrillDown";
    case RecommendationKind::kOverview: return "Overview";
    case RecommendationKind::kNewMetric: return "NewMetric";
    case RecommendationKind::kNewScene: return "NewScene";
    case RecommendationKind::kColdStart: return "ColdStart";
  }
  return "ColdStart";
}

namespace {

std::string span_label(const TimeInterval& t) {
  return month_year_label(t.start()) + "\xE2\x80\x93" + month_year_label(t.end());
}

std::string format_signed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%+.2f", v);
  return buf;
}

std::string format_fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

VizCardSpec recommended_card(std::vector<std::string> metrics, Granularity g,
                             std::optional<TimeInterval> filter, const DimensionMap& dims = {}) {
  VizCardSpec c;
  c.metric_ids = std::move(metrics);
  c.granularity = g;
  c.time_filter = filter;
  c.dim_filters = dims;
  c.provenance = Provenance::kRecommended;
  return c;
}

std::vector<const VizCardSpec*> populated_cards(const Scene& scene) {
  std::vector<const VizCardSpec*> out;
  for (const auto& card : scene.cards) {
    if (const auto* v = std::get_if<VizCardSpec>(&card); v && v->populated()) out.push_back(v);
  }
  return out;
}

std::vector<std::string> unused_metrics(const Canvas& canvas, const Catalog& catalog) {
  std::vector<std::string> used = metrics_on_canvas(canvas);
  std::vector<std::string> out;
  for (auto& id : catalog.metric_ids()) {
    if (!std::binary_search(used.begin(), used.end(), id)) out.push_back(std::move(id));
  }
  return out;
}

// Merges overlapping or touching intervals and returns their total length in days.
std::int64_t covered_days(std::vector<TimeInterval> spans) {
  std::sort(spans.begin(), spans.end(),
            [](const TimeInterval& a, const TimeInterval& b) { return a.start() < b.start(); });
  std::int64_t total = 0;
  std::optional<TimeInterval> run;
  for (const auto& s : spans) {
    if (run && s.start() <= run->end().plus_days(1)) {
      run = run->hull(s);
    } else {
      if (run) total += run->days();
      run = s;
    }
  }
  if (run) total += run->days();
  return total;
}

}  // namespace

std::vector<Recommendation> drill_down(const Scene& scene, const Catalog& catalog,
                                       const ExtremaParams& params) {
  std::vector<Recommendation> out;
  std::set<std::pair<std::string, std::pair<std::int32_t, std::int32_t>>> seen;
  for (const VizCardSpec* card : populated_cards(scene)) {
    const std::string& primary = card->metric_ids.front();
    VizCardSpec single = *card;
    single.metric_ids = {primary};
    Series series;
    std::optional<TimeInterval> domain;
    try {
      domain = effective_domain(single, catalog);
      series = card_series(single, catalog).front();
    } catch (const Error&) {
      continue;
    }
    if (series.points.size() < params.lag + 1) continue;
    for (const auto& span : extremum_spans(series, params)) {
      if (span.interval == *domain) continue;
      auto key = std::make_pair(primary, std::make_pair(span.interval.start().serial(),
                                                        span.interval.end().serial()));
      if (!seen.insert(key).second) continue;
      Recommendation r;
      r.kind = RecommendationKind::kDrillDown;
      r.spec = recommended_card({primary}, series.granularity, span.interval, card->dim_filters);
      r.label = "Focus on a narrower time span (" + span_label(span.interval) + ")";
      r.score = span.salience;
      out.push_back(std::move(r));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Recommendation& a, const Recommendation& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.spec.metric_ids.front() != b.spec.metric_ids.front()) {
      return a.spec.metric_ids.front() < b.spec.metric_ids.front();
    }
    return a.spec.time_filter->start() < b.spec.time_filter->start();
  });
  return out;
}

std::optional<Recommendation> overview(const Scene& scene, const Catalog& catalog,
                                       double threshold) {
  auto cards = populated_cards(scene);
  bool any_filtered = std::any_of(cards.begin(), cards.end(),
                                  [](const VizCardSpec* c) { return c->time_filter.has_value(); });
  if (!any_filtered) return std::nullopt;

  std::vector<std::string> metrics;
  Granularity g = Granularity::kDay;
  std::vector<TimeInterval> spans;
  for (const VizCardSpec* card : cards) {
    for (const auto& id : card->metric_ids) {
      if (std::find(metrics.begin(), metrics.end(), id) == metrics.end()) metrics.push_back(id);
    }
    g = coarsest(g, effective_granularity(*card, catalog));
    spans.push_back(effective_domain(*card, catalog));
  }
  std::optional<TimeInterval> full;
  for (const auto& id : metrics) {
    TimeInterval d = catalog.domain(id);
    full = full ? full->hull(d) : d;
  }
  TimeInterval domain = snap_outward(*full, g);
  for (auto& s : spans) s = s.intersect(domain).value_or(s);
  double coverage = static_cast<double>(covered_days(spans)) / static_cast<double>(domain.days());
  if (coverage >= threshold) return std::nullopt;

  Recommendation r;
  r.kind = RecommendationKind::kOverview;
  r.spec = recommended_card(metrics, g, std::nullopt);
  r.label = "Show the full time span (" + span_label(domain) + ")";
  r.score = 1.0 - coverage;
  return r;
}

std::vector<Recommendation> new_metric_for_scene(const Canvas& canvas, const Scene& scene,
                                                 std::string_view target_card_id,
                                                 const Catalog& catalog, kernels::Execution exec) {
  const VizCardSpec* reference = nullptr;
  std::size_t end = scene.cards.size();
  for (std::size_t i = 0; i < scene.cards.size(); ++i) {
    if (card_id(scene.cards[i]) == target_card_id) end = i;
  }
  for (std::size_t i = end; i-- > 0;) {
    const auto* v = std::get_if<VizCardSpec>(&scene.cards[i]);
    if (v && v->populated() && card_id(scene.cards[i]) != target_card_id) {
      reference = v;
      break;
    }
  }
  if (!reference) {
    auto cards = populated_cards(scene);
    if (cards.empty()) return {};
    reference = cards.back();
  }

  VizCardSpec single = *reference;
  single.metric_ids = {reference->metric_ids.front()};
  Series displayed;
  std::optional<TimeInterval> window;
  try {
    displayed = card_series(single, catalog).front();
    window = effective_domain(single, catalog);
  } catch (const Error&) {
    return {};
  }
  const std::vector<std::string> candidates = unused_metrics(canvas, catalog);

  std::vector<kernels::PairedValues> pairs(candidates.size());
  std::vector<Granularity> grains(candidates.size(), displayed.granularity);
  kernels::for_each_index(candidates.size(), exec, [&](std::size_t i) {
    try {
      Granularity g = coarsest(displayed.granularity,
                               catalog.collection_of(candidates[i]).native_granularity);
      grains[i] = g;
      Series ref = reaggregate(displayed, g);
      Series cand = slice_time_range(catalog.series(candidates[i], g, reference->dim_filters), *window);
      std::size_t a = 0, b = 0;
      while (a < ref.points.size() && b < cand.points.size()) {
        if (ref.points[a].timestamp < cand.points[b].timestamp) {
          ++a;
        } else if (cand.points[b].timestamp < ref.points[a].timestamp) {
          ++b;
        } else {
          pairs[i].a.push_back(ref.points[a++].value);
          pairs[i].b.push_back(cand.points[b++].value);
        }
      }
    } catch (const Error&) {
      pairs[i] = {};
    }
  });
  std::vector<std::optional<double>> rs = kernels::pearson_batch(pairs, exec);

  const std::string& ref_name = catalog.metric(single.metric_ids.front()).name;
  std::vector<Recommendation> out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!rs[i]) continue;
    Recommendation r;
    r.kind = RecommendationKind::kNewMetric;
    r.spec = recommended_card({candidates[i]}, grains[i], *window, reference->dim_filters);
    r.label = catalog.metric(candidates[i]).name + ": trend " +
              (*rs[i] >= 0 ? "similar to " : "inverse to ") + ref_name + " (r = " +
              format_signed(*rs[i]) + ")";
    r.score = std::abs(*rs[i]);
    out.push_back(std::move(r));
  }
  // Candidates arrive sorted by id, so a stable sort keeps ties lexicographic.
  std::stable_sort(out.begin(), out.end(), [](const Recommendation& a, const Recommendation& b) {
    return a.score > b.score;
  });
  return out;
}

std::vector<Recommendation> unused_metric_recs(const Canvas& canvas, const Catalog& catalog,
                                               UnusedMode mode, kernels::Execution exec) {
  const std::vector<std::string> candidates = unused_metrics(canvas, catalog);
  std::vector<std::vector<double>> values(candidates.size());
  kernels::for_each_index(candidates.size(), exec, [&](std::size_t i) {
    const auto& c = catalog.collection_of(candidates[i]);
    values[i] = catalog.series(candidates[i], c.native_granularity).values();
  });
  std::vector<std::optional<double>> cvs = kernels::cv_batch(values, exec);

  std::vector<Recommendation> out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!cvs[i]) continue;
    Recommendation r;
    r.kind = mode == UnusedMode::kColdStart ? RecommendationKind::kColdStart
                                            : RecommendationKind::kNewScene;
    r.spec = recommended_card({candidates[i]},
                              catalog.collection_of(candidates[i]).native_granularity,
                              std::nullopt);
    r.label = catalog.metric(candidates[i]).name + ": highly variable over time (cv = " +
              format_fixed(*cvs[i]) + ")";
    r.score = *cvs[i];
    out.push_back(std::move(r));
  }
  std::stable_sort(out.begin(), out.end(), [](const Recommendation& a, const Recommendation& b) {
    return a.score > b.score;
  });
  return out;
}

std::vector<Recommendation> rank_recommendations(const RecommendationContext& ctx,
                                                 const Catalog& catalog,
                                                 const RecommendConfig& config) {
  const Scene& scene = get_scene(ctx.canvas, ctx.target_scene_id);
  auto loc = locate_card(ctx.canvas, ctx.target_card_id);
  if (!loc || ctx.canvas.scenes[loc->scene].id != scene.id) {
    throw Error(ErrorCode::kUnknownTarget, "card '" + ctx.target_card_id +
                                               "' is not in scene '" + ctx.target_scene_id + "'");
  }
  if (!ctx.canvas.recommendations_enabled) return {};

  bool scene_has_content = false;
  for (const auto& card : scene.cards) {
    const auto* v = std::get_if<VizCardSpec>(&card);
    if (v && v->populated() && v->id != ctx.target_card_id) scene_has_content = true;
  }
  if (scene_has_content) {
    std::vector<Recommendation> drills = drill_down(scene, catalog, config.extrema);
    std::vector<Recommendation> metrics =
        new_metric_for_scene(ctx.canvas, scene, ctx.target_card_id, catalog, config.execution);
    std::vector<Recommendation> wide;
    if (auto o = overview(scene, catalog, config.overview_threshold)) wide.push_back(std::move(*o));

    std::vector<Recommendation> out;
    std::size_t rounds = std::max({drills.size(), metrics.size(), wide.size()});
    for (std::size_t r = 0; r < rounds; ++r) {
      if (r < drills.size()) out.push_back(std::move(drills[r]));
      if (r < metrics.size()) out.push_back(std::move(metrics[r]));
      if (r < wide.size()) out.push_back(std::move(wide[r]));
    }
    return out;
  }

  bool canvas_has_content = false;
  for (const auto& s : ctx.canvas.scenes) {
    if (!populated_cards(s).empty()) canvas_has_content = true;
  }
  return unused_metric_recs(ctx.canvas, catalog,
                            canvas_has_content ? UnusedMode::kNewScene : UnusedMode::kColdStart,
                            config.execution);
}

std::vector<Recommendation> recommend(const RecommendationContext& ctx, const Catalog& catalog,
                                      const RecommendConfig& config, std::size_t offset,
                                      std::optional<std::size_t> limit) {
  std::vector<Recommendation> all = rank_recommendations(ctx, catalog, config);
  if (offset >= all.size()) return {};
  std::size_t stop = std::min(all.size(), offset + limit.value_or(config.limit));
  return {std::make_move_iterator(all.begin() + static_cast<std::ptrdiff_t>(offset)),
          std::make_move_iterator(all.begin() + static_cast<std::ptrdiff_t>(stop))};
}

}  // namespace metricdeck
