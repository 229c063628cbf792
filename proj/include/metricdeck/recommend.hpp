// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "metricdeck/analysis.hpp"
#include "metricdeck/document.hpp"
#include "metricdeck/kernels.hpp"
#include "metricdeck/metrics.hpp"

namespace metricdeck {

enum class RecommendationKind { kDrillDown, kOverview, kNewMetric, kNewScene, kColdStart };
std::string_view recommendation_kind_name(RecommendationKind k);

struct Recommendation {
  RecommendationKind kind = RecommendationKind::kColdStart;
  VizCardSpec spec;  // provenance = Recommended
  std::string label;
  double score = 0.0;  // comparable only within one kind
};

struct RecommendConfig {
  ExtremaParams extrema;
  double overview_threshold = 0.5;  // emit an overview below this coverage
  std::size_t limit = 5;  // page size when the caller gives none
  kernels::Execution execution = kernels::Execution::kParallel;
};

struct RecommendationContext {
  const Canvas& canvas;
  std::string target_scene_id;
  std::string target_card_id;
};

// Full ranked list for the context's dispatch path, before pagination.
// Empty when the canvas has recommendations disabled. Throws UnknownTarget.
std::vector<Recommendation> rank_recommendations(const RecommendationContext& ctx,
                                                 const Catalog& catalog,
                                                 const RecommendConfig& config = {});

// A page of the ranked list: at most `limit` (default config.limit) items
// beginning at `offset`.
std::vector<Recommendation> recommend(const RecommendationContext& ctx, const Catalog& catalog,
                                      const RecommendConfig& config = {}, std::size_t offset = 0,
                                      std::optional<std::size_t> limit = std::nullopt);

// One drill-down per extremum span of each populated card's first metric.
std::vector<Recommendation> drill_down(const Scene& scene, const Catalog& catalog,
                                       const ExtremaParams& params = {});

std::optional<Recommendation> overview(const Scene& scene, const Catalog& catalog,
                                       double threshold = 0.5);

// Metrics absent from the canvas, ranked by |r| against the first metric of
// the populated VizCard preceding `target_card_id`.
std::vector<Recommendation> new_metric_for_scene(
    const Canvas& canvas, const Scene& scene, std::string_view target_card_id,
    const Catalog& catalog, kernels::Execution exec = kernels::Execution::kParallel);

enum class UnusedMode { kNewScene, kColdStart };

// Metrics absent from the canvas ranked by coefficient of variation.
std::vector<Recommendation> unused_metric_recs(
    const Canvas& canvas, const Catalog& catalog, UnusedMode mode,
    kernels::Execution exec = kernels::Execution::kParallel);

}  // namespace metricdeck
