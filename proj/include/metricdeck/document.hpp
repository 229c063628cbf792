// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "metricdeck/metrics.hpp"
#include "metricdeck/timexpr.hpp"
#include "metricdeck/transform.hpp"

namespace metricdeck {

struct Paragraph {
  std::string id;
  std::string text;
  std::optional<ParagraphLink> link;
  bool operator==(const Paragraph&) const = default;
};

struct TextCard {
  std::string id;
  std::vector<Paragraph> paragraphs;
  bool operator==(const TextCard&) const = default;
};

using Card = std::variant<VizCardSpec, TextCard>;

const std::string& card_id(const Card& card);

struct Scene {
  std::string id;
  std::vector<Card> cards;
  bool operator==(const Scene&) const = default;
};

// Scenes stack vertically; cards within a scene run left to right. Every
// mutation below returns a new value with a higher version and leaves its
// input untouched.
struct Canvas {
  std::string id;
  std::string title;
  std::vector<std::string> collection_ids;
  std::vector<Scene> scenes;
  bool recommendations_enabled = true;
  std::int64_t version = 0;
  std::int64_t next_id = 1;  // source of fresh scene/card/paragraph/annotation ids
  bool operator==(const Canvas&) const = default;
};

struct CardLocation {
  std::size_t scene;
  std::size_t index;
};

std::optional<CardLocation> locate_card(const Canvas& canvas, std::string_view card_id);
const Card& get_card(const Canvas& canvas, std::string_view card_id);          // UnknownTarget
const VizCardSpec& get_viz_card(const Canvas& canvas, std::string_view card_id);
const Scene& get_scene(const Canvas& canvas, std::string_view scene_id);       // UnknownScene
// Card immediately to the left within the same scene, if any.
const Card* left_neighbor(const Canvas& canvas, std::string_view card_id);
bool adjacent(const Canvas& canvas, std::string_view a, std::string_view b);
// Every metric id shown by any VizCard.
std::vector<std::string> metrics_on_canvas(const Canvas& canvas);

// Throws SchemaViolation on duplicate ids.
void validate_ids(const Canvas& canvas);

Canvas add_scene(const Canvas& canvas, std::size_t position);
Canvas remove_scene(const Canvas& canvas, std::string_view scene_id);
// The card's id (and its paragraph and annotation ids) are assigned here.
Canvas add_card(const Canvas& canvas, std::string_view scene_id, Card card, std::size_t position);
Canvas remove_card(const Canvas& canvas, std::string_view card_id);
// Replaces a VizCard's content; its id and provenance are preserved.
Canvas update_viz_card(const Canvas& canvas, const VizCardSpec& card);
// Replaces one VizCard with the results of a transform: the first keeps the
// original id, the rest get fresh ids and follow it.
Canvas replace_card(const Canvas& canvas, std::string_view card_id,
                    const std::vector<VizCardSpec>& replacements);

Canvas reorder_scene(const Canvas& canvas, std::string_view scene_id, std::size_t new_index);
Canvas reorder_card(const Canvas& canvas, std::string_view card_id, std::string_view new_scene_id,
                    std::size_t new_index);
Canvas duplicate_card(const Canvas& canvas, std::string_view card_id);
Canvas replace_with_merged(const Canvas& canvas, std::string_view card_a, std::string_view card_b,
                           const VizCardSpec& merged);

Canvas set_obfuscation(const Canvas& canvas, std::string_view card_id, const TimeInterval& span,
                       bool on, const TimeInterval& card_domain);
Canvas add_annotation(const Canvas& canvas, std::string_view card_id, Annotation annotation);
Canvas clear_annotations(const Canvas& canvas, std::string_view card_id);

Canvas add_paragraph(const Canvas& canvas, std::string_view text_card_id, std::string text);
Canvas set_paragraph_link(const Canvas& canvas, std::string_view text_card_id,
                          std::string_view paragraph_id, std::optional<ParagraphLink> link);
const Paragraph& get_paragraph(const Canvas& canvas, std::string_view text_card_id,
                               std::string_view paragraph_id);

Canvas set_title(const Canvas& canvas, std::string title);
Canvas set_recommendations_enabled(const Canvas& canvas, bool enabled);

struct SceneSummary {
  std::string scene_id;
  std::vector<std::string> metric_ids;  // sorted, unique
  std::optional<TimeInterval> coverage;
  bool operator==(const SceneSummary&) const = default;
};

std::vector<SceneSummary> scene_summaries(const Canvas& canvas, const Catalog& catalog);

}  // namespace metricdeck
