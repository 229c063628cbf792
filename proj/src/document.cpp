// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#include "metricdeck/document.hpp"

#include <algorithm>
#include <set>

#include "metricdeck/error.hpp"

namespace metricdeck {

const std::string& card_id(const Card& card) {
  return std::visit([](const auto& c) -> const std::string& { return c.id; }, card);
}

namespace {

Error unknown(std::string_view what, std::string_view id) {
  return Error(ErrorCode::kUnknownTarget, "unknown " + std::string(what) + " '" + std::string(id) + "'");
}

std::string fresh_id(Canvas& canvas, std::string_view prefix) {
  return std::string(prefix) + "-" + std::to_string(canvas.next_id++);
}

Canvas bumped(const Canvas& canvas) {
  Canvas out = canvas;
  ++out.version;
  return out;
}

Card& card_ref(Canvas& canvas, std::string_view id) {
  auto loc = locate_card(canvas, id);
  if (!loc) throw unknown("card", id);
  return canvas.scenes[loc->scene].cards[loc->index];
}

VizCardSpec& viz_ref(Canvas& canvas, std::string_view id) {
  Card& c = card_ref(canvas, id);
  if (auto* v = std::get_if<VizCardSpec>(&c)) return *v;
  throw Error(ErrorCode::kUnknownTarget, "card '" + std::string(id) + "' is not a VizCard");
}

TextCard& text_ref(Canvas& canvas, std::string_view id) {
  Card& c = card_ref(canvas, id);
  if (auto* t = std::get_if<TextCard>(&c)) return *t;
  throw Error(ErrorCode::kUnknownTarget, "card '" + std::string(id) + "' is not a TextCard");
}

std::size_t scene_index(const Canvas& canvas, std::string_view scene_id) {
  for (std::size_t i = 0; i < canvas.scenes.size(); ++i) {
    if (canvas.scenes[i].id == scene_id) return i;
  }
  throw Error(ErrorCode::kUnknownTarget, "unknown scene '" + std::string(scene_id) + "'");
}

void check_position(std::size_t position, std::size_t limit) {
  if (position > limit) {
    throw Error(ErrorCode::kBadPosition, "position " + std::to_string(position) +
                                             " outside 0.." + std::to_string(limit));
  }
}

void assign_ids(Canvas& canvas, Card& card) {
  if (auto* v = std::get_if<VizCardSpec>(&card)) {
    v->id = fresh_id(canvas, "card");
    for (auto& a : v->annotations) a.id = fresh_id(canvas, "ann");
  } else {
    auto& t = std::get<TextCard>(card);
    t.id = fresh_id(canvas, "card");
    for (auto& p : t.paragraphs) {
      p.id = fresh_id(canvas, "para");
      p.link.reset();
    }
  }
}

}  // namespace

std::optional<CardLocation> locate_card(const Canvas& canvas, std::string_view id) {
  for (std::size_t s = 0; s < canvas.scenes.size(); ++s) {
    const auto& cards = canvas.scenes[s].cards;
    for (std::size_t i = 0; i < cards.size(); ++i) {
      if (card_id(cards[i]) == id) return CardLocation{s, i};
    }
  }
  return std::nullopt;
}

const Card& get_card(const Canvas& canvas, std::string_view id) {
  auto loc = locate_card(canvas, id);
  if (!loc) throw unknown("card", id);
  return canvas.scenes[loc->scene].cards[loc->index];
}

const VizCardSpec& get_viz_card(const Canvas& canvas, std::string_view id) {
  const Card& c = get_card(canvas, id);
  if (const auto* v = std::get_if<VizCardSpec>(&c)) return *v;
  throw Error(ErrorCode::kUnknownTarget, "card '" + std::string(id) + "' is not a VizCard");
}

const Scene& get_scene(const Canvas& canvas, std::string_view scene_id) {
  return canvas.scenes[scene_index(canvas, scene_id)];
}

const Card* left_neighbor(const Canvas& canvas, std::string_view id) {
  auto loc = locate_card(canvas, id);
  if (!loc) throw unknown("card", id);
  if (loc->index == 0) return nullptr;
  return &canvas.scenes[loc->scene].cards[loc->index - 1];
}

bool adjacent(const Canvas& canvas, std::string_view a, std::string_view b) {
  auto la = locate_card(canvas, a);
  auto lb = locate_card(canvas, b);
  if (!la) throw unknown("card", a);
  if (!lb) throw unknown("card", b);
  if (la->scene != lb->scene) return false;
  return la->index + 1 == lb->index || lb->index + 1 == la->index;
}

std::vector<std::string> metrics_on_canvas(const Canvas& canvas) {
  std::set<std::string> ids;
  for (const auto& scene : canvas.scenes) {
    for (const auto& card : scene.cards) {
      if (const auto* v = std::get_if<VizCardSpec>(&card)) ids.insert(v->metric_ids.begin(), v->metric_ids.end());
    }
  }
  return {ids.begin(), ids.end()};
}

void validate_ids(const Canvas& canvas) {
  std::set<std::string> seen;
  auto claim = [&](const std::string& id, std::string_view what) {
    if (id.empty()) throw Error(ErrorCode::kSchemaViolation, std::string(what) + " without id");
    if (!seen.insert(id).second) {
      throw Error(ErrorCode::kSchemaViolation, "duplicate id '" + id + "'");
    }
  };
  for (const auto& scene : canvas.scenes) {
    claim(scene.id, "scene");
    for (const auto& card : scene.cards) {
      claim(card_id(card), "card");
      if (const auto* t = std::get_if<TextCard>(&card)) {
        for (const auto& p : t->paragraphs) claim(p.id, "paragraph");
      }
    }
  }
}

Canvas add_scene(const Canvas& canvas, std::size_t position) {
  check_position(position, canvas.scenes.size());
  Canvas out = bumped(canvas);
  Scene scene;
  scene.id = fresh_id(out, "scene");
  out.scenes.insert(out.scenes.begin() + static_cast<std::ptrdiff_t>(position), std::move(scene));
  return out;
}

Canvas remove_scene(const Canvas& canvas, std::string_view scene_id) {
  Canvas out = bumped(canvas);
  out.scenes.erase(out.scenes.begin() + static_cast<std::ptrdiff_t>(scene_index(out, scene_id)));
  return out;
}

Canvas add_card(const Canvas& canvas, std::string_view scene_id, Card card, std::size_t position) {
  std::size_t s = scene_index(canvas, scene_id);
  check_position(position, canvas.scenes[s].cards.size());
  Canvas out = bumped(canvas);
  assign_ids(out, card);
  auto& cards = out.scenes[s].cards;
  cards.insert(cards.begin() + static_cast<std::ptrdiff_t>(position), std::move(card));
  return out;
}

Canvas remove_card(const Canvas& canvas, std::string_view id) {
  auto loc = locate_card(canvas, id);
  if (!loc) throw unknown("card", id);
  Canvas out = bumped(canvas);
  auto& cards = out.scenes[loc->scene].cards;
  cards.erase(cards.begin() + static_cast<std::ptrdiff_t>(loc->index));
  return out;
}

Canvas update_viz_card(const Canvas& canvas, const VizCardSpec& card) {
  Canvas out = bumped(canvas);
  VizCardSpec& target = viz_ref(out, card.id);
  Provenance provenance = target.provenance;
  target = card;
  target.provenance = provenance;
  return out;
}

Canvas replace_card(const Canvas& canvas, std::string_view id,
                    const std::vector<VizCardSpec>& replacements) {
  if (replacements.empty()) {
    throw Error(ErrorCode::kEmptyResult, "a card cannot be replaced by nothing");
  }
  auto loc = locate_card(canvas, id);
  if (!loc) throw unknown("card", id);
  Canvas out = bumped(canvas);
  const Provenance provenance = viz_ref(out, id).provenance;
  auto& cards = out.scenes[loc->scene].cards;
  std::vector<Card> fresh;
  for (std::size_t k = 0; k < replacements.size(); ++k) {
    VizCardSpec c = replacements[k];
    c.id = k == 0 ? std::string(id) : fresh_id(out, "card");
    c.provenance = provenance;
    fresh.emplace_back(std::move(c));
  }
  auto pos = cards.begin() + static_cast<std::ptrdiff_t>(loc->index);
  *pos = std::move(fresh.front());
  cards.insert(pos + 1, std::make_move_iterator(fresh.begin() + 1),
               std::make_move_iterator(fresh.end()));
  return out;
}

Canvas reorder_scene(const Canvas& canvas, std::string_view scene_id, std::size_t new_index) {
  std::size_t from = scene_index(canvas, scene_id);
  if (new_index >= canvas.scenes.size()) {
    throw Error(ErrorCode::kBadPosition, "scene index " + std::to_string(new_index) +
                                             " outside 0.." +
                                             std::to_string(canvas.scenes.size() - 1));
  }
  Canvas out = bumped(canvas);
  Scene moving = std::move(out.scenes[from]);
  out.scenes.erase(out.scenes.begin() + static_cast<std::ptrdiff_t>(from));
  out.scenes.insert(out.scenes.begin() + static_cast<std::ptrdiff_t>(new_index), std::move(moving));
  return out;
}

Canvas reorder_card(const Canvas& canvas, std::string_view id, std::string_view new_scene_id,
                    std::size_t new_index) {
  auto loc = locate_card(canvas, id);
  if (!loc) throw unknown("card", id);
  std::size_t dest = scene_index(canvas, new_scene_id);
  std::size_t limit = canvas.scenes[dest].cards.size() - (dest == loc->scene ? 1 : 0);
  check_position(new_index, limit);
  Canvas out = bumped(canvas);
  auto& src = out.scenes[loc->scene].cards;
  Card moving = std::move(src[loc->index]);
  src.erase(src.begin() + static_cast<std::ptrdiff_t>(loc->index));
  auto& dst = out.scenes[dest].cards;
  dst.insert(dst.begin() + static_cast<std::ptrdiff_t>(new_index), std::move(moving));
  return out;
}

Canvas duplicate_card(const Canvas& canvas, std::string_view id) {
  auto loc = locate_card(canvas, id);
  if (!loc) throw unknown("card", id);
  Canvas out = bumped(canvas);
  Card copy = out.scenes[loc->scene].cards[loc->index];
  if (auto* v = std::get_if<VizCardSpec>(&copy)) {
    v->id = fresh_id(out, "card");
    for (auto& a : v->annotations) a.id = fresh_id(out, "ann");
  } else {
    auto& t = std::get<TextCard>(copy);
    t.id = fresh_id(out, "card");
    for (auto& p : t.paragraphs) {
      p.id = fresh_id(out, "para");
      p.link.reset();
    }
  }
  auto& cards = out.scenes[loc->scene].cards;
  cards.insert(cards.begin() + static_cast<std::ptrdiff_t>(loc->index + 1), std::move(copy));
  return out;
}

Canvas replace_with_merged(const Canvas& canvas, std::string_view card_a, std::string_view card_b,
                           const VizCardSpec& merged) {
  if (!adjacent(canvas, card_a, card_b)) {
    throw Error(ErrorCode::kNotAdjacent, "cards '" + std::string(card_a) + "' and '" +
                                             std::string(card_b) + "' are not adjacent");
  }
  auto la = *locate_card(canvas, card_a);
  auto lb = *locate_card(canvas, card_b);
  std::size_t left = std::min(la.index, lb.index);
  Canvas out = bumped(canvas);
  auto& cards = out.scenes[la.scene].cards;
  cards.erase(cards.begin() + static_cast<std::ptrdiff_t>(left),
              cards.begin() + static_cast<std::ptrdiff_t>(left + 2));
  VizCardSpec card = merged;
  card.id = fresh_id(out, "card");
  cards.insert(cards.begin() + static_cast<std::ptrdiff_t>(left), std::move(card));
  return out;
}

Canvas set_obfuscation(const Canvas& canvas, std::string_view id, const TimeInterval& span,
                       bool on, const TimeInterval& card_domain) {
  Canvas out = bumped(canvas);
  VizCardSpec& card = viz_ref(out, id);
  auto& masks = card.obfuscations;
  if (on) {
    if (!span.intersects(card_domain)) {
      throw Error(ErrorCode::kEmptyIntersection,
                  "mask " + span.to_string() + " misses card domain " + card_domain.to_string());
    }
    if (std::find(masks.begin(), masks.end(), span) == masks.end()) masks.push_back(span);
  } else {
    auto it = std::find(masks.begin(), masks.end(), span);
    if (it == masks.end()) {
      throw Error(ErrorCode::kUnknownTarget, "card '" + std::string(id) + "' has no mask " +
                                                 span.to_string());
    }
    masks.erase(it);
  }
  return out;
}

Canvas add_annotation(const Canvas& canvas, std::string_view id, Annotation annotation) {
  Canvas out = bumped(canvas);
  annotation.id = fresh_id(out, "ann");
  viz_ref(out, id).annotations.push_back(std::move(annotation));
  return out;
}

Canvas clear_annotations(const Canvas& canvas, std::string_view id) {
  Canvas out = bumped(canvas);
  viz_ref(out, id).annotations.clear();
  return out;
}

Canvas add_paragraph(const Canvas& canvas, std::string_view text_card_id, std::string text) {
  Canvas out = bumped(canvas);
  Paragraph p;
  p.id = fresh_id(out, "para");
  p.text = std::move(text);
  text_ref(out, text_card_id).paragraphs.push_back(std::move(p));
  return out;
}

const Paragraph& get_paragraph(const Canvas& canvas, std::string_view text_card_id,
                               std::string_view paragraph_id) {
  const Card& c = get_card(canvas, text_card_id);
  const auto* t = std::get_if<TextCard>(&c);
  if (!t) throw Error(ErrorCode::kUnknownTarget, "card '" + std::string(text_card_id) + "' is not a TextCard");
  for (const auto& p : t->paragraphs) {
    if (p.id == paragraph_id) return p;
  }
  throw unknown("paragraph", paragraph_id);
}

Canvas set_paragraph_link(const Canvas& canvas, std::string_view text_card_id,
                          std::string_view paragraph_id, std::optional<ParagraphLink> link) {
  if (link && !adjacent(canvas, text_card_id, link->target_card_id)) {
    throw Error(ErrorCode::kNotAdjacent, "card '" + link->target_card_id +
                                             "' is not adjacent to '" + std::string(text_card_id) + "'");
  }
  Canvas out = bumped(canvas);
  for (auto& p : text_ref(out, text_card_id).paragraphs) {
    if (p.id == paragraph_id) {
      p.link = std::move(link);
      return out;
    }
  }
  throw unknown("paragraph", paragraph_id);
}

Canvas set_title(const Canvas& canvas, std::string title) {
  Canvas out = bumped(canvas);
  out.title = std::move(title);
  return out;
}

Canvas set_recommendations_enabled(const Canvas& canvas, bool enabled) {
  Canvas out = bumped(canvas);
  out.recommendations_enabled = enabled;
  return out;
}

std::vector<SceneSummary> scene_summaries(const Canvas& canvas, const Catalog& catalog) {
  std::vector<SceneSummary> out;
  for (const auto& scene : canvas.scenes) {
    SceneSummary s;
    s.scene_id = scene.id;
    std::set<std::string> metrics;
    for (const auto& card : scene.cards) {
      const auto* v = std::get_if<VizCardSpec>(&card);
      if (!v || !v->populated()) continue;
      metrics.insert(v->metric_ids.begin(), v->metric_ids.end());
      TimeInterval d = effective_domain(*v, catalog);
      s.coverage = s.coverage ? s.coverage->hull(d) : d;
    }
    s.metric_ids.assign(metrics.begin(), metrics.end());
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace metricdeck
