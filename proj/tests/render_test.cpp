// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#include "metricdeck/render.hpp"

#include <gtest/gtest.h>

#include "metricdeck/error.hpp"
#include "synthetic.hpp"

namespace metricdeck {
namespace {

const Date kStart = Date::from_ymd(2021, 1, 1);
const Date kEnd = Date::from_ymd(2021, 1, 10);

Catalog catalog() {
  Catalog cat;
  cat.add(synthetic::collection(
      "c", Granularity::kDay, kStart, kEnd,
      {{"a", "u", Aggregation::kSum, kStart, kEnd, [](std::size_t i) { return 1.0 + i; }},
       {"b", "u", Aggregation::kSum, kStart, kEnd, [](std::size_t i) { return 100.0 + 10.0 * i; }},
       {"zero", "u", Aggregation::kSum, kStart, kEnd, [](std::size_t i) { return 1.0 * i; }},
       {"other", "kg", Aggregation::kSum, kStart, kEnd, [](std::size_t) { return 5.0; }}}));
  return cat;
}

VizCardSpec viz(std::vector<std::string> metrics) {
  VizCardSpec v;
  v.metric_ids = std::move(metrics);
  v.granularity = Granularity::kDay;
  return v;
}

struct Pair {
  Canvas canvas;
  std::string left;
  std::string right;
};

Pair pair(VizCardSpec left, VizCardSpec right) {
  Canvas c = add_scene(Canvas{}, 0);
  c = add_card(c, "scene-1", std::move(left), 0);
  c = add_card(c, "scene-1", std::move(right), 1);
  return {c, card_id(c.scenes[0].cards[0]), card_id(c.scenes[0].cards[1])};
}

TEST(Render, PlainFrame) {
  Catalog cat = catalog();
  Pair p = pair(viz({"a"}), viz({"b"}));
  RenderedFrame f = render_frame(p.canvas, p.left, cat);
  ASSERT_EQ(f.frame.columns.size(), 1u);
  EXPECT_EQ(f.frame.timeline.size(), 10u);
  EXPECT_EQ(f.y_domain, (std::pair<double, double>{0.0, 10.0}));
  EXPECT_EQ(f.y_domain_source, p.left);
  EXPECT_EQ(f.x_domain, TimeInterval(kStart, kEnd));
  EXPECT_FALSE(f.filtered);
  ASSERT_EQ(f.legend.size(), 1u);
  EXPECT_EQ(f.legend[0].unit, "u");
  auto j = to_json(f);
  EXPECT_EQ(j.at("cardId"), p.left);
  EXPECT_FALSE(j.contains("xOffsets"));
}

TEST(Render, MergedCardShowsBothSeries) {
  Catalog cat = catalog();
  Pair p = pair(viz({"a"}), viz({"b"}));
  const VizCardSpec& l = get_viz_card(p.canvas, p.left);
  const VizCardSpec& r = get_viz_card(p.canvas, p.right);
  VizCardSpec merged = merge_cards(l, card_facts(l, cat), r, card_facts(r, cat));
  Canvas m = replace_with_merged(p.canvas, p.left, p.right, merged);
  RenderedFrame f = render_frame(m, card_id(m.scenes[0].cards[0]), cat);
  ASSERT_EQ(f.frame.columns.size(), 2u);
  EXPECT_EQ(f.legend[0].metric_id, "a");
  EXPECT_EQ(f.legend[1].metric_id, "b");
  EXPECT_EQ(f.y_domain, (std::pair<double, double>{0.0, 190.0}));
}

TEST(Render, CoordinationFollowsEditsToLeftCard) {
  Catalog cat = catalog();
  Pair p = pair(viz({"b"}), viz({"a"}));
  VizCardSpec right = get_viz_card(p.canvas, p.right);
  right.axis.coordinated_y_with = p.left;
  Canvas c = update_viz_card(p.canvas, right);
  RenderedFrame f = render_frame(c, p.right, cat);
  EXPECT_EQ(f.y_domain, (std::pair<double, double>{0.0, 190.0}));
  EXPECT_EQ(f.y_domain_source, p.left);

  VizCardSpec left = get_viz_card(c, p.left);
  left.axis.y_mode = YMode::kMinMax;
  left.time_filter = TimeInterval(kStart, kStart.plus_days(4));
  c = update_viz_card(c, left);
  EXPECT_EQ(render_frame(c, p.right, cat).y_domain, (std::pair<double, double>{100.0, 140.0}));
  EXPECT_EQ(resolved_y_domain(c, get_viz_card(c, p.right), cat),
            (std::pair<double, double>{100.0, 140.0}));
}

TEST(Render, DanglingOrCyclicCoordinationFallsBack) {
  Catalog cat = catalog();
  Pair p = pair(viz({"b"}), viz({"a"}));
  VizCardSpec left = get_viz_card(p.canvas, p.left);
  VizCardSpec right = get_viz_card(p.canvas, p.right);
  left.axis.coordinated_y_with = p.right;
  right.axis.coordinated_y_with = p.left;
  Canvas c = update_viz_card(update_viz_card(p.canvas, left), right);
  EXPECT_NO_THROW(render_frame(c, p.right, cat));
  Canvas dangling = remove_card(c, p.left);
  RenderedFrame f = render_frame(dangling, p.right, cat);
  EXPECT_EQ(f.y_domain_source, p.right);
  EXPECT_EQ(f.y_domain, (std::pair<double, double>{0.0, 10.0}));
}

TEST(Render, IndexedPercentFrame) {
  Catalog cat = catalog();
  VizCardSpec card = viz({"b"});
  card.axis.y_mode = YMode::kIndexedPercent;
  Pair p = pair(card, viz({"a"}));
  RenderedFrame f = render_frame(p.canvas, p.left, cat);
  EXPECT_DOUBLE_EQ(*f.frame.columns[0].values.front(), 0.0);
  EXPECT_DOUBLE_EQ(*f.frame.columns[0].values.back(), 90.0);
  EXPECT_DOUBLE_EQ(f.y_domain.first, 0.0);
  EXPECT_DOUBLE_EQ(f.y_domain.second, 90.0);
}

TEST(Render, IndexedPercentOnZeroBaseThrows) {
  Catalog cat = catalog();
  VizCardSpec card = viz({"zero"});
  card.axis.y_mode = YMode::kIndexedPercent;
  Pair p = pair(card, viz({"a"}));
  try {
    render_frame(p.canvas, p.left, cat);
    FAIL() << "expected ZeroBaseValue";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroBaseValue);
  }
}

TEST(Render, RelativeOffsetsAndFilteredFlag) {
  Catalog cat = catalog();
  VizCardSpec card = viz({"a"});
  card.axis.x_mode = XMode::kRelative;
  card.time_filter = TimeInterval(kStart.plus_days(3), kEnd);
  Pair p = pair(card, viz({"b"}));
  RenderedFrame f = render_frame(p.canvas, p.left, cat);
  ASSERT_EQ(f.x_offsets.size(), 7u);
  EXPECT_EQ(f.x_offsets.front(), 0);
  EXPECT_EQ(f.x_offsets.back(), 6);
  EXPECT_TRUE(f.filtered);
  EXPECT_TRUE(to_json(f).contains("xOffsets"));
}

TEST(Render, TextCardIsNotRenderable) {
  Catalog cat = catalog();
  Canvas c = add_card(add_scene(Canvas{}, 0), "scene-1", TextCard{}, 0);
  EXPECT_THROW(render_frame(c, card_id(c.scenes[0].cards[0]), cat), Error);
}

}  // namespace
}  // namespace metricdeck
