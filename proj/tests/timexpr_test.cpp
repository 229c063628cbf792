// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#include "metricdeck/timexpr.hpp"

#include <gtest/gtest.h>

#include <random>

#include "metricdeck/error.hpp"
#include "timexpr_cases.hpp"

namespace metricdeck {
namespace {

Date d(const char* iso) { return Date::parse(iso); }

TEST(ParseTimeExpressions, FixtureSuite) {
  for (const auto& c : timexpr_cases::all()) {
    auto mentions = parse_time_expressions(c.text, d(c.reference));
    ASSERT_EQ(mentions.size(), c.mentions.size()) << c.text;
    for (std::size_t i = 0; i < mentions.size(); ++i) {
      EXPECT_EQ(mentions[i].interval, TimeInterval(d(c.mentions[i].start), d(c.mentions[i].end)))
          << c.text << " #" << i;
    }
  }
}

TEST(ParseTimeExpressions, OffsetsAndSurface) {
  const std::string text = "Cases rose between Nov 2020 and Feb 2021.";
  auto m = parse_time_expressions(text, d("2022-01-01"));
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].surface, "between Nov 2020 and Feb 2021");
  EXPECT_EQ(text.substr(m[0].char_start, m[0].char_end - m[0].char_start), m[0].surface);
}

TEST(ParseTimeExpressions, SurfaceReparsesToSameInterval) {
  for (const auto& c : timexpr_cases::all()) {
    for (const auto& m : parse_time_expressions(c.text, d(c.reference))) {
      auto again = parse_time_expressions(m.surface, d(c.reference));
      ASSERT_EQ(again.size(), 1u) << m.surface;
      EXPECT_EQ(again[0].interval, m.interval) << m.surface;
    }
  }
}

TEST(ParseTimeExpressions, FuzzedInputsAreOrderedAndDisjoint) {
  static const std::vector<std::string> kPieces = {
      "Nov", "2020", "between", "and", "from", "to", "until", "-", "\xe2\x80\x93", "Q3", "mid",
      "late", "early", "last", "year", "month", "this", ",", ".", "Sept", "2019-05", "x", "  ",
      "\xff", "\xc3", "99999", "1899", "2100", "Feb", "q9", "2021-13", "abc2020"};
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::size_t> pick(0, kPieces.size() - 1), len(0, 20), sp(0, 3);
  for (int trial = 0; trial < 2000; ++trial) {
    std::string text;
    for (std::size_t i = len(rng); i > 0; --i) {
      text += kPieces[pick(rng)];
      if (sp(rng)) text += ' ';
    }
    auto a = parse_time_expressions(text, d("2022-03-15"));
    auto b = parse_time_expressions(text, d("2022-03-15"));
    EXPECT_EQ(a, b);
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_LE(a[i].char_end, text.size());
      EXPECT_LT(a[i].char_start, a[i].char_end);
      EXPECT_LE(a[i].interval.start(), a[i].interval.end());
      if (i > 0) EXPECT_LE(a[i - 1].char_end, a[i].char_start);
    }
  }
}

TEST(LinkParagraph, KeepsIntersectingMentions) {
  TimeInterval card(d("2020-02-01"), d("2022-06-30"));
  auto link = link_paragraph("para-1", "In 1995 it was calm; between Nov 2020 and Feb 2021 it spiked.",
                             "card-1", card, d("2022-06-30"));
  ASSERT_EQ(link.mentions.size(), 1u);
  EXPECT_EQ(link.mentions[0].interval, TimeInterval(d("2020-11-01"), d("2021-02-28")));
  EXPECT_EQ(link.target_card_id, "card-1");
  auto none = link_paragraph("para-2", "No dates at all.", "card-1", card, d("2022-06-30"));
  EXPECT_TRUE(none.mentions.empty());
  EXPECT_EQ(none.paragraph_id, "para-2");
}

TEST(HighlightSpan, ClipsToCardDomain) {
  TimeInterval card(d("2020-02-01"), d("2022-06-30"));
  auto link = link_paragraph("p", "between Nov 2020 and Feb 2021, then 2022 and 2023", "c", card,
                             d("2022-06-30"));
  ASSERT_EQ(link.mentions.size(), 2u);
  EXPECT_EQ(highlight_span(link, 0, card), TimeInterval(d("2020-11-01"), d("2021-02-28")));
  EXPECT_EQ(highlight_span(link, 1, card), TimeInterval(d("2022-01-01"), d("2022-06-30")));
  try {
    highlight_span(link, 5, card);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIndexOutOfRange);
  }
  try {
    highlight_span(link, 0, TimeInterval(d("2010-01-01"), d("2010-12-31")));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyIntersection);
  }
}

}  // namespace
}  // namespace metricdeck
