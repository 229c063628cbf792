// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "metricdeck/calendar.hpp"

namespace metricdeck {

struct TimeMention {
  std::size_t char_start = 0;  // byte offsets, half-open
  std::size_t char_end = 0;
  TimeInterval interval{Date{}, Date{}};
  std::string surface;
  bool operator==(const TimeMention&) const = default;
};

struct ParagraphLink {
  std::string paragraph_id;
  std::string target_card_id;
  std::vector<TimeMention> mentions;
  Date reference_date;
  bool operator==(const ParagraphLink&) const = default;
};

// Recognized forms, case-insensitive:
//   Month YYYY         "Nov 2020", "November, 2020", "Sept. 2019"
//   YYYY               1900..2099, not glued to other letters or digits
//   YYYY-MM[-DD]       ISO dates
//   early|mid|late YYYY  thirds of the year (Jan-Apr, May-Aug, Sep-Dec)
//   Q1..Q4 YYYY
//   last year, this year, last month   relative to `reference_date`
//   between A and B, from A to|until B, A - B   (hyphen, en dash or em dash)
// Matches are longest-first and never overlap. Ranges normalize to
// [start of A, end of B]; a range ending before it starts yields nothing.
std::vector<TimeMention> parse_time_expressions(std::string_view text, Date reference_date);

// Keeps the mentions that intersect the card's temporal domain.
ParagraphLink link_paragraph(std::string paragraph_id, std::string_view text,
                             std::string card_id, const TimeInterval& card_domain,
                             Date reference_date);

// Mention interval clipped to the card domain. Throws IndexOutOfRange, or
// EmptyIntersection when the card domain has since moved away.
TimeInterval highlight_span(const ParagraphLink& link, std::size_t mention_index,
                            const TimeInterval& card_domain);

}  // namespace metricdeck
