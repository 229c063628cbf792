// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace metricdeck {

// Finer granularities compare less than coarser ones.
enum class Granularity : std::uint8_t { kDay = 0, kMonth = 1, kYear = 2 };

std::string_view granularity_name(Granularity g);
Granularity parse_granularity(std::string_view name);
constexpr Granularity coarsest(Granularity a, Granularity b) { return a < b ? b : a; }

// A proleptic Gregorian calendar day, stored as days since 1970-01-01.
class Date {
 public:
  constexpr Date() = default;

  static std::optional<Date> try_from_ymd(int year, unsigned month, unsigned day);
  static Date from_ymd(int year, unsigned month, unsigned day);
  static constexpr Date from_serial(std::int32_t serial) { return Date(serial); }
  static Date min();
  static Date max();
  // Accepts YYYY-MM-DD.
  static Date parse(std::string_view text);

  constexpr std::int32_t serial() const { return serial_; }
  int year() const;
  unsigned month() const;
  unsigned day() const;

  Date plus_days(std::int32_t n) const { return Date(serial_ + n); }
  std::string to_string() const;

  constexpr auto operator<=>(const Date&) const = default;

 private:
  constexpr explicit Date(std::int32_t serial) : serial_(serial) {}
  std::int32_t serial_ = 0;
};

// Closed interval of days; start <= end always holds.
class TimeInterval {
 public:
  TimeInterval(Date start, Date end);

  Date start() const { return start_; }
  Date end() const { return end_; }
  std::int64_t days() const { return std::int64_t{end_.serial()} - start_.serial() + 1; }

  bool contains(Date d) const { return start_ <= d && d <= end_; }
  bool contains(const TimeInterval& o) const { return start_ <= o.start_ && o.end_ <= end_; }
  bool intersects(const TimeInterval& o) const { return start_ <= o.end_ && o.start_ <= end_; }
  std::optional<TimeInterval> intersect(const TimeInterval& o) const;
  TimeInterval hull(const TimeInterval& o) const;

  std::string to_string() const;
  bool operator==(const TimeInterval&) const = default;

 private:
  Date start_;
  Date end_;
};

// Calendar bucket at a given granularity. Ordering is meaningful only between
// timestamps of equal granularity.
class Timestamp {
 public:
  Timestamp() = default;

  static Timestamp of_day(int year, unsigned month, unsigned day);
  static Timestamp of_month(int year, unsigned month);
  static Timestamp of_year(int year);
  static Timestamp containing(Date d, Granularity g);
  static constexpr Timestamp from_ordinal(std::int64_t ordinal, Granularity g) {
    return Timestamp(g, ordinal);
  }
  // Parses YYYY, YYYY-MM or YYYY-MM-DD; the form must match `expected`.
  static Timestamp parse(std::string_view text, Granularity expected);
  // Infers the granularity from the form.
  static Timestamp parse(std::string_view text);

  Granularity granularity() const { return granularity_; }
  // Days since epoch (Day), year*12 + month-1 (Month), or the year (Year).
  std::int64_t ordinal() const { return ordinal_; }

  int year() const;
  unsigned month() const;  // 1 for Year granularity
  unsigned day() const;    // 1 for Month and Year granularity

  Date first_day() const;
  Date last_day() const;
  TimeInterval interval() const { return {first_day(), last_day()}; }

  // Bucket of `coarser` containing this timestamp. Requires coarser >= granularity().
  Timestamp coarsen(Granularity coarser) const;
  Timestamp advanced(std::int64_t n) const { return Timestamp(granularity_, ordinal_ + n); }

  std::string to_string() const;

  auto operator<=>(const Timestamp&) const = default;

 private:
  constexpr Timestamp(Granularity g, std::int64_t ordinal) : granularity_(g), ordinal_(ordinal) {}
  Granularity granularity_ = Granularity::kDay;
  std::int64_t ordinal_ = 0;
};

// Expands an interval outward to whole buckets of `g`.
TimeInterval snap_outward(const TimeInterval& interval, Granularity g);

// "Nov 2021" style label used in recommendation text.
std::string month_year_label(Date d);

}  // namespace metricdeck
