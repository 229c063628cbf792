// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#include "metricdeck/calendar.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cstdio>

#include "metricdeck/error.hpp"

namespace metricdeck {

namespace chr = std::chrono;

namespace {

chr::year_month_day ymd_of(std::int32_t serial) {
  return chr::year_month_day{chr::sys_days{chr::days{serial}}};
}

// Strict fixed-width unsigned field.
std::optional<int> parse_digits(std::string_view s, std::size_t width) {
  if (s.size() != width) return std::nullopt;
  int value = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    value = value * 10 + (c - '0');
  }
  return value;
}

Error bad_timestamp(std::string_view text, std::string_view why) {
  return Error(ErrorCode::kMalformedInput,
               "invalid timestamp '" + std::string(text) + "': " + std::string(why));
}

}  // namespace

std::string_view granularity_name(Granularity g) {
  switch (g) {
    case Granularity::kDay: return "Day";
    case Granularity::kMonth: return "Month";
    case Granularity::kYear: return "Year";
  }
  return "Day";
}

Granularity parse_granularity(std::string_view name) {
  if (name == "Day" || name == "day") return Granularity::kDay;
  if (name == "Month" || name == "month") return Granularity::kMonth;
  if (name == "Year" || name == "year") return Granularity::kYear;
  throw Error(ErrorCode::kMalformedInput, "unknown granularity '" + std::string(name) + "'");
}

std::optional<Date> Date::try_from_ymd(int year, unsigned month, unsigned day) {
  chr::year_month_day ymd{chr::year{year}, chr::month{month}, chr::day{day}};
  if (!ymd.ok() || year < 1 || year > 9999) return std::nullopt;
  return Date(static_cast<std::int32_t>(chr::sys_days{ymd}.time_since_epoch().count()));
}

Date Date::from_ymd(int year, unsigned month, unsigned day) {
  auto d = try_from_ymd(year, month, day);
  if (!d) {
    throw Error(ErrorCode::kMalformedInput, "invalid calendar date " + std::to_string(year) +
                                                "-" + std::to_string(month) + "-" +
                                                std::to_string(day));
  }
  return *d;
}

Date Date::min() { return from_ymd(1, 1, 1); }
Date Date::max() { return from_ymd(9999, 12, 31); }

Date Date::parse(std::string_view text) {
  auto ts = Timestamp::parse(text, Granularity::kDay);
  return ts.first_day();
}

int Date::year() const { return static_cast<int>(ymd_of(serial_).year()); }
unsigned Date::month() const { return static_cast<unsigned>(ymd_of(serial_).month()); }
unsigned Date::day() const { return static_cast<unsigned>(ymd_of(serial_).day()); }

std::string Date::to_string() const { return Timestamp::containing(*this, Granularity::kDay).to_string(); }

TimeInterval::TimeInterval(Date start, Date end) : start_(start), end_(end) {
  if (end < start) {
    throw Error(ErrorCode::kMalformedInput,
                "interval end " + end.to_string() + " precedes start " + start.to_string());
  }
}

std::optional<TimeInterval> TimeInterval::intersect(const TimeInterval& o) const {
  if (!intersects(o)) return std::nullopt;
  return TimeInterval(std::max(start_, o.start_), std::min(end_, o.end_));
}

TimeInterval TimeInterval::hull(const TimeInterval& o) const {
  return {std::min(start_, o.start_), std::max(end_, o.end_)};
}

std::string TimeInterval::to_string() const {
  return "[" + start_.to_string() + ", " + end_.to_string() + "]";
}

Timestamp Timestamp::of_day(int year, unsigned month, unsigned day) {
  return Timestamp(Granularity::kDay, Date::from_ymd(year, month, day).serial());
}

Timestamp Timestamp::of_month(int year, unsigned month) {
  if (month < 1 || month > 12 || year < 1 || year > 9999) {
    throw Error(ErrorCode::kMalformedInput, "invalid month " + std::to_string(year) + "-" +
                                                std::to_string(month));
  }
  return Timestamp(Granularity::kMonth, std::int64_t{year} * 12 + (month - 1));
}

Timestamp Timestamp::of_year(int year) {
  if (year < 1 || year > 9999) {
    throw Error(ErrorCode::kMalformedInput, "invalid year " + std::to_string(year));
  }
  return Timestamp(Granularity::kYear, year);
}

Timestamp Timestamp::containing(Date d, Granularity g) {
  switch (g) {
    case Granularity::kDay: return Timestamp(g, d.serial());
    case Granularity::kMonth: return of_month(d.year(), d.month());
    case Granularity::kYear: return of_year(d.year());
  }
  return Timestamp(g, d.serial());
}

Timestamp Timestamp::parse(std::string_view text) {
  switch (text.size()) {
    case 4: return parse(text, Granularity::kYear);
    case 7: return parse(text, Granularity::kMonth);
    case 10: return parse(text, Granularity::kDay);
    default: throw bad_timestamp(text, "expected YYYY, YYYY-MM or YYYY-MM-DD");
  }
}

Timestamp Timestamp::parse(std::string_view text, Granularity expected) {
  static constexpr std::array<std::size_t, 3> kWidth = {10, 7, 4};
  if (text.size() != kWidth[static_cast<std::size_t>(expected)]) {
    throw bad_timestamp(text, "does not match granularity " +
                                  std::string(granularity_name(expected)));
  }
  auto year = parse_digits(text.substr(0, 4), 4);
  if (!year || *year < 1) throw bad_timestamp(text, "bad year");
  if (expected == Granularity::kYear) return of_year(*year);
  if (text[4] != '-') throw bad_timestamp(text, "expected '-'");
  auto month = parse_digits(text.substr(5, 2), 2);
  if (!month || *month < 1 || *month > 12) throw bad_timestamp(text, "bad month");
  if (expected == Granularity::kMonth) return of_month(*year, static_cast<unsigned>(*month));
  if (text[7] != '-') throw bad_timestamp(text, "expected '-'");
  auto day = parse_digits(text.substr(8, 2), 2);
  if (!day) throw bad_timestamp(text, "bad day");
  auto date = Date::try_from_ymd(*year, static_cast<unsigned>(*month), static_cast<unsigned>(*day));
  if (!date) throw bad_timestamp(text, "not a calendar date");
  return Timestamp(Granularity::kDay, date->serial());
}

int Timestamp::year() const {
  switch (granularity_) {
    case Granularity::kDay: return Date::from_serial(static_cast<std::int32_t>(ordinal_)).year();
    case Granularity::kMonth: return static_cast<int>(ordinal_ / 12);
    case Granularity::kYear: return static_cast<int>(ordinal_);
  }
  return 0;
}

unsigned Timestamp::month() const {
  switch (granularity_) {
    case Granularity::kDay: return Date::from_serial(static_cast<std::int32_t>(ordinal_)).month();
    case Granularity::kMonth: return static_cast<unsigned>(ordinal_ % 12) + 1;
    case Granularity::kYear: return 1;
  }
  return 1;
}

unsigned Timestamp::day() const {
  if (granularity_ == Granularity::kDay) {
    return Date::from_serial(static_cast<std::int32_t>(ordinal_)).day();
  }
  return 1;
}

Date Timestamp::first_day() const {
  switch (granularity_) {
    case Granularity::kDay: return Date::from_serial(static_cast<std::int32_t>(ordinal_));
    case Granularity::kMonth: return Date::from_ymd(year(), month(), 1);
    case Granularity::kYear: return Date::from_ymd(year(), 1, 1);
  }
  return {};
}

Date Timestamp::last_day() const {
  switch (granularity_) {
    case Granularity::kDay: return first_day();
    case Granularity::kMonth: return advanced(1).first_day().plus_days(-1);
    case Granularity::kYear: return Date::from_ymd(year(), 12, 31);
  }
  return {};
}

Timestamp Timestamp::coarsen(Granularity coarser) const {
  if (coarser == granularity_) return *this;
  return containing(first_day(), coarser);
}

std::string Timestamp::to_string() const {
  char buf[16];
  switch (granularity_) {
    case Granularity::kYear:
      std::snprintf(buf, sizeof buf, "%04d", year());
      break;
    case Granularity::kMonth:
      std::snprintf(buf, sizeof buf, "%04d-%02u", year(), month());
      break;
    case Granularity::kDay: {
      auto d = first_day();
      std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", d.year(), d.month(), d.day());
      break;
    }
  }
  return buf;
}

TimeInterval snap_outward(const TimeInterval& interval, Granularity g) {
  return {Timestamp::containing(interval.start(), g).first_day(),
          Timestamp::containing(interval.end(), g).last_day()};
}

std::string month_year_label(Date d) {
  static constexpr std::array<const char*, 12> kNames = {
      "Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
  return std::string(kNames[d.month() - 1]) + " " + std::to_string(d.year());
}

}  // namespace metricdeck
