// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#include "metricdeck/analysis.hpp"

#include <gtest/gtest.h>

#include <random>

#include "metricdeck/error.hpp"
#include "oracles.hpp"

namespace metricdeck {
namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kMalformedInput;
}

std::vector<oracle::Signal> as_oracle(const std::vector<ExtremumSignal>& s) {
  std::vector<oracle::Signal> out;
  for (const auto& x : s) out.push_back({x.index, x.kind == ExtremumKind::kPeak ? 1 : -1});
  return out;
}

TEST(DetectExtrema, ConstantSeriesHasNoSignals) {
  std::vector<double> v(20, 4.2);
  EXPECT_TRUE(detect_extrema(v).empty());
}

TEST(DetectExtrema, SinglePeak) {
  std::vector<double> v(30, 1.0);
  v[15] = 10.0;
  auto s = detect_extrema(v);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].index, 15u);
  EXPECT_EQ(s[0].kind, ExtremumKind::kPeak);
  EXPECT_EQ(as_oracle(s), oracle::smoothed_zscore(v, 5, 3.5, 0.5));
}

TEST(DetectExtrema, SingleValley) {
  std::vector<double> v(30, 10.0);
  v[12] = 0.0;
  auto s = detect_extrema(v);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].index, 12u);
  EXPECT_EQ(s[0].kind, ExtremumKind::kValley);
  EXPECT_LT(s[0].zscore, 0.0);
}

TEST(DetectExtrema, TooShortAndInvalidParams) {
  std::vector<double> v(5, 1.0);
  EXPECT_EQ(code_of([&] { detect_extrema(v); }), ErrorCode::kTooShort);
  std::vector<double> w(10, 1.0);
  EXPECT_EQ(code_of([&] { detect_extrema(w, {1, 3.5, 0.5}); }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(code_of([&] { detect_extrema(w, {5, 0.0, 0.5}); }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(code_of([&] { detect_extrema(w, {5, 3.5, 1.5}); }), ErrorCode::kInvalidConfig);
}

TEST(DetectExtrema, MatchesOracleOnRandomSeries) {
  std::mt19937_64 rng(1234);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_int_distribution<int> len(50, 500);
  std::uniform_int_distribution<std::size_t> lag(2, 30);
  std::uniform_real_distribution<double> thr(1.0, 5.0), infl(0.0, 1.0), spike(-15, 15);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(static_cast<std::size_t>(len(rng)));
    for (auto& x : v) x = noise(rng);
    for (int k = 0; k < 5; ++k) v[rng() % v.size()] += spike(rng);
    ExtremaParams p{lag(rng), thr(rng), infl(rng)};
    if (v.size() < p.lag + 1) continue;
    EXPECT_EQ(as_oracle(detect_extrema(v, p)), oracle::smoothed_zscore(v, p.lag, p.threshold, p.influence));
  }
}

Series monthly(const std::vector<double>& values) {
  Series s;
  s.metric_id = "m";
  s.granularity = Granularity::kMonth;
  for (std::size_t i = 0; i < values.size(); ++i) {
    s.points.push_back({Timestamp::of_month(2018, 1).advanced(static_cast<std::int64_t>(i)), values[i]});
  }
  return s;
}

TEST(ExtremumSpans, PaddingArithmetic) {
  std::vector<double> v(40, 1.0);
  v[15] = 10.0;
  auto spans = extremum_spans(monthly(v));
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0].interval, TimeInterval(Date::from_ymd(2018, 11, 1), Date::from_ymd(2019, 9, 30)));
  EXPECT_EQ(spans[0].kind, ExtremumKind::kPeak);
}

TEST(ExtremumSpans, NoSignalsNoSpans) {
  EXPECT_TRUE(extremum_spans(monthly(std::vector<double>(20, 3.0))).empty());
}

TEST(ExtremumSpans, OrderedBySalience) {
  std::vector<double> v(60, 1.0);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += 0.01 * static_cast<double>(i % 3);
  v[15] = 3.0;
  v[45] = 30.0;
  auto spans = extremum_spans(monthly(v));
  ASSERT_EQ(spans.size(), 2u);
  EXPECT_GT(spans[0].salience, spans[1].salience);
  EXPECT_TRUE(spans[0].interval.contains(Timestamp::of_month(2018, 1).advanced(45).first_day()));
}

TEST(ExtremumSpans, ClippedToDomainAndNonOverlapping) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> noise(0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(120);
    for (auto& x : v) x = noise(rng);
    for (int k = 0; k < 8; ++k) v[rng() % v.size()] += 12 * (k % 2 ? 1 : -1);
    Series s = monthly(v);
    auto spans = extremum_spans(s);
    for (std::size_t i = 0; i < spans.size(); ++i) {
      EXPECT_TRUE(s.domain()->contains(spans[i].interval));
      if (i > 0) EXPECT_GE(spans[i - 1].salience, spans[i].salience);
      for (std::size_t j = i + 1; j < spans.size(); ++j) {
        if (spans[i].kind == spans[j].kind) EXPECT_FALSE(spans[i].interval.intersects(spans[j].interval));
      }
    }
  }
}

TEST(Pearson, Examples) {
  std::vector<double> a{1, 2, 3, 4, 5, 6};
  std::vector<double> b, neg;
  for (double x : a) {
    b.push_back(2 * x + 3);
    neg.push_back(-x);
  }
  EXPECT_NEAR(pearson_r(a, b), 1.0, 1e-12);
  EXPECT_NEAR(pearson_r(a, neg), -1.0, 1e-12);
  std::vector<double> c{1, 2, 3, 4}, d{1, 3, 2, 4};
  EXPECT_NEAR(pearson_r(c, d), 0.8, 1e-12);
  EXPECT_NEAR(pearson_r(c, d), oracle::pearson(c, d), 1e-12);
}

TEST(Pearson, Errors) {
  std::vector<double> two{1, 2}, constant{5, 5, 5}, three{1, 2, 3};
  EXPECT_EQ(code_of([&] { pearson_r(two, two); }), ErrorCode::kInsufficientOverlap);
  EXPECT_EQ(code_of([&] { pearson_r(constant, three); }), ErrorCode::kConstantSeries);
}

TEST(Pearson, SymmetricAndAffineInvariant) {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> n(0, 10);
  std::uniform_real_distribution<double> alpha(0.1, 50), beta(-100, 100);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(40), b(40);
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = n(rng);
      b[i] = 0.5 * a[i] + n(rng);
    }
    const double r = pearson_r(a, b);
    EXPECT_NEAR(r, oracle::pearson(a, b), 1e-12);
    EXPECT_EQ(r, pearson_r(b, a));
    const double al = alpha(rng), be = beta(rng);
    std::vector<double> up, down;
    for (double x : b) {
      up.push_back(al * x + be);
      down.push_back(-al * x + be);
    }
    EXPECT_NEAR(pearson_r(a, up), r, 1e-9);
    EXPECT_NEAR(pearson_r(a, down), -r, 1e-9);
  }
}

TEST(Pearson, SeriesPairsByTimestampAcrossGranularities) {
  Series daily;
  daily.granularity = Granularity::kDay;
  daily.aggregation = Aggregation::kSum;
  Series month = monthly({1, 2, 3, 4, 5, 6});
  for (int m = 1; m <= 4; ++m) {
    for (int d = 1; d <= 10; ++d) daily.points.push_back({Timestamp::of_day(2018, unsigned(m), unsigned(d)), double(m * m)});
  }
  // Monthly sums 10, 40, 90, 160 against 1..4 over the four shared months.
  EXPECT_NEAR(pearson_r(daily, month), oracle::pearson({10, 40, 90, 160}, {1, 2, 3, 4}), 1e-12);
}

TEST(CoefficientOfVariation, Examples) {
  std::vector<double> flat{2, 2, 2}, two{1, 3}, zero{-1, 1}, one{3};
  EXPECT_EQ(coefficient_of_variation(flat), 0.0);
  EXPECT_NEAR(coefficient_of_variation(two), 0.5, 1e-15);
  EXPECT_EQ(code_of([&] { coefficient_of_variation(zero); }), ErrorCode::kZeroMean);
  EXPECT_EQ(code_of([&] { coefficient_of_variation(one); }), ErrorCode::kTooShort);
}

TEST(CoefficientOfVariation, ScaleInvariant) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> v(1, 100), k(1e-3, 1e3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x(25);
    for (auto& e : x) e = v(rng);
    const double base = coefficient_of_variation(x);
    EXPECT_NEAR(base, oracle::cv(x), 1e-12 * base);
    const double scale = k(rng);
    for (auto& e : x) e *= scale;
    EXPECT_NEAR(coefficient_of_variation(x), base, 1e-9 * base);
  }
}

}  // namespace
}  // namespace metricdeck
