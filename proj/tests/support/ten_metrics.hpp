// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "synthetic.hpp"

namespace ten_metrics {

using metricdeck::Aggregation;
using metricdeck::Date;

inline const Date kStart = Date::from_ymd(2020, 1, 1);
inline const Date kEnd = Date::from_ymd(2020, 4, 9);  // 100 days

inline double noise(std::size_t seed, std::size_t i) {
  std::mt19937_64 rng(seed * 100003 + i);
  return std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
}

inline double ref(std::size_t i) { return 50.0 + 10.0 * std::sin(0.2 * i) + noise(1, i); }

// Daily collection: "ref" plus nine candidates with assorted correlations,
// including an exact affine copy ("copy"), an inverse ("inverse") and two
// identical columns ("twin_a", "twin_b").
inline metricdeck::Catalog catalog() {
  std::vector<synthetic::Column> cols;
  cols.push_back({"ref", "u", Aggregation::kSum, kStart, kEnd, ref});
  cols.push_back({"copy", "u", Aggregation::kSum, kStart, kEnd,
                  [](std::size_t i) { return 2.0 * ref(i) + 3.0; }});
  cols.push_back({"inverse", "u", Aggregation::kSum, kStart, kEnd,
                  [](std::size_t i) { return 100.0 - 0.5 * ref(i) + noise(2, i); }});
  for (int k = 0; k < 5; ++k) {
    double mix = 0.18 * k;
    cols.push_back({"m" + std::to_string(k), "u", Aggregation::kSum, kStart, kEnd,
                    [mix, k](std::size_t i) {
                      return mix * ref(i) + (1.0 - mix) * 20.0 * noise(10 + k, i) + 100.0;
                    }});
  }
  for (const char* twin : {"twin_b", "twin_a"}) {
    cols.push_back({twin, "u", Aggregation::kSum, kStart, kEnd,
                    [](std::size_t i) { return 0.3 * ref(i) + 5.0 * noise(40, i) + 70.0; }});
  }
  metricdeck::Catalog cat;
  cat.add(synthetic::collection("ten", metricdeck::Granularity::kDay, kStart, kEnd, cols));
  return cat;
}

}  // namespace ten_metrics
