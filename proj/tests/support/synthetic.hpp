// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "metricdeck/metrics.hpp"

namespace synthetic {

using metricdeck::Date;
using metricdeck::Granularity;

struct Column {
  std::string id;
  std::string unit;
  metricdeck::Aggregation aggregation = metricdeck::Aggregation::kSum;
  Date first;
  Date last;
  std::function<double(std::size_t)> value;  // by bucket index from the collection start
};

// Wide CSV collection at granularity `g` starting at `start`, one column per
// metric, blank outside each column's [first, last].
inline std::shared_ptr<const metricdeck::MetricCollection> collection(
    const std::string& id, Granularity g, Date start, Date end, const std::vector<Column>& columns) {
  using namespace metricdeck;
  Manifest m;
  m.id = id;
  m.name = id;
  m.granularity = g;
  m.temporal_attribute = "t";
  for (const auto& c : columns) m.metrics.push_back({c.id, c.id, c.id, c.unit, c.aggregation});
  std::string csv = "t";
  for (const auto& c : columns) csv += "," + c.id;
  csv += "\n";
  std::size_t i = 0;
  for (Timestamp t = Timestamp::containing(start, g); t.first_day() <= end; t = t.advanced(1), ++i) {
    csv += t.to_string();
    for (const auto& c : columns) {
      csv += ",";
      if (t.first_day() >= c.first && t.last_day() <= c.last) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", c.value(i));
        csv += buf;
      }
    }
    csv += "\n";
  }
  return std::make_shared<const MetricCollection>(ingest_collection(csv, InputFormat::kCsv, m));
}

}  // namespace synthetic
