// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "metricdeck/json_codec.hpp"
#include "metricdeck/metrics.hpp"

#ifndef METRICDECK_FIXTURE_DIR
#error "METRICDECK_FIXTURE_DIR must point at the fixtures directory"
#endif

namespace fixtures {

inline std::filesystem::path dir() { return METRICDECK_FIXTURE_DIR; }

inline std::string read(const std::string& name) {
  std::ifstream in(dir() / name, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline metricdeck::MetricCollection collection(const std::string& stem) {
  auto manifest = metricdeck::codec::manifest_from_json(
      metricdeck::codec::parse(read(stem + ".manifest.json")));
  return metricdeck::ingest_collection(read(stem + ".csv"), metricdeck::InputFormat::kCsv, manifest);
}

// COVID-19 daily and housing monthly collections.
inline const metricdeck::Catalog& seattle() {
  static const metricdeck::Catalog catalog = [] {
    metricdeck::Catalog c;
    c.add(std::make_shared<const metricdeck::MetricCollection>(collection("covid")));
    c.add(std::make_shared<const metricdeck::MetricCollection>(collection("housing")));
    return c;
  }();
  return catalog;
}

}  // namespace fixtures
