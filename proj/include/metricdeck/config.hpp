// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "metricdeck/analysis.hpp"

namespace metricdeck {

struct ServerConfig {
  std::string bind_address = "127.0.0.1:8080";  // host:port; port 0 picks a free one
  std::filesystem::path data_dir = "data";
  double comparability_factor = 10.0;
  double overview_threshold = 0.5;
  ExtremaParams extrema_defaults;
  std::size_t recommendation_limit = 5;

  // Throws InvalidConfig.
  void validate() const;
  std::string host() const;
  int port() const;
};

// Keys: bindAddress, dataDir, comparabilityFactor, overviewThreshold,
// extremaDefaults {lag, threshold, influence}, recommendationLimit. Missing
// keys keep their defaults; unknown keys are rejected.
ServerConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ServerConfig& config);

// Reads the file (if given), then applies METRICDECK_DATA_DIR and
// METRICDECK_BIND from the environment, then validates.
ServerConfig load_config(const std::optional<std::filesystem::path>& path);

}  // namespace metricdeck
