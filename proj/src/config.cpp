// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#include "metricdeck/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "metricdeck/error.hpp"
#include "metricdeck/json_codec.hpp"

namespace metricdeck {

namespace {

[[noreturn]] void bad(const std::string& message) {
  throw Error(ErrorCode::kInvalidConfig, message);
}

std::optional<int> parse_port(std::string_view s) {
  int port = -1;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), port);
  if (ec != std::errc{} || ptr != s.data() + s.size() || port < 0 || port > 65535) {
    return std::nullopt;
  }
  return port;
}

}  // namespace

std::string ServerConfig::host() const {
  return bind_address.substr(0, bind_address.rfind(':'));
}

int ServerConfig::port() const {
  return parse_port(std::string_view(bind_address).substr(bind_address.rfind(':') + 1)).value_or(-1);
}

void ServerConfig::validate() const {
  const auto colon = bind_address.rfind(':');
  if (colon == std::string::npos || colon == 0 || port() < 0) {
    bad("bindAddress must be host:port, got '" + bind_address + "'");
  }
  if (data_dir.empty()) bad("dataDir must not be empty");
  if (!(comparability_factor > 0)) bad("comparabilityFactor must be positive");
  if (!(overview_threshold > 0 && overview_threshold < 1)) {
    bad("overviewThreshold must lie in (0, 1)");
  }
  if (recommendation_limit == 0) bad("recommendationLimit must be positive");
  extrema_defaults.validate();
}

ServerConfig config_from_json(const nlohmann::json& j) {
  static const std::set<std::string> kKeys = {"bindAddress",         "dataDir",
                                              "comparabilityFactor", "overviewThreshold",
                                              "extremaDefaults",     "recommendationLimit"};
  if (!j.is_object()) bad("config must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!kKeys.count(key)) bad("unknown config key '" + key + "'");
  }
  ServerConfig c;
  try {
    if (j.contains("bindAddress")) c.bind_address = j.at("bindAddress").get<std::string>();
    if (j.contains("dataDir")) c.data_dir = j.at("dataDir").get<std::string>();
    if (j.contains("comparabilityFactor")) {
      c.comparability_factor = j.at("comparabilityFactor").get<double>();
    }
    if (j.contains("overviewThreshold")) {
      c.overview_threshold = j.at("overviewThreshold").get<double>();
    }
    if (j.contains("recommendationLimit")) {
      const auto limit = j.at("recommendationLimit").get<std::int64_t>();
      if (limit <= 0) bad("recommendationLimit must be positive");
      c.recommendation_limit = static_cast<std::size_t>(limit);
    }
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("config: ") + e.what());
  }
  if (j.contains("extremaDefaults")) {
    try {
      c.extrema_defaults = codec::extrema_params_from_json(j.at("extremaDefaults"));
    } catch (const Error& e) {
      bad(std::string("extremaDefaults: ") + e.what());
    }
  }
  return c;
}

nlohmann::json to_json(const ServerConfig& c) {
  return {{"bindAddress", c.bind_address},
          {"dataDir", c.data_dir.string()},
          {"comparabilityFactor", c.comparability_factor},
          {"overviewThreshold", c.overview_threshold},
          {"extremaDefaults", codec::to_json(c.extrema_defaults)},
          {"recommendationLimit", c.recommendation_limit}};
}

ServerConfig load_config(const std::optional<std::filesystem::path>& path) {
  ServerConfig c;
  if (path) {
    std::ifstream in(*path);
    if (!in) bad("cannot read config file " + path->string());
    std::stringstream buf;
    buf << in.rdbuf();
    auto j = nlohmann::json::parse(buf.str(), nullptr, false);
    if (j.is_discarded()) bad("config file " + path->string() + " is not valid JSON");
    c = config_from_json(j);
  }
  if (const char* dir = std::getenv("METRICDECK_DATA_DIR"); dir && *dir) c.data_dir = dir;
  if (const char* bind = std::getenv("METRICDECK_BIND"); bind && *bind) c.bind_address = bind;
  c.validate();
  return c;
}

}  // namespace metricdeck
