// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <random>

#include "fixtures.hpp"
#include "generators.hpp"
#include "metricdeck/config.hpp"
#include "metricdeck/error.hpp"
#include "metricdeck/json_codec.hpp"
#include "metricdeck/store.hpp"
#include "temp_dir.hpp"

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

class EnvGuard {
 public:
  EnvGuard() {
    unsetenv("METRICDECK_DATA_DIR");
    unsetenv("METRICDECK_BIND");
  }
  ~EnvGuard() {
    unsetenv("METRICDECK_DATA_DIR");
    unsetenv("METRICDECK_BIND");
  }
};

TEST(Config, Defaults) {
  EnvGuard env;
  ServerConfig c = load_config(std::nullopt);
  EXPECT_EQ(c.bind_address, "127.0.0.1:8080");
  EXPECT_EQ(c.host(), "127.0.0.1");
  EXPECT_EQ(c.port(), 8080);
  EXPECT_EQ(c.comparability_factor, 10.0);
  EXPECT_EQ(c.overview_threshold, 0.5);
  EXPECT_EQ(c.recommendation_limit, 5u);
  EXPECT_EQ(c.extrema_defaults, ExtremaParams{});
}

TEST(Config, FileThenEnvironment) {
  EnvGuard env;
  TempDir dir;
  const auto file = dir.path() / "config.json";
  std::ofstream(file) << R"({"bindAddress":"0.0.0.0:9000","dataDir":"/srv/md","overviewThreshold":0.3,
                             "extremaDefaults":{"lag":7,"threshold":3,"influence":0.2}})";
  ServerConfig c = load_config(file);
  EXPECT_EQ(c.port(), 9000);
  EXPECT_EQ(c.data_dir, "/srv/md");
  EXPECT_EQ(c.overview_threshold, 0.3);
  EXPECT_EQ(c.extrema_defaults.lag, 7u);

  setenv("METRICDECK_DATA_DIR", "/tmp/elsewhere", 1);
  setenv("METRICDECK_BIND", "127.0.0.1:0", 1);
  ServerConfig o = load_config(file);
  EXPECT_EQ(o.data_dir, "/tmp/elsewhere");
  EXPECT_EQ(o.port(), 0);
  EXPECT_EQ(o.overview_threshold, 0.3);
}

TEST(Config, Rejections) {
  EnvGuard env;
  auto invalid = [](const char* text) {
    return code_of([&] { config_from_json(nlohmann::json::parse(text)).validate(); });
  };
  EXPECT_EQ(invalid(R"({"colour":1})"), ErrorCode::kInvalidConfig);
  EXPECT_EQ(invalid(R"({"bindAddress":"nohost"})"), ErrorCode::kInvalidConfig);
  EXPECT_EQ(invalid(R"({"bindAddress":"h:70000"})"), ErrorCode::kInvalidConfig);
  EXPECT_EQ(invalid(R"({"overviewThreshold":1.5})"), ErrorCode::kInvalidConfig);
  EXPECT_EQ(invalid(R"({"comparabilityFactor":0})"), ErrorCode::kInvalidConfig);
  EXPECT_EQ(invalid(R"({"recommendationLimit":0})"), ErrorCode::kInvalidConfig);
  EXPECT_EQ(invalid(R"({"extremaDefaults":{"lag":1}})"), ErrorCode::kInvalidConfig);
  EXPECT_EQ(invalid(R"({"dataDir":5})"), ErrorCode::kInvalidConfig);
  EXPECT_EQ(code_of([] { load_config(std::filesystem::path("/nonexistent/config.json")); }),
            ErrorCode::kInvalidConfig);
  setenv("METRICDECK_BIND", "bad", 1);
  EXPECT_EQ(code_of([] { load_config(std::nullopt); }), ErrorCode::kInvalidConfig);
}

TEST(Config, JsonRoundTrip) {
  ServerConfig c;
  c.bind_address = "10.0.0.1:1234";
  c.recommendation_limit = 9;
  ServerConfig back = config_from_json(to_json(c));
  EXPECT_EQ(to_json(back), to_json(c));
}

TEST(Store, FileStemsAreSafeAndDistinct) {
  EXPECT_EQ(file_stem_for("canvas-1"), "canvas-1");
  EXPECT_NE(file_stem_for("a/b"), file_stem_for("a%2Fb"));
  for (const char* id : {"../up", "a b", "\xC3\xA9t\xC3\xA9", "x:y"}) {
    for (char ch : file_stem_for(id)) {
      EXPECT_TRUE(std::isalnum(static_cast<unsigned char>(ch)) || ch == '.' || ch == '_' ||
                  ch == '-' || ch == '%')
          << id;
    }
    EXPECT_EQ(file_stem_for(id).find('/'), std::string::npos);
  }
}

TEST(Store, CanvasPersistence) {
  TempDir dir;
  std::mt19937_64 rng(8);
  std::vector<Canvas> saved;
  {
    Store store(dir.path());
    for (int i = 0; i < 5; ++i) {
      Canvas c = gen::random_canvas(rng);
      c.id = "canvas/" + std::to_string(i);
      store.save_canvas(c);
      saved.push_back(c);
    }
    store.remove_canvas("canvas/3");
  }
  Store reopened(dir.path());
  auto loaded = reopened.load_canvases();
  ASSERT_EQ(loaded.size(), 4u);
  for (const auto& c : loaded) {
    auto it = std::find_if(saved.begin(), saved.end(), [&](const Canvas& s) { return s.id == c.id; });
    ASSERT_NE(it, saved.end());
    EXPECT_EQ(*it, c);
  }
  for (const auto& entry : std::filesystem::directory_iterator(dir.path() / "canvases")) {
    EXPECT_EQ(entry.path().extension(), ".json");
  }
}

TEST(Store, CollectionPersistence) {
  TempDir dir;
  MetricCollection housing = fixtures::collection("housing");
  Store(dir.path()).save_collection(housing);
  auto loaded = Store(dir.path()).load_collections();
  ASSERT_EQ(loaded.size(), 1u);
  EXPECT_EQ(loaded[0].id, housing.id);
  EXPECT_EQ(codec::to_json(loaded[0]), codec::to_json(housing));
}

TEST(Store, UnwritableDirectory) {
  TempDir dir;
  const auto file = dir.path() / "plain-file";
  std::ofstream(file) << "x";
  EXPECT_EQ(code_of([&] { Store s(file / "sub"); }), ErrorCode::kDataDirUnavailable);
}

TEST(Store, CorruptCanvasFileIsReported) {
  TempDir dir;
  Store store(dir.path());
  std::ofstream(dir.path() / "canvases" / "broken.json") << "{\"schemaVersion\":1,";
  EXPECT_THROW(store.load_canvases(), Error);
}

}  // namespace
}  // namespace metricdeck
