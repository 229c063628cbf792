// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#include <atomic>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "metricdeck/config.hpp"
#include "metricdeck/json_codec.hpp"
#include "metricdeck/recommend.hpp"
#include "metricdeck/service.hpp"
#include "metricdeck/store.hpp"

namespace md = metricdeck;

namespace {

std::atomic<bool> g_stop{false};

extern "C" void on_signal(int) { g_stop = true; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw md::Error(md::ErrorCode::kMalformedInput, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

md::ServerConfig configure(const std::optional<std::string>& config_path,
                           const std::optional<std::string>& data_dir) {
  std::optional<std::filesystem::path> path;
  if (config_path) path = *config_path;
  md::ServerConfig config = md::load_config(path);
  if (data_dir) config.data_dir = *data_dir;
  return config;
}

int serve(const md::ServerConfig& config) {
  md::Server server(config);
  const int port = server.bind();
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::thread watcher([&] {
    while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
    server.stop();
  });
  std::clog << md::codec::Json{{"event", "listening"},
                               {"host", config.host()},
                               {"port", port},
                               {"dataDir", config.data_dir.string()}}
                   .dump()
            << std::endl;
  server.run();
  g_stop = true;
  watcher.join();
  std::clog << md::codec::Json{{"event", "stopped"}}.dump() << std::endl;
  return 0;
}

int ingest(const md::ServerConfig& config, const std::string& file, const std::string& manifest_path) {
  md::codec::Json manifest_json = md::codec::parse(slurp(manifest_path));
  md::Manifest manifest = md::codec::manifest_from_json(manifest_json);
  md::InputFormat format = md::InputFormat::kCsv;
  if (manifest_json.contains("format")) {
    if (manifest_json.at("format") == "json") format = md::InputFormat::kJson;
  } else if (std::filesystem::path(file).extension() == ".json") {
    format = md::InputFormat::kJson;
  }
  md::MetricCollection collection = md::ingest_collection(slurp(file), format, manifest);
  md::Store store(config.data_dir);
  md::Workspace ws = md::load_workspace(store);
  ws.catalog.add(std::make_shared<const md::MetricCollection>(collection));  // collision check
  store.save_collection(collection);
  std::cout << md::codec::collection_summary(collection).dump(2) << '\n';
  return 0;
}

const md::Canvas& find_canvas(const md::Workspace& ws, const std::string& id) {
  auto it = ws.canvases.find(id);
  if (it == ws.canvases.end()) throw md::Error(md::ErrorCode::kUnknownTarget, "no canvas '" + id + "'");
  return it->second;
}

int recommend(const md::ServerConfig& config, const std::string& canvas_id, const std::string& scene,
              const std::string& card, std::size_t offset, std::optional<std::size_t> limit) {
  md::Store store(config.data_dir);
  md::Workspace ws = md::load_workspace(store);
  md::RecommendationContext ctx{find_canvas(ws, canvas_id), scene, card};
  md::codec::Json out = md::codec::Json::array();
  for (const auto& rec : md::recommend(ctx, ws.catalog, md::recommend_config(config), offset, limit)) {
    out.push_back(md::to_json(rec));
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

int export_canvas(const md::ServerConfig& config, const std::string& canvas_id) {
  md::Store store(config.data_dir);
  md::Workspace ws = md::load_workspace(store);
  std::cout << md::codec::serialize(find_canvas(ws, canvas_id)) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metricdeck: narrative presentations from time-series metrics"};
  app.require_subcommand(1);
  std::optional<std::string> config_path;
  std::optional<std::string> data_dir;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--data-dir", data_dir, "Data directory (overrides config and environment)");

  auto* serve_cmd = app.add_subcommand("serve", "Run the REST service");

  auto* ingest_cmd = app.add_subcommand("ingest", "Ingest a CSV or JSON file into the data directory");
  std::string ingest_file;
  std::string manifest_file;
  ingest_cmd->add_option("file", ingest_file, "CSV or JSON data file")->required();
  ingest_cmd->add_option("--manifest", manifest_file, "Collection manifest (JSON)")->required();

  auto* rec_cmd = app.add_subcommand("recommend", "Print recommendations for a card as JSON");
  std::string canvas_id;
  std::string scene_id;
  std::string card_id;
  std::size_t offset = 0;
  std::optional<std::size_t> limit;
  rec_cmd->add_option("--canvas", canvas_id)->required();
  rec_cmd->add_option("--scene", scene_id)->required();
  rec_cmd->add_option("--card", card_id)->required();
  rec_cmd->add_option("--offset", offset);
  rec_cmd->add_option("--limit", limit);

  auto* export_cmd = app.add_subcommand("export", "Print a canvas document");
  export_cmd->add_option("--canvas", canvas_id)->required();

  for (auto* sub : {serve_cmd, ingest_cmd, rec_cmd, export_cmd}) {
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--data-dir", data_dir, "Data directory");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const md::ServerConfig config = configure(config_path, data_dir);
    if (*serve_cmd) return serve(config);
    if (*ingest_cmd) return ingest(config, ingest_file, manifest_file);
    if (*rec_cmd) return recommend(config, canvas_id, scene_id, card_id, offset, limit);
    if (*export_cmd) return export_canvas(config, canvas_id);
  } catch (const md::Error& e) {
    std::cerr << md::error_body(e).dump() << '\n';
    return e.code() == md::ErrorCode::kBindFailure ? 3 : 2;
  }
  return 1;
}
