// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "metricdeck/config.hpp"
#include "metricdeck/document.hpp"
#include "metricdeck/error.hpp"
#include "metricdeck/metrics.hpp"
#include "metricdeck/recommend.hpp"
#include "metricdeck/store.hpp"

namespace httplib {
class Server;
}

namespace metricdeck {

// HTTP status for an error code: 404 unknown target, 400 malformed request,
// 409 version conflict, 422 for everything the domain rejects.
int http_status(ErrorCode code);
nlohmann::json error_body(const Error& error);

nlohmann::json to_json(const Recommendation& rec);

// Collections and canvases read from a data directory, for headless use.
struct Workspace {
  Catalog catalog;
  std::map<std::string, Canvas> canvases;
};
Workspace load_workspace(const Store& store);

RecommendConfig recommend_config(const ServerConfig& config);

// The REST service. Reads work on immutable snapshots; mutations of one
// canvas are serialized, mutations of different canvases run independently.
class Server {
 public:
  // Opens the store and loads its contents. Throws DataDirUnavailable.
  explicit Server(ServerConfig config);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Structured request log, one JSON object per line. nullptr disables it.
  void set_log_stream(std::ostream* out);

  // Binds the configured address and returns the bound port. Throws BindFailure.
  int bind();
  // Serves until stop(). Requires bind().
  void run();
  void stop();
  void wait_until_ready() const;

  const ServerConfig& config() const { return config_; }

 private:
  struct CanvasSlot;

  void install_routes();
  std::shared_ptr<const Catalog> catalog_snapshot() const;
  std::shared_ptr<CanvasSlot> slot(std::string_view canvas_id) const;
  std::shared_ptr<const Canvas> canvas_snapshot(std::string_view canvas_id) const;

  nlohmann::json ingest(const nlohmann::json& manifest, std::string_view source,
                        InputFormat format);
  nlohmann::json create_canvas(const nlohmann::json& body);
  template <typename Fn>
  nlohmann::json mutate(std::string_view canvas_id, const nlohmann::json& body, Fn&& fn);

  ServerConfig config_;
  Store store_;
  std::unique_ptr<httplib::Server> http_;
  std::ostream* log_ = nullptr;
  std::mutex log_mu_;

  mutable std::mutex catalog_mu_;  // guards catalog_ pointer
  std::mutex ingest_mu_;           // serializes collection writers
  std::shared_ptr<const Catalog> catalog_;

  mutable std::mutex canvases_mu_;
  std::map<std::string, std::shared_ptr<CanvasSlot>, std::less<>> canvases_;
  std::int64_t canvas_counter_ = 0;
};

}  // namespace metricdeck
