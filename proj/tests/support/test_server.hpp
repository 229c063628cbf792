// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <httplib.h>

#include <filesystem>
#include <memory>
#include <string>
#include <thread>

#include <json.hpp>

#include "metricdeck/service.hpp"

// Runs a Server on an ephemeral loopback port with its own thread.
class TestServer {
 public:
  explicit TestServer(const std::filesystem::path& data_dir) {
    metricdeck::ServerConfig config;
    config.bind_address = "127.0.0.1:0";
    config.data_dir = data_dir;
    server_ = std::make_unique<metricdeck::Server>(config);
    server_->set_log_stream(nullptr);
    port_ = server_->bind();
    thread_ = std::thread([this] { server_->run(); });
    server_->wait_until_ready();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
    client_->set_read_timeout(30, 0);
  }
  ~TestServer() {
    client_.reset();
    server_->stop();
    if (thread_.joinable()) thread_.join();
  }
  TestServer(const TestServer&) = delete;
  TestServer& operator=(const TestServer&) = delete;

  int port() const { return port_; }
  httplib::Client& client() { return *client_; }

  struct Reply {
    int status = 0;
    nlohmann::json body;
    httplib::Headers headers;
  };

  Reply get(const std::string& path) { return wrap(client_->Get(path)); }
  Reply del(const std::string& path) { return wrap(client_->Delete(path)); }
  Reply post(const std::string& path, const nlohmann::json& body) {
    return wrap(client_->Post(path, body.dump(), "application/json"));
  }
  Reply put(const std::string& path, const nlohmann::json& body) {
    return wrap(client_->Put(path, body.dump(), "application/json"));
  }

 private:
  static Reply wrap(const httplib::Result& r) {
    Reply out;
    if (!r) return out;
    out.status = r->status;
    out.headers = r->headers;
    if (!r->body.empty()) out.body = nlohmann::json::parse(r->body, nullptr, false);
    return out;
  }

  std::unique_ptr<metricdeck::Server> server_;
  std::unique_ptr<httplib::Client> client_;
  std::thread thread_;
  int port_ = 0;
};
