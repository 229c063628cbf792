// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#include "metricdeck/service.hpp"

#include <httplib.h>

#include <charconv>
#include <chrono>
#include <utility>

#include "metricdeck/json_codec.hpp"
#include "metricdeck/kernels.hpp"
#include "metricdeck/render.hpp"
#include "metricdeck/timexpr.hpp"
#include "metricdeck/transform.hpp"

namespace metricdeck {

using codec::Json;

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownTarget: return 404;
    case ErrorCode::kMalformedInput:
    case ErrorCode::kSchemaViolation:
    case ErrorCode::kVersionMismatch:
    case ErrorCode::kBadPosition:
    case ErrorCode::kInvalidConfig: return 400;
    case ErrorCode::kVersionConflict: return 409;
    case ErrorCode::kDataDirUnavailable:
    case ErrorCode::kBindFailure: return 500;
    default: return 422;
  }
}

Json error_body(const Error& error) {
  Json j = {{"error", error_code_name(error.code())}, {"message", error.what()}};
  if (!error.details().empty()) j["details"] = error.details();
  return j;
}

Json to_json(const Recommendation& rec) {
  return {{"kind", recommendation_kind_name(rec.kind)},
          {"label", rec.label},
          {"score", rec.score},
          {"spec", codec::to_json(rec.spec)}};
}

Workspace load_workspace(const Store& store) {
  Workspace ws;
  for (auto& c : store.load_collections()) {
    ws.catalog.add(std::make_shared<const MetricCollection>(std::move(c)));
  }
  for (auto& c : store.load_canvases()) {
    std::string id = c.id;
    ws.canvases.emplace(std::move(id), std::move(c));
  }
  return ws;
}

RecommendConfig recommend_config(const ServerConfig& config) {
  RecommendConfig rc;
  rc.extrema = config.extrema_defaults;
  rc.overview_threshold = config.overview_threshold;
  rc.limit = config.recommendation_limit;
  return rc;
}

struct Server::CanvasSlot {
  std::mutex write_mu;  // held for the whole read-modify-write of a mutation
  bool deleted = false;

  std::shared_ptr<const Canvas> load() const {
    std::lock_guard lock(ptr_mu);
    return doc;
  }
  void publish(std::shared_ptr<const Canvas> next) {
    std::lock_guard lock(ptr_mu);
    doc = std::move(next);
  }

  mutable std::mutex ptr_mu;
  std::shared_ptr<const Canvas> doc;
};

namespace {

struct Reply {
  int status = 200;
  Json body;
};

thread_local std::chrono::steady_clock::time_point request_start;

Date today() {
  const auto days = std::chrono::floor<std::chrono::days>(std::chrono::system_clock::now());
  return Date::from_serial(static_cast<std::int32_t>(days.time_since_epoch().count()));
}

[[noreturn]] void schema(const std::string& message) {
  throw Error(ErrorCode::kSchemaViolation, message);
}

Json body_json(const httplib::Request& req) {
  if (req.body.empty()) return Json::object();
  Json j = codec::parse(req.body);
  if (!j.is_object()) schema("request body must be a JSON object");
  return j;
}

const Json& member(const Json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end()) schema(std::string("missing member '") + key + "'");
  return *it;
}

std::string string_member(const Json& body, const char* key) {
  const Json& v = member(body, key);
  if (!v.is_string()) schema(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

std::optional<std::string> optional_string(const Json& body, const char* key) {
  if (!body.contains(key) || body.at(key).is_null()) return std::nullopt;
  return string_member(body, key);
}

std::size_t position_member(const Json& body, const char* key, std::size_t fallback) {
  if (!body.contains(key) || body.at(key).is_null()) return fallback;
  const Json& v = body.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw Error(ErrorCode::kBadPosition, std::string("'") + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::optional<std::size_t> query_size(const httplib::Request& req, const char* key) {
  if (!req.has_param(key)) return std::nullopt;
  const std::string text = req.get_param_value(key);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::kMalformedInput,
                std::string("query parameter '") + key + "' must be a non-negative integer");
  }
  return value;
}

std::string required_query(const httplib::Request& req, const char* key) {
  if (!req.has_param(key)) {
    throw Error(ErrorCode::kMalformedInput, std::string("missing query parameter '") + key + "'");
  }
  return req.get_param_value(key);
}

Date date_member(const Json& body, const char* key) {
  try {
    return Date::parse(string_member(body, key));
  } catch (const Error& e) {
    schema(std::string("'") + key + "': " + e.what());
  }
}

template <typename F>
httplib::Server::Handler wrap(F f) {
  return [f = std::move(f)](const httplib::Request& req, httplib::Response& res) {
    Reply reply;
    try {
      reply = f(req);
    } catch (const Error& e) {
      reply = {http_status(e.code()), error_body(e)};
    } catch (const Json::exception& e) {
      reply = {400, {{"error", "SchemaViolation"}, {"message", e.what()}}};
    } catch (const std::exception& e) {
      reply = {500, {{"error", "Internal"}, {"message", e.what()}}};
    }
    res.status = reply.status;
    if (reply.status != 204) res.set_content(reply.body.dump(), "application/json");
  };
}

std::string_view match(const httplib::Request& req, std::size_t i) {
  return {req.matches[static_cast<int>(i)].first, req.matches[static_cast<int>(i)].second};
}

}  // namespace

Server::Server(ServerConfig config)
    : config_(std::move(config)),
      store_(config_.data_dir),
      http_(std::make_unique<httplib::Server>()),
      log_(&std::clog) {
  Workspace ws = load_workspace(store_);
  catalog_ = std::make_shared<const Catalog>(std::move(ws.catalog));
  for (auto& [id, canvas] : ws.canvases) {
    auto s = std::make_shared<CanvasSlot>();
    s->doc = std::make_shared<const Canvas>(std::move(canvas));
    canvases_.emplace(id, std::move(s));
  }
  canvas_counter_ = static_cast<std::int64_t>(canvases_.size());
  // httplib's default adds SO_REUSEPORT, which lets a second server share a
  // port that is already taken.
  http_->set_socket_options([](socket_t sock) {
    int yes = 1;
    ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
  });
  install_routes();
}

Server::~Server() { stop(); }

void Server::set_log_stream(std::ostream* out) {
  std::lock_guard lock(log_mu_);
  log_ = out;
}

int Server::bind() {
  const int port = config_.port();
  if (port == 0) {
    const int bound = http_->bind_to_any_port(config_.host());
    if (bound > 0) return bound;
  } else if (http_->bind_to_port(config_.host(), port)) {
    return port;
  }
  throw Error(ErrorCode::kBindFailure, "cannot bind " + config_.bind_address);
}

void Server::run() { http_->listen_after_bind(); }

void Server::stop() {
  if (http_ && http_->is_running()) http_->stop();
}

void Server::wait_until_ready() const { http_->wait_until_ready(); }

std::shared_ptr<const Catalog> Server::catalog_snapshot() const {
  std::lock_guard lock(catalog_mu_);
  return catalog_;
}

std::shared_ptr<Server::CanvasSlot> Server::slot(std::string_view canvas_id) const {
  std::lock_guard lock(canvases_mu_);
  auto it = canvases_.find(canvas_id);
  if (it == canvases_.end()) {
    throw Error(ErrorCode::kUnknownTarget, "no canvas '" + std::string(canvas_id) + "'");
  }
  return it->second;
}

std::shared_ptr<const Canvas> Server::canvas_snapshot(std::string_view canvas_id) const {
  return slot(canvas_id)->load();
}

Json Server::ingest(const Json& manifest_json, std::string_view source, InputFormat format) {
  Manifest manifest = codec::manifest_from_json(manifest_json);
  auto collection = std::make_shared<const MetricCollection>(
      ingest_collection(source, format, manifest));
  std::lock_guard writer(ingest_mu_);
  Catalog next = *catalog_snapshot();
  next.add(collection);
  store_.save_collection(*collection);
  {
    std::lock_guard lock(catalog_mu_);
    catalog_ = std::make_shared<const Catalog>(std::move(next));
  }
  return codec::collection_summary(*collection);
}

Json Server::create_canvas(const Json& body) {
  Canvas canvas;
  if (body.contains("schemaVersion")) {
    canvas = codec::canvas_from_json(body);
  } else {
    for (const auto& [key, _] : body.items()) {
      if (key != "id" && key != "title" && key != "collectionIds" &&
          key != "recommendationsEnabled") {
        schema("unknown member '" + key + "' in canvas request");
      }
    }
    if (auto id = optional_string(body, "id")) canvas.id = *id;
    if (auto title = optional_string(body, "title")) canvas.title = *title;
    if (body.contains("collectionIds")) {
      canvas.collection_ids = body.at("collectionIds").get<std::vector<std::string>>();
    }
    if (body.contains("recommendationsEnabled")) {
      canvas.recommendations_enabled = body.at("recommendationsEnabled").get<bool>();
    }
  }
  std::lock_guard lock(canvases_mu_);
  if (canvas.id.empty()) {
    do {
      canvas.id = "canvas-" + std::to_string(++canvas_counter_);
    } while (canvases_.count(canvas.id));
  } else if (canvases_.count(canvas.id)) {
    throw Error(ErrorCode::kVersionConflict, "canvas '" + canvas.id + "' already exists");
  }
  store_.save_canvas(canvas);
  auto s = std::make_shared<CanvasSlot>();
  s->doc = std::make_shared<const Canvas>(canvas);
  canvases_.emplace(canvas.id, std::move(s));
  return codec::to_json(canvas);
}

template <typename Fn>
Json Server::mutate(std::string_view canvas_id, const Json& body, Fn&& fn) {
  auto s = slot(canvas_id);
  std::lock_guard writer(s->write_mu);
  if (s->deleted) {
    throw Error(ErrorCode::kUnknownTarget, "no canvas '" + std::string(canvas_id) + "'");
  }
  auto current = s->load();
  if (body.contains("version") && !body.at("version").is_null()) {
    const auto expected = body.at("version").get<std::int64_t>();
    if (expected != current->version) {
      throw Error(ErrorCode::kVersionConflict,
                  "canvas is at version " + std::to_string(current->version) +
                      ", request expected " + std::to_string(expected));
    }
  }
  auto catalog = catalog_snapshot();
  Canvas next = fn(*current, *catalog);
  validate_ids(next);
  store_.save_canvas(next);
  auto published = std::make_shared<const Canvas>(std::move(next));
  s->publish(published);
  return codec::to_json(*published);
}

void Server::install_routes() {
  auto& http = *http_;

  http.set_pre_routing_handler([](const httplib::Request&, httplib::Response&) {
    request_start = std::chrono::steady_clock::now();
    return httplib::Server::HandlerResponse::Unhandled;
  });
  http.set_logger([this](const httplib::Request& req, const httplib::Response& res) {
    std::lock_guard lock(log_mu_);
    if (!log_) return;
    const auto elapsed = std::chrono::duration<double, std::milli>(
        std::chrono::steady_clock::now() - request_start);
    const auto now = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::system_clock::now().time_since_epoch());
    Json line = {{"ts", now.count()},     {"method", req.method}, {"path", req.path},
                 {"status", res.status},  {"ms", elapsed.count()}, {"bytes", res.body.size()}};
    *log_ << line.dump() << '\n';
    log_->flush();
  });
  http.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (!res.body.empty()) return;
    Json j = {{"error", res.status == 404 ? "UnknownTarget" : "HttpError"},
              {"message", "no route for " + req.method + " " + req.path}};
    res.set_content(j.dump(), "application/json");
  });

  http.Get("/health", wrap([](const httplib::Request&) {
    return Reply{200, {{"status", "ok"}}};
  }));

  // Collections.
  http.Post("/collections", wrap([this](const httplib::Request& req) {
    if (req.is_multipart_form_data()) {
      if (!req.has_file("manifest") || !req.has_file("file")) {
        schema("multipart ingest needs 'manifest' and 'file' parts");
      }
      Json manifest = codec::parse(req.get_file_value("manifest").content);
      const auto file = req.get_file_value("file");
      std::string format_name;
      if (req.has_file("format")) {
        format_name = req.get_file_value("format").content;
      } else if (manifest.is_object() && manifest.contains("format")) {
        format_name = manifest.at("format").get<std::string>();
      } else {
        const bool json_name = file.filename.size() >= 5 &&
                               file.filename.compare(file.filename.size() - 5, 5, ".json") == 0;
        format_name = json_name || file.content_type == "application/json" ? "json" : "csv";
      }
      InputFormat format = InputFormat::kCsv;
      if (format_name == "json" || format_name == "JSON") {
        format = InputFormat::kJson;
      } else if (format_name != "csv" && format_name != "CSV") {
        schema("unknown format '" + format_name + "'");
      }
      return Reply{201, ingest(manifest, file.content, format)};
    }
    Json body = body_json(req);
    const Json& manifest = member(body, "manifest");
    for (const auto& [key, _] : body.items()) {
      if (key != "manifest" && key != "rows" && key != "csv") {
        schema("unknown member '" + key + "' in ingest request");
      }
    }
    if (body.contains("csv")) {
      return Reply{201, ingest(manifest, string_member(body, "csv"), InputFormat::kCsv)};
    }
    return Reply{201, ingest(manifest, member(body, "rows").dump(), InputFormat::kJson)};
  }));
  http.Get("/collections", wrap([this](const httplib::Request&) {
    Json out = Json::array();
    for (const auto& c : catalog_snapshot()->collections()) {
      out.push_back(codec::collection_summary(*c));
    }
    return Reply{200, out};
  }));
  http.Get(R"(/collections/([^/]+))", wrap([this](const httplib::Request& req) {
    auto catalog = catalog_snapshot();
    const MetricCollection* c = catalog->find_collection(match(req, 1));
    if (!c) {
      throw Error(ErrorCode::kUnknownTarget, "no collection '" + std::string(match(req, 1)) + "'");
    }
    if (req.has_param("rows") && req.get_param_value("rows") == "true") {
      return Reply{200, codec::to_json(*c)};
    }
    return Reply{200, codec::collection_summary(*c)};
  }));

  // Canvas documents.
  http.Post("/canvases", wrap([this](const httplib::Request& req) {
    return Reply{201, create_canvas(body_json(req))};
  }));
  http.Get("/canvases", wrap([this](const httplib::Request&) {
    Json out = Json::array();
    std::vector<std::shared_ptr<CanvasSlot>> slots;
    {
      std::lock_guard lock(canvases_mu_);
      for (const auto& [_, s] : canvases_) slots.push_back(s);
    }
    for (const auto& s : slots) {
      auto c = s->load();
      out.push_back({{"id", c->id}, {"title", c->title}, {"version", c->version}});
    }
    return Reply{200, out};
  }));
  http.Get(R"(/canvases/([^/]+))", wrap([this](const httplib::Request& req) {
    return Reply{200, codec::to_json(*canvas_snapshot(match(req, 1)))};
  }));
  http.Put(R"(/canvases/([^/]+))", wrap([this](const httplib::Request& req) {
    Json body = body_json(req);
    Canvas replacement = codec::canvas_from_json(body);
    const std::string id(match(req, 1));
    if (replacement.id != id) schema("canvas id in body does not match the path");
    return Reply{200, mutate(id, body, [&](const Canvas& current, const Catalog&) {
                   Canvas next = replacement;
                   next.version = current.version + 1;
                   next.next_id = std::max(next.next_id, current.next_id);
                   return next;
                 })};
  }));
  http.Delete(R"(/canvases/([^/]+))", wrap([this](const httplib::Request& req) {
    const std::string id(match(req, 1));
    auto s = slot(id);
    std::lock_guard writer(s->write_mu);
    if (s->deleted) throw Error(ErrorCode::kUnknownTarget, "no canvas '" + id + "'");
    store_.remove_canvas(id);
    s->deleted = true;
    std::lock_guard lock(canvases_mu_);
    canvases_.erase(id);
    return Reply{204, nullptr};
  }));
  http.Post(R"(/canvases/([^/]+)/settings)", wrap([this](const httplib::Request& req) {
    Json body = body_json(req);
    return Reply{200, mutate(match(req, 1), body, [&](const Canvas& c, const Catalog&) {
                   Canvas next = c;
                   if (auto title = optional_string(body, "title")) next = set_title(next, *title);
                   if (body.contains("recommendationsEnabled")) {
                     next = set_recommendations_enabled(
                         next, body.at("recommendationsEnabled").get<bool>());
                   }
                   return next;
                 })};
  }));

  // Scenes and cards.
  http.Post(R"(/canvases/([^/]+)/scenes)", wrap([this](const httplib::Request& req) {
    Json body = body_json(req);
    return Reply{201, mutate(match(req, 1), body, [&](const Canvas& c, const Catalog&) {
                   return add_scene(c, position_member(body, "position", c.scenes.size()));
                 })};
  }));
  http.Delete(R"(/canvases/([^/]+)/scenes/([^/]+))", wrap([this](const httplib::Request& req) {
    const std::string scene(match(req, 2));
    return Reply{200, mutate(match(req, 1), Json::object(), [&](const Canvas& c, const Catalog&) {
                   return remove_scene(c, scene);
                 })};
  }));
  http.Post(R"(/canvases/([^/]+)/cards)", wrap([this](const httplib::Request& req) {
    Json body = body_json(req);
    const std::string scene = string_member(body, "scene");
    Card card = codec::card_from_json(member(body, "card"));
    return Reply{201, mutate(match(req, 1), body, [&](const Canvas& c, const Catalog& catalog) {
                   if (const auto* viz = std::get_if<VizCardSpec>(&card); viz && viz->populated()) {
                     validate_viz_card(*viz, catalog);
                   }
                   const std::size_t pos =
                       position_member(body, "position", get_scene(c, scene).cards.size());
                   return add_card(c, scene, card, pos);
                 })};
  }));
  http.Put(R"(/canvases/([^/]+)/cards/([^/]+))", wrap([this](const httplib::Request& req) {
    Json body = body_json(req);
    VizCardSpec spec = codec::viz_card_from_json(member(body, "card"));
    spec.id = std::string(match(req, 2));
    return Reply{200, mutate(match(req, 1), body, [&](const Canvas& c, const Catalog& catalog) {
                   if (spec.populated()) validate_viz_card(spec, catalog);
                   return update_viz_card(c, spec);
                 })};
  }));
  http.Delete(R"(/canvases/([^/]+)/cards/([^/]+))", wrap([this](const httplib::Request& req) {
    const std::string card(match(req, 2));
    return Reply{200, mutate(match(req, 1), Json::object(), [&](const Canvas& c, const Catalog&) {
                   return remove_card(c, card);
                 })};
  }));
  http.Post(R"(/canvases/([^/]+)/reorder)", wrap([this](const httplib::Request& req) {
    Json body = body_json(req);
    return Reply{200, mutate(match(req, 1), body, [&](const Canvas& c, const Catalog&) {
                   if (!body.contains("index")) schema("missing member 'index'");
                   const std::size_t index = position_member(body, "index", 0);
                   if (auto card = optional_string(body, "card")) {
                     get_card(c, *card);
                     const std::string scene = optional_string(body, "scene").value_or(
                         c.scenes[locate_card(c, *card)->scene].id);
                     return reorder_card(c, *card, scene, index);
                   }
                   return reorder_scene(c, string_member(body, "scene"), index);
                 })};
  }));

  // Card transforms.
  const auto viz = [](const Canvas& c, std::string_view id) -> const VizCardSpec& {
    return get_viz_card(c, id);
  };
  http.Post(R"(/canvases/([^/]+)/cards/([^/]+)/split)",
            wrap([this, viz](const httplib::Request& req) {
              Json body = body_json(req);
              const std::string id(match(req, 2));
              const Timestamp at = Timestamp::parse(string_member(body, "at"));
              const SplitMode mode =
                  parse_split_mode(optional_string(body, "mode").value_or("SplitIntoTwo"));
              return Reply{200, mutate(match(req, 1), body, [&](const Canvas& c, const Catalog& cat) {
                             const auto& card = viz(c, id);
                             return replace_card(c, id, split_at(card, card_facts(card, cat), at, mode));
                           })};
            }));
  http.Post(R"(/canvases/([^/]+)/cards/([^/]+)/retain)",
            wrap([this, viz](const httplib::Request& req) {
              Json body = body_json(req);
              const std::string id(match(req, 2));
              const TimeInterval span = codec::interval_from_json(member(body, "span"));
              return Reply{200, mutate(match(req, 1), body, [&](const Canvas& c, const Catalog& cat) {
                             const auto& card = viz(c, id);
                             return replace_card(c, id, {retain_span(card, card_facts(card, cat), span)});
                           })};
            }));
  http.Post(R"(/canvases/([^/]+)/cards/([^/]+)/exclude)",
            wrap([this, viz](const httplib::Request& req) {
              Json body = body_json(req);
              const std::string id(match(req, 2));
              const TimeInterval span = codec::interval_from_json(member(body, "span"));
              return Reply{200, mutate(match(req, 1), body, [&](const Canvas& c, const Catalog& cat) {
                             const auto& card = viz(c, id);
                             auto parts = exclude_span(card, card_facts(card, cat), span);
                             return replace_card(c, id, {parts[0], parts[1]});
                           })};
            }));
  http.Post(R"(/canvases/([^/]+)/cards/([^/]+)/axis)",
            wrap([this, viz](const httplib::Request& req) {
              Json body = body_json(req);
              const std::string id(match(req, 2));
              return Reply{200, mutate(match(req, 1), body, [&](const Canvas& c, const Catalog& cat) {
                             VizCardSpec card = viz(c, id);
                             if (auto y = optional_string(body, "yMode")) card.axis.y_mode = parse_y_mode(*y);
                             if (auto x = optional_string(body, "xMode")) card.axis.x_mode = parse_x_mode(*x);
                             if (card.axis.y_mode == YMode::kIndexedPercent && card.populated()) {
                               index_percent(collate(card_series(card, cat)));  // ZeroBaseValue
                             }
                             return update_viz_card(c, card);
                           })};
            }));
  http.Post(R"(/canvases/([^/]+)/cards/([^/]+)/coordinate)",
            wrap([this, viz](const httplib::Request& req) {
              Json body = body_json(req);
              const std::string id(match(req, 2));
              const Axis axis = parse_axis(string_member(body, "axis"));
              const bool off = body.contains("off") && body.at("off").get<bool>();
              return Reply{200, mutate(match(req, 1), body, [&](const Canvas& c, const Catalog& cat) {
                             VizCardSpec right = viz(c, id);
                             if (off) {
                               (axis == Axis::kY ? right.axis.coordinated_y_with
                                                 : right.axis.coordinated_x_with)
                                   .reset();
                               return update_viz_card(c, right);
                             }
                             const Card* left = left_neighbor(c, id);
                             if (auto with = optional_string(body, "with");
                                 with && (!left || card_id(*left) != *with)) {
                               throw Error(ErrorCode::kNotAdjacent,
                                           "'" + *with + "' is not the left neighbour of '" + id + "'");
                             }
                             const auto* left_viz = left ? std::get_if<VizCardSpec>(left) : nullptr;
                             if (!left_viz) {
                               throw Error(ErrorCode::kNotAdjacent,
                                           "card '" + id + "' has no VizCard to its left");
                             }
                             return update_viz_card(
                                 c, coordinate_axes(right, card_facts(right, cat), *left_viz,
                                                    card_facts(*left_viz, cat), axis));
                           })};
            }));
  http.Post(R"(/canvases/([^/]+)/cards/([^/]+)/merge)",
            wrap([this, viz](const httplib::Request& req) {
              Json body = body_json(req);
              const std::string id(match(req, 2));
              const std::string with = string_member(body, "with");
              return Reply{200, mutate(match(req, 1), body, [&](const Canvas& c, const Catalog& cat) {
                             if (!adjacent(c, id, with)) {
                               throw Error(ErrorCode::kNotAdjacent,
                                           "cards '" + id + "' and '" + with + "' are not adjacent");
                             }
                             const auto& a = viz(c, id);
                             const auto& b = viz(c, with);
                             const auto fa = card_facts(a, cat);
                             const auto fb = card_facts(b, cat);
                             return replace_with_merged(
                                 c, id, with, merge_cards(a, fa, b, fb, config_.comparability_factor));
                           })};
            }));
  http.Get(R"(/canvases/([^/]+)/cards/([^/]+)/merge)",
           wrap([this, viz](const httplib::Request& req) {
             auto canvas = canvas_snapshot(match(req, 1));
             auto cat = catalog_snapshot();
             const auto& a = viz(*canvas, match(req, 2));
             const auto& b = viz(*canvas, required_query(req, "with"));
             return Reply{200, codec::to_json(can_merge(a, card_facts(a, *cat), b, card_facts(b, *cat),
                                                        config_.comparability_factor))};
           }));
  http.Post(R"(/canvases/([^/]+)/cards/([^/]+)/annotations)",
            wrap([this](const httplib::Request& req) {
              Json body = body_json(req);
              const std::string id(match(req, 2));
              Json spec = body;
              spec.erase("version");
              Annotation annotation = codec::annotation_from_json(spec);
              return Reply{200, mutate(match(req, 1), body, [&](const Canvas& c, const Catalog& cat) {
                             const VizCardSpec& card = get_viz_card(c, id);
                             if (card.populated()) {
                               auto [lo, hi] = resolved_y_domain(c, card, cat);
                               if (annotation.y_value < lo || annotation.y_value > hi) {
                                 throw Error(ErrorCode::kBadPosition,
                                             "yValue " + std::to_string(annotation.y_value) +
                                                 " lies outside the card's y-domain");
                               }
                             }
                             return add_annotation(c, id, annotation);
                           })};
            }));
  http.Delete(R"(/canvases/([^/]+)/cards/([^/]+)/annotations)",
              wrap([this](const httplib::Request& req) {
                const std::string id(match(req, 2));
                return Reply{200, mutate(match(req, 1), Json::object(),
                                         [&](const Canvas& c, const Catalog&) {
                                           return clear_annotations(c, id);
                                         })};
              }));
  http.Post(R"(/canvases/([^/]+)/cards/([^/]+)/obfuscations)",
            wrap([this, viz](const httplib::Request& req) {
              Json body = body_json(req);
              const std::string id(match(req, 2));
              const TimeInterval span = codec::interval_from_json(member(body, "span"));
              const bool on = !body.contains("on") || body.at("on").get<bool>();
              return Reply{200, mutate(match(req, 1), body, [&](const Canvas& c, const Catalog& cat) {
                             return set_obfuscation(c, id, span, on,
                                                    effective_domain(viz(c, id), cat));
                           })};
            }));
  http.Post(R"(/canvases/([^/]+)/cards/([^/]+)/duplicate)",
            wrap([this](const httplib::Request& req) {
              Json body = body_json(req);
              const std::string id(match(req, 2));
              return Reply{201, mutate(match(req, 1), body, [&](const Canvas& c, const Catalog&) {
                             return duplicate_card(c, id);
                           })};
            }));

  // Text cards.
  http.Post(R"(/canvases/([^/]+)/cards/([^/]+)/paragraphs)",
            wrap([this](const httplib::Request& req) {
              Json body = body_json(req);
              const std::string id(match(req, 2));
              const std::string text = string_member(body, "text");
              return Reply{201, mutate(match(req, 1), body, [&](const Canvas& c, const Catalog&) {
                             return add_paragraph(c, id, text);
                           })};
            }));
  http.Post(R"(/canvases/([^/]+)/cards/([^/]+)/paragraphs/([^/]+)/link)",
            wrap([this, viz](const httplib::Request& req) {
              Json body = body_json(req);
              const std::string text_id(match(req, 2));
              const std::string para_id(match(req, 3));
              const auto target = optional_string(body, "target");
              return Reply{200, mutate(match(req, 1), body, [&](const Canvas& c, const Catalog& cat) {
                             if (!target) return set_paragraph_link(c, text_id, para_id, std::nullopt);
                             const TimeInterval domain = effective_domain(viz(c, *target), cat);
                             const Date reference = body.contains("referenceDate")
                                                        ? date_member(body, "referenceDate")
                                                        : domain.end();
                             const Paragraph& p = get_paragraph(c, text_id, para_id);
                             return set_paragraph_link(
                                 c, text_id, para_id,
                                 link_paragraph(para_id, p.text, *target, domain, reference));
                           })};
            }));
  http.Get(R"(/canvases/([^/]+)/cards/([^/]+)/paragraphs/([^/]+)/highlight)",
           wrap([this, viz](const httplib::Request& req) {
             auto canvas = canvas_snapshot(match(req, 1));
             const Paragraph& p = get_paragraph(*canvas, match(req, 2), match(req, 3));
             if (!p.link) {
               throw Error(ErrorCode::kUnknownTarget, "paragraph '" + p.id + "' is not linked");
             }
             const std::size_t index = query_size(req, "mention").value_or(0);
             const TimeInterval domain =
                 effective_domain(viz(*canvas, p.link->target_card_id), *catalog_snapshot());
             return Reply{200, {{"cardId", p.link->target_card_id},
                                {"span", codec::to_json(highlight_span(*p.link, index, domain))}}};
           }));

  // Reads.
  http.Get(R"(/canvases/([^/]+)/recommendations)", [this](const httplib::Request& req,
                                                          httplib::Response& res) {
    std::size_t total = 0;
    wrap([&](const httplib::Request& r) {
      auto canvas = canvas_snapshot(match(r, 1));
      auto cat = catalog_snapshot();
      RecommendationContext ctx{*canvas, required_query(r, "scene"), required_query(r, "card")};
      const RecommendConfig rc = recommend_config(config_);
      const std::size_t limit = query_size(r, "limit").value_or(rc.limit);
      const std::size_t offset = query_size(r, "offset").value_or(0);
      auto all = rank_recommendations(ctx, *cat, rc);
      total = all.size();
      Json items = Json::array();
      for (std::size_t i = offset; i < all.size() && i < offset + limit; ++i) {
        items.push_back(to_json(all[i]));
      }
      return Reply{200, items};
    })(req, res);
    if (res.status == 200) res.set_header("X-Total-Count", std::to_string(total));
  });
  http.Get(R"(/canvases/([^/]+)/cards/([^/]+)/frame)", wrap([this](const httplib::Request& req) {
    auto canvas = canvas_snapshot(match(req, 1));
    return Reply{200, to_json(render_frame(*canvas, match(req, 2), *catalog_snapshot()))};
  }));
  http.Get(R"(/canvases/([^/]+)/summary)", wrap([this](const httplib::Request& req) {
    auto canvas = canvas_snapshot(match(req, 1));
    Json scenes = Json::array();
    for (const auto& s : scene_summaries(*canvas, *catalog_snapshot())) {
      scenes.push_back(codec::to_json(s));
    }
    return Reply{200, {{"canvasId", canvas->id}, {"version", canvas->version}, {"scenes", scenes}}};
  }));

  // Stateless analysis.
  http.Post("/parse", wrap([](const httplib::Request& req) {
    Json body = body_json(req);
    const std::string text = string_member(body, "text");
    const Date reference = body.contains("referenceDate") ? date_member(body, "referenceDate")
                                                          : today();
    Json mentions = Json::array();
    for (const auto& m : parse_time_expressions(text, reference)) {
      mentions.push_back(codec::to_json(m));
    }
    return Reply{200, mentions};
  }));
  http.Post("/analysis/extrema", wrap([this](const httplib::Request& req) {
    Json body = body_json(req);
    const auto values = member(body, "values").get<std::vector<double>>();
    const ExtremaParams params = body.contains("params")
                                     ? codec::extrema_params_from_json(body.at("params"))
                                     : config_.extrema_defaults;
    Json signals = Json::array();
    for (const auto& s : detect_extrema(values, params)) signals.push_back(codec::to_json(s));
    return Reply{200, {{"signals", signals}}};
  }));
  http.Post("/analysis/correlation", wrap([](const httplib::Request& req) {
    Json body = body_json(req);
    const auto a = member(body, "a").get<std::vector<double>>();
    const auto b = member(body, "b").get<std::vector<double>>();
    return Reply{200, {{"r", pearson_r(a, b)}}};
  }));
}

}  // namespace metricdeck
