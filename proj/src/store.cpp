// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#include "metricdeck/store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "metricdeck/error.hpp"
#include "metricdeck/json_codec.hpp"

namespace metricdeck {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void unavailable(const fs::path& path, const std::string& what) {
  throw Error(ErrorCode::kDataDirUnavailable, path.string() + ": " + what);
}

void write_atomically(const fs::path& target, const std::string& bytes) {
  fs::path tmp = target;
  tmp += ".tmp";
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  if (fd < 0) unavailable(tmp, std::strerror(errno));
  std::size_t written = 0;
  while (written < bytes.size()) {
    const ssize_t n = ::write(fd, bytes.data() + written, bytes.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      const std::string reason = std::strerror(errno);
      ::close(fd);
      unavailable(tmp, reason);
    }
    written += static_cast<std::size_t>(n);
  }
  if (::fsync(fd) != 0 || ::close(fd) != 0) unavailable(tmp, std::strerror(errno));
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) unavailable(target, ec.message());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) unavailable(path, "cannot read");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<fs::path> json_files(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::string file_stem_for(std::string_view id) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : id) {
    if (std::isalnum(c) || c == '-' || c == '_' || (c == '.' && !out.empty())) {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 15]);
    }
  }
  return out;
}

Store::Store(fs::path data_dir) : dir_(std::move(data_dir)) {
  std::error_code ec;
  for (const char* sub : {"canvases", "collections"}) {
    fs::create_directories(dir_ / sub, ec);
    if (ec) unavailable(dir_ / sub, ec.message());
  }
  write_atomically(dir_ / ".probe", "ok");
  fs::remove(dir_ / ".probe", ec);
}

std::vector<MetricCollection> Store::load_collections() const {
  std::vector<MetricCollection> out;
  for (const auto& path : json_files(dir_ / "collections")) {
    try {
      out.push_back(codec::collection_from_json(codec::parse(read_file(path))));
    } catch (const Error& e) {
      throw Error(e.code(), path.string() + ": " + e.what(), e.details());
    }
  }
  return out;
}

void Store::save_collection(const MetricCollection& collection) const {
  write_atomically(dir_ / "collections" / (file_stem_for(collection.id) + ".json"),
                   codec::to_json(collection).dump());
}

std::vector<Canvas> Store::load_canvases() const {
  std::vector<Canvas> out;
  for (const auto& path : json_files(dir_ / "canvases")) {
    try {
      out.push_back(codec::deserialize(read_file(path)));
    } catch (const Error& e) {
      throw Error(e.code(), path.string() + ": " + e.what(), e.details());
    }
  }
  return out;
}

void Store::save_canvas(const Canvas& canvas) const {
  write_atomically(dir_ / "canvases" / (file_stem_for(canvas.id) + ".json"),
                   codec::serialize(canvas));
}

void Store::remove_canvas(std::string_view id) const {
  std::error_code ec;
  fs::remove(dir_ / "canvases" / (file_stem_for(id) + ".json"), ec);
  if (ec) unavailable(dir_, ec.message());
}

}  // namespace metricdeck
