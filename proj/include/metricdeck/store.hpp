// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string_view>
#include <vector>

#include "metricdeck/document.hpp"
#include "metricdeck/metrics.hpp"

namespace metricdeck {

// One JSON file per canvas and per collection:
//   <dataDir>/canvases/<id>.json
//   <dataDir>/collections/<id>.json
// Writes go to a temporary sibling, are fsynced, then renamed over the target.
// The store does no locking; callers serialize writes per document.
class Store {
 public:
  // Creates the layout if missing. Throws DataDirUnavailable when the
  // directory cannot be created or written.
  explicit Store(std::filesystem::path data_dir);

  const std::filesystem::path& data_dir() const { return dir_; }

  std::vector<MetricCollection> load_collections() const;
  void save_collection(const MetricCollection& collection) const;

  std::vector<Canvas> load_canvases() const;
  void save_canvas(const Canvas& canvas) const;
  void remove_canvas(std::string_view id) const;

 private:
  std::filesystem::path dir_;
};

// Ids are percent-encoded down to [A-Za-z0-9._-] so any id maps to a safe,
// reversible file name.
std::string file_stem_for(std::string_view id);

}  // namespace metricdeck
