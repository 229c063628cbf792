// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Batch versions of the analysis primitives. Each has a serial reference and
// an OpenMP path that must agree with it element for element.

#include <optional>
#include <span>
#include <vector>

#include "metricdeck/analysis.hpp"

namespace metricdeck::kernels {

enum class Execution { kSerial, kParallel };

// Series too short for the window yield an empty signal list.
std::vector<std::vector<ExtremumSignal>> detect_extrema_batch(
    std::span<const std::vector<double>> series, const ExtremaParams& params,
    Execution exec = Execution::kParallel);

struct PairedValues {
  std::vector<double> a;
  std::vector<double> b;
};

// nullopt where the coefficient is undefined (too few pairs, constant side).
std::vector<std::optional<double>> pearson_batch(std::span<const PairedValues> pairs,
                                                 Execution exec = Execution::kParallel);

// nullopt where cv is undefined (too short, zero mean).
std::vector<std::optional<double>> cv_batch(std::span<const std::vector<double>> series,
                                            Execution exec = Execution::kParallel);

int max_threads();

// Calls fn(i) for i in [0, n). fn must not throw.
template <typename Fn>
void for_each_index(std::size_t n, Execution exec, Fn&& fn) {
  const auto count = static_cast<std::ptrdiff_t>(n);
  if (exec == Execution::kSerial) {
    for (std::ptrdiff_t i = 0; i < count; ++i) fn(static_cast<std::size_t>(i));
    return;
  }
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < count; ++i) fn(static_cast<std::size_t>(i));
}

}  // namespace metricdeck::kernels
