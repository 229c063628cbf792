// Copyright 2026 The metricdeck Authors.
// SPDX-License-Identifier: Apache-2.0

#include <omp.h>

#include "metricdeck/error.hpp"
#include "metricdeck/kernels.hpp"

namespace metricdeck::kernels {

namespace {

template <typename Out, typename Fn>
std::vector<Out> map_indexed(std::size_t n, Execution exec, Fn fn) {
  std::vector<Out> out(n);
  for_each_index(n, exec, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace

std::vector<std::vector<ExtremumSignal>> detect_extrema_batch(
    std::span<const std::vector<double>> series, const ExtremaParams& params, Execution exec) {
  params.validate();
  return map_indexed<std::vector<ExtremumSignal>>(
      series.size(), exec, [&](std::size_t i) -> std::vector<ExtremumSignal> {
        if (series[i].size() < params.lag + 1) return {};
        return detect_extrema(series[i], params);
      });
}

std::vector<std::optional<double>> pearson_batch(std::span<const PairedValues> pairs,
                                                 Execution exec) {
  return map_indexed<std::optional<double>>(
      pairs.size(), exec, [&](std::size_t i) -> std::optional<double> {
        try {
          return pearson_r(pairs[i].a, pairs[i].b);
        } catch (const Error&) {
          return std::nullopt;
        }
      });
}

std::vector<std::optional<double>> cv_batch(std::span<const std::vector<double>> series,
                                            Execution exec) {
  return map_indexed<std::optional<double>>(
      series.size(), exec, [&](std::size_t i) -> std::optional<double> {
        try {
          return coefficient_of_variation(series[i]);
        } catch (const Error&) {
          return std::nullopt;
        }
      });
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace metricdeck::kernels
