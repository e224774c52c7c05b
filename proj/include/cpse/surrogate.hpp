// Copyright 2026 The cpse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cpse/config.hpp"
#include "cpse/container.hpp"
#include "cpse/divergence.hpp"

namespace cpse {

enum class SurrogateDistribution
{
  gaussian
};

struct SurrogateSpec
{
  std::vector<std::pair<std::size_t, std::size_t>> sizes; // (rows, cols) per layer
  SurrogateDistribution distribution = SurrogateDistribution::gaussian;
  std::uint64_t seed = 0;
};

// "32x32,64x64" -> {(32,32),(64,64)}. Throws InputError.
std::vector<std::pair<std::size_t, std::size_t>> parse_sizes(const std::string& text);

// Square layers first, 2*first, ... up to and including last.
std::vector<std::pair<std::size_t, std::size_t>> doubling_sizes(std::size_t first, std::size_t last);

// `count` square layers with sizes rounded from a geometric progression
// between first and last.
std::vector<std::pair<std::size_t, std::size_t>> geometric_sizes(std::size_t first, std::size_t last,
                                                                  std::size_t count);

// Stream for layer i is seeded from splitmix64(seed ^ i), so every layer can
// be generated independently.
std::uint64_t layer_stream_seed(std::uint64_t seed, std::size_t layer);

// One f64 tensor "layer<i>" of shape [N_l, M_l] per entry, entries i.i.d.
// standard normal scaled by 1/sqrt(M_l).
Container generate_stack(const SurrogateSpec& spec);

struct TrendReport
{
  PseSeries series;
  double cpse = 0.0;
  double spearman = 0.0;          // rank correlation of l with log10 D_pse(l)
  double monotone_fraction = 0.0; // strict decreases / (series length - 1)
  std::size_t log_floor_hits = 0;
  bool saturated = false; // log10 D_pse constant (all at the floor): spearman undefined, reported as 0
};

// Full pipeline on the container, then trend statistics of its D_pse series.
// Needs at least three eligible layers.
TrendReport ergodicity_trend(const Container& c, const RunConfig& config);

} // namespace cpse
