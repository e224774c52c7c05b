// Copyright 2026 The cpse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cpse/spectral.hpp"

namespace cpse {

// Strictly positive, sums to one.
struct ProbVector
{
  std::vector<double> entries;
};

struct PsePair
{
  std::size_t l = 0; // 1-based: distance between Omega^l and Omega^(l+1)
  double d_pse = 0.0;
};

struct PseSeries
{
  std::vector<PsePair> pairs;
  std::size_t bins = 0;
  std::size_t period = 0;
  double epsilon = 0.0;
};

struct CpseReport
{
  double cpse = 0.0;
  PseSeries series;
  std::size_t layer_count = 0;
  std::size_t log_floor_hits = 0;
  double log_floor = 0.0;
  bool skip_first = false;
};

// p_k = (omega_k + eps) / sum_j (omega_j + eps)
ProbVector smooth_normalize(std::span<const double> omega, double epsilon);
ProbVector smooth_normalize(const OmegaDistribution& omega, double epsilon);

// sum_k p_k log2(p_k / q_k), in bits.
double kl_div(const ProbVector& p, const ProbVector& q);

// Symmetric KL between the smoothed, normalized distributions.
double d_pse(const OmegaDistribution& a, const OmegaDistribution& b, double epsilon);

// D_pse for every consecutive pair of the sequence. Needs at least two.
PseSeries pse_series(std::span<const OmegaDistribution> omegas, double epsilon);

// C = (1/L) * sum_l log10(max(D_pse(l), floor)). With skip_first the l = 1
// term is left out of the sum; the divisor stays L.
CpseReport cpse(const PseSeries& series, std::size_t layer_count, double log_floor, bool skip_first = false);

} // namespace cpse
