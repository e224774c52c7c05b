// Copyright 2026 The cpse Authors
// SPDX-License-Identifier: Apache-2.0

#include "cpse/divergence.hpp"

#include <algorithm>
#include <cmath>

#include "cpse/error.hpp"

namespace cpse {

ProbVector smooth_normalize(std::span<const double> omega, double epsilon)
{
  if (!(epsilon > 0.0))
    throw InputError("smoothing epsilon must be > 0");
  if (omega.empty())
    throw InputError("cannot normalize an empty distribution");

  ProbVector p;
  p.entries.resize(omega.size());
  double total = 0.0;
  for (std::size_t k = 0; k < omega.size(); ++k)
  {
    if (omega[k] < 0.0 || !std::isfinite(omega[k]))
      throw ComputeError("negative or non-finite omega entry");
    p.entries[k] = omega[k] + epsilon;
    total += p.entries[k];
  }
  for (double& v : p.entries)
    v /= total;
  return p;
}

ProbVector smooth_normalize(const OmegaDistribution& omega, double epsilon)
{
  return smooth_normalize(omega.values, epsilon);
}

double kl_div(const ProbVector& p, const ProbVector& q)
{
  if (p.entries.size() != q.entries.size())
    throw InputError("KL divergence of vectors with different lengths");
  double sum = 0.0;
  for (std::size_t k = 0; k < p.entries.size(); ++k)
    sum += p.entries[k] * std::log2(p.entries[k] / q.entries[k]);
  return sum;
}

double d_pse(const OmegaDistribution& a, const OmegaDistribution& b, double epsilon)
{
  if (a.values.size() != b.values.size())
    throw InputError("omega distributions are on different bin grids");
  const ProbVector p = smooth_normalize(a, epsilon);
  const ProbVector q = smooth_normalize(b, epsilon);
  // Each direction can round a hair below zero when p and q nearly agree.
  return std::max(0.0, kl_div(p, q) + kl_div(q, p));
}

PseSeries pse_series(std::span<const OmegaDistribution> omegas, double epsilon)
{
  if (omegas.size() < 2)
    throw InputError("need at least 2 layers");
  PseSeries series;
  series.bins = omegas.front().values.size();
  series.period = omegas.front().period;
  series.epsilon = epsilon;
  for (std::size_t l = 0; l + 1 < omegas.size(); ++l)
    series.pairs.push_back({l + 1, d_pse(omegas[l], omegas[l + 1], epsilon)});
  return series;
}

CpseReport cpse(const PseSeries& series, std::size_t layer_count, double log_floor, bool skip_first)
{
  if (layer_count < 2 || series.pairs.size() + 1 != layer_count)
    throw InputError("series length " + std::to_string(series.pairs.size()) + " does not match " +
                     std::to_string(layer_count) + " layers");
  if (!(log_floor > 0.0))
    throw InputError("log floor must be > 0");

  CpseReport report;
  report.series = series;
  report.layer_count = layer_count;
  report.log_floor = log_floor;
  report.skip_first = skip_first;

  double sum = 0.0;
  for (const PsePair& pair : series.pairs)
  {
    if (skip_first && pair.l == 1)
      continue;
    if (pair.d_pse < log_floor)
      ++report.log_floor_hits;
    sum += std::log10(std::max(pair.d_pse, log_floor));
  }
  report.cpse = sum / static_cast<double>(layer_count);
  return report;
}

} // namespace cpse
