// Copyright 2026 The cpse Authors
// SPDX-License-Identifier: Apache-2.0

#include "cpse/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "cpse/error.hpp"
#include "cpse/pipeline.hpp"
#include "cpse/stats.hpp"

namespace cpse {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Box-Muller on mt19937_64 output; std::normal_distribution differs between
// standard libraries and would break cross-platform reproducibility.
class NormalStream
{
public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  double operator()()
  {
    if (has_spare_)
    {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_open();
    const double u2 = uniform_open();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

private:
  // (0, 1]
  double uniform_open() { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::size_t parse_dim(const std::string& s, const std::string& whole)
{
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isdigit(ch); }))
    throw InputError("invalid size '" + whole + "' (expected NxM)");
  return static_cast<std::size_t>(std::stoull(s));
}

} // namespace

std::vector<std::pair<std::size_t, std::size_t>> parse_sizes(const std::string& text)
{
  std::vector<std::pair<std::size_t, std::size_t>> sizes;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ','))
  {
    const auto x = item.find_first_of("xX");
    if (x == std::string::npos)
      throw InputError("invalid size '" + item + "' (expected NxM)");
    sizes.emplace_back(parse_dim(item.substr(0, x), item), parse_dim(item.substr(x + 1), item));
  }
  if (sizes.empty())
    throw InputError("no sizes given");
  return sizes;
}

std::vector<std::pair<std::size_t, std::size_t>> doubling_sizes(std::size_t first, std::size_t last)
{
  if (first < 2 || last < first)
    throw InputError("invalid doubling range");
  std::vector<std::pair<std::size_t, std::size_t>> sizes;
  for (std::size_t n = first; n <= last; n *= 2)
    sizes.emplace_back(n, n);
  return sizes;
}

std::vector<std::pair<std::size_t, std::size_t>> geometric_sizes(std::size_t first, std::size_t last,
                                                                  std::size_t count)
{
  if (first < 2 || last < first || count < 2)
    throw InputError("invalid geometric range");
  std::vector<std::pair<std::size_t, std::size_t>> sizes;
  const double ratio = std::log(static_cast<double>(last) / static_cast<double>(first));
  for (std::size_t i = 0; i < count; ++i)
  {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    const auto n = static_cast<std::size_t>(std::lround(static_cast<double>(first) * std::exp(ratio * t)));
    sizes.emplace_back(n, n);
  }
  return sizes;
}

std::uint64_t layer_stream_seed(std::uint64_t seed, std::size_t layer)
{
  return splitmix64(seed ^ static_cast<std::uint64_t>(layer));
}

Container generate_stack(const SurrogateSpec& spec)
{
  if (spec.sizes.empty())
    throw InputError("surrogate needs at least one layer size");
  for (const auto& [rows, cols] : spec.sizes)
    if (rows < 2 || cols < 1)
      throw InputError("invalid surrogate size " + std::to_string(rows) + "x" + std::to_string(cols) +
                       " (need N >= 2, M >= 1)");

  Container c;
  for (std::size_t i = 0; i < spec.sizes.size(); ++i)
  {
    const auto [rows, cols] = spec.sizes[i];
    NormalStream normal(layer_stream_seed(spec.seed, i));
    const double scale = 1.0 / std::sqrt(static_cast<double>(cols));
    std::vector<double> values(rows * cols);
    for (double& v : values)
      v = scale * normal();
    c.layers.emplace_back("layer" + std::to_string(i + 1), std::vector<std::size_t>{rows, cols}, std::move(values));
  }
  return c;
}

TrendReport ergodicity_trend(const Container& c, const RunConfig& config)
{
  const LayerMatrixEnsemble ensemble = build_ensemble(c, config.eligibility);
  if (ensemble.layers.size() < 3)
    throw InputError("need >= 3 layers for a trend");

  const Analysis a = analyze_ensemble(ensemble, config);
  TrendReport t;
  t.series = a.report.series;
  t.cpse = a.report.cpse;
  t.log_floor_hits = a.report.log_floor_hits;

  std::vector<double> index, logd;
  for (const PsePair& p : t.series.pairs)
  {
    index.push_back(static_cast<double>(p.l));
    logd.push_back(std::log10(std::max(p.d_pse, config.log_floor)));
  }

  std::size_t decreases = 0;
  for (std::size_t i = 1; i < logd.size(); ++i)
    if (logd[i] < logd[i - 1])
      ++decreases;
  t.monotone_fraction = static_cast<double>(decreases) / static_cast<double>(logd.size() - 1);

  if (std::all_of(logd.begin(), logd.end(), [&](double v) { return v == logd.front(); }))
    t.saturated = true;
  else if (logd.size() == 2) // two distinct ranks: exactly +1 or -1
    t.spearman = logd[1] < logd[0] ? -1.0 : 1.0;
  else
    t.spearman = spearman(index, logd);
  return t;
}

} // namespace cpse
