// Copyright 2026 The cpse Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance gate. One PASS/FAIL line per criterion; exit status is the
// number of failures. Tolerances and time limits are fixed here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "cpse/archgraph.hpp"
#include "cpse/container.hpp"
#include "cpse/divergence.hpp"
#include "cpse/eig_sym.hpp"
#include "cpse/ensemble.hpp"
#include "cpse/pipeline.hpp"
#include "cpse/spectral.hpp"
#include "cpse/stats.hpp"
#include "cpse/surrogate.hpp"

#include "generators.hpp"
#include "oracles.hpp"

using namespace cpse;

namespace {

struct Outcome
{
  bool pass = false;
  std::string detail;
};

struct Criterion
{
  std::string name;
  double time_limit_s; // 0: no limit
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Correlation of cPSE with top-1 error per family.
Outcome table1_correlation()
{
  constexpr double kTol = 0.02;
  const struct
  {
    const char* group;
    double expected;
  } targets[] = {{"resnet", 0.94}, {"vgg", 0.44}, {"vgg_bn", 0.93}};

  const auto records = load_records_csv(std::string(CPSE_DATA_DIR) + "/table1.csv");
  const auto reports = correlate(records, Grouping::prefix);
  Outcome o{true, {}};
  for (const auto& t : targets)
  {
    if (!o.detail.empty())
      o.detail += ' ';
    const auto it = std::find_if(reports.begin(), reports.end(), [&](const auto& r) { return r.group == t.group; });
    if (it == reports.end())
    {
      o.pass = false;
      o.detail += std::string(t.group) + "=missing";
      continue;
    }
    o.pass = o.pass && std::abs(it->rho_top1 - t.expected) <= kTol;
    o.detail += std::string(t.group) + "=" + fmt("%.4f", it->rho_top1) + " (want " + fmt("%.2f", t.expected) + ")";
  }
  return o;
}

// Growing Gaussian stacks: D_pse falls with depth.
Outcome surrogate_trend()
{
  constexpr double kMaxSpearman = -0.8;
  constexpr double kMinMonotone = 0.7;
  RunConfig config;
  config.bins = 100;
  std::vector<double> rho, mono;
  std::size_t saturated = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed)
  {
    const Container stack = generate_stack({doubling_sizes(16, 1024), SurrogateDistribution::gaussian, seed});
    const TrendReport t = ergodicity_trend(stack, config);
    rho.push_back(t.spearman);
    mono.push_back(t.monotone_fraction);
    saturated += t.saturated ? 1 : 0;
  }
  const double med_rho = median(rho);
  const double med_mono = median(mono);
  return {med_rho <= kMaxSpearman && med_mono >= kMinMonotone && saturated == 0,
          "median spearman=" + fmt("%.3f", med_rho) + " median monotone=" + fmt("%.3f", med_mono) +
            " saturated=" + std::to_string(saturated)};
}

// Adding a layer does not raise cPSE beyond a small slack.
Outcome cascade_monotone()
{
  constexpr double kSlack = 0.05;
  constexpr double kMinFraction = 0.95;
  constexpr std::size_t kMinDepth = 4, kMaxDepth = 20;
  RunConfig config;
  std::size_t pairs = 0, held = 0;
  double worst = -INFINITY;
  for (std::uint64_t seed = 1; seed <= 10; ++seed)
  {
    const Container stack =
      generate_stack({geometric_sizes(16, 1024, kMaxDepth + 1), SurrogateDistribution::gaussian, seed});
    const LayerMatrixEnsemble e = build_ensemble(stack);
    const std::vector<Spectrum> spectra = spectra_of(e.layers);
    // C^L for each prefix, each analysed on its own.
    std::vector<double> c(kMaxDepth + 2, 0.0);
    for (std::size_t depth = kMinDepth; depth <= kMaxDepth + 1; ++depth)
      c[depth] = analyze_spectra(std::span<const Spectrum>(spectra.data(), depth), config).report.cpse;
    for (std::size_t depth = kMinDepth; depth <= kMaxDepth; ++depth)
    {
      ++pairs;
      worst = std::max(worst, c[depth + 1] - c[depth]);
      if (c[depth + 1] <= c[depth] + kSlack)
        ++held;
    }
  }
  const double fraction = static_cast<double>(held) / static_cast<double>(pairs);
  return {fraction >= kMinFraction, std::to_string(held) + "/" + std::to_string(pairs) + " pairs hold (" +
                                      fmt("%.3f", fraction) + "), max increase " + fmt("%.4f", worst)};
}

Outcome divergence_suite()
{
  constexpr double kZeroTol = 1e-12;
  constexpr double kOracleTol = 1e-12;
  constexpr double kReference = 0.39624, kReferenceTol = 1e-4;
  std::mt19937_64 rng(17);
  std::size_t failures = 0;
  double worst_oracle = 0.0;

  for (int trial = 0; trial < 2000; ++trial)
  {
    const std::size_t bins = 2 + static_cast<std::size_t>(trial % 63);
    const ProbVector p{oracle::random_probability(rng, bins)};
    const ProbVector q{oracle::random_probability(rng, bins)};
    const double pq = kl_div(p, q);
    if (!(pq >= 0.0) || kl_div(p, p) > kZeroTol || !(pq > kZeroTol))
      ++failures;
    if (bins <= 8)
    {
      const double err = std::abs(pq - oracle::kl_bits(p.entries, q.entries));
      worst_oracle = std::max(worst_oracle, err);
      if (err > kOracleTol)
        ++failures;
    }
    const OmegaDistribution a{p.entries, 2, bins}, b{q.entries, 2, bins};
    if (d_pse(a, b, 1e-10) != d_pse(b, a, 1e-10))
      ++failures;
  }
  const double reference = d_pse({{0.5, 0.5}, 1, 2}, {{0.25, 0.75}, 1, 2}, 1e-10);
  const bool ref_ok = std::abs(reference - kReference) <= kReferenceTol;
  return {failures == 0 && ref_ok, "violations=" + std::to_string(failures) + " D_pse([.5,.5],[.25,.75])=" +
                                     fmt("%.6f", reference) + " max |kl-oracle|=" + fmt("%.1e", worst_oracle)};
}

Outcome spectral_suite()
{
  constexpr double kEigTol = 1e-8;
  constexpr double kTraceTol = 1e-8;
  constexpr double kDensityTol = 1e-12;
  constexpr double kPermTol = 1e-10;
  std::mt19937_64 rng(29);
  std::normal_distribution<double> normal;
  double worst_eig = 0.0, worst_trace = 0.0, worst_density = 0.0, worst_perm = 0.0;
  std::size_t tiling_failures = 0;

  for (int trial = 0; trial < 300; ++trial)
  {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 7);
    const std::vector<double> m = oracle::random_symmetric(rng, n);
    std::vector<double> expected;
    if (n == 2)
      expected = oracle::eig2(m[0], m[1], m[3]);
    else if (n == 3)
      expected = oracle::eig3(m);
    else
      expected = oracle::eig_bisect(m, n);
    const std::vector<double> got = symmetric_eigen(m, n).values;
    for (std::size_t k = 0; k < n; ++k)
      worst_eig = std::max(worst_eig, std::abs(got[k] - expected[k]));
  }

  for (int trial = 0; trial < 100; ++trial)
  {
    StackedMatrix a;
    a.rows = 2 + static_cast<std::size_t>(trial % 40);
    a.cols = 1 + static_cast<std::size_t>((trial * 7) % 50);
    a.entries.resize(a.rows * a.cols);
    for (double& v : a.entries)
      v = normal(rng);
    const LayerMatrix x = gram(a);
    const Spectrum s = eig_sym(x);
    double trace = 0.0;
    for (std::size_t i = 0; i < x.size; ++i)
      trace += x.at(i, i);
    const double sum = std::accumulate(s.values.begin(), s.values.end(), 0.0);
    worst_trace = std::max(worst_trace, std::abs(sum - trace) / std::abs(trace));

    std::vector<std::size_t> perm(a.cols);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    StackedMatrix b = a;
    for (std::size_t i = 0; i < a.rows; ++i)
      for (std::size_t j = 0; j < a.cols; ++j)
        b.entries[i * a.cols + j] = a.entries[i * a.cols + perm[j]];
    const Spectrum sb = eig_sym(gram(b));
    for (std::size_t k = 0; k < s.values.size(); ++k)
      worst_perm = std::max(worst_perm, std::abs(s.values[k] - sb.values[k]));

    const std::size_t period = s.size() + static_cast<std::size_t>(trial % 53);
    const PeriodicSpectrum p = periodic_extend(s, period);
    for (std::size_t i = 0; i < period; ++i)
      if (p.values[i] != s.values[i % s.size()])
        ++tiling_failures;

    const PeriodicSpectrum ps[] = {p};
    const BinGrid grid = global_bin_grid(ps, 2 + static_cast<std::size_t>(trial % 120));
    const SpectralDensity d = spectral_density(p, grid);
    const double mass = std::accumulate(d.masses.begin(), d.masses.end(), 0.0);
    worst_density = std::max(worst_density, std::abs(mass - 1.0));
  }

  const bool pass = worst_eig <= kEigTol && worst_trace <= kTraceTol && tiling_failures == 0 &&
                    worst_density <= kDensityTol && worst_perm <= kPermTol;
  return {pass, "eig=" + fmt("%.1e", worst_eig) + " trace=" + fmt("%.1e", worst_trace) +
                  " tiling_mismatches=" + std::to_string(tiling_failures) + " density=" + fmt("%.1e", worst_density) +
                  " permutation=" + fmt("%.1e", worst_perm)};
}

LayerMatrixEnsemble numbered_stack(std::size_t layers, std::uint64_t seed)
{
  SurrogateSpec spec;
  spec.seed = seed;
  for (std::size_t i = 0; i < layers; ++i)
    spec.sizes.emplace_back(8 + 5 * ((i * 3) % 7), 16);
  Container c = generate_stack(spec);
  for (std::size_t i = 0; i < layers; ++i)
    c.layers[i].name = std::to_string(i + 1);
  return build_ensemble(c);
}

nlohmann::json edge(int from, int to)
{
  return nlohmann::json::array({std::to_string(from), std::to_string(to)});
}

Outcome branching()
{
  constexpr double kForkTol = 1e-12;
  const RunConfig config;
  std::size_t chain_mismatches = 0;
  double worst_fork = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed)
  {
    // Chain of 8 against the feedforward path.
    {
      const LayerMatrixEnsemble e = numbered_stack(8, seed);
      nlohmann::json nodes = nlohmann::json::array(), edges = nlohmann::json::array();
      for (int i = 1; i <= 8; ++i)
      {
        nodes.push_back(std::to_string(i));
        if (i > 1)
          edges.push_back(edge(i - 1, i));
      }
      const ArchGraph g = parse_graph({{"root", "1"}, {"nodes", nodes}, {"edges", edges}});
      if (branched_cpse(g, e, config).total != analyze_ensemble(e, config).report.cpse)
        ++chain_mismatches;
    }
    // 1-2-3 forks into 4..7, 8..11, 12..15.
    {
      const LayerMatrixEnsemble e = numbered_stack(15, seed + 100);
      nlohmann::json nodes = nlohmann::json::array(), edges = nlohmann::json::array();
      for (int i = 1; i <= 15; ++i)
        nodes.push_back(std::to_string(i));
      edges.push_back(edge(1, 2));
      edges.push_back(edge(2, 3));
      for (int start : {4, 8, 12})
      {
        edges.push_back(edge(3, start));
        for (int i = start; i < start + 3; ++i)
          edges.push_back(edge(i, i + 1));
      }
      const ArchGraph g = parse_graph({{"root", "1"}, {"nodes", nodes}, {"edges", edges}});
      const auto path_cpse = [&](std::vector<int> ids) {
        std::vector<LayerMatrix> layers;
        for (int id : ids)
          layers.push_back(*e.find(std::to_string(id)));
        return analyze_sequence(layers, config).report.cpse;
      };
      const double expected = path_cpse({1, 2, 3, 4, 5, 6, 7}) + path_cpse({1, 2, 3, 8, 9, 10, 11}) +
                              path_cpse({1, 2, 3, 12, 13, 14, 15}) - 2.0 * path_cpse({1, 2, 3});
      worst_fork = std::max(worst_fork, std::abs(branched_cpse(g, e, config).total - expected));
    }
  }
  return {chain_mismatches == 0 && worst_fork <= kForkTol,
          "chain mismatches=" + std::to_string(chain_mismatches) + " max fork error=" + fmt("%.1e", worst_fork)};
}

Outcome container_round_trip()
{
  constexpr int kCases = 1000;
  std::mt19937_64 rng(4242);
  int failures = 0;
  for (int i = 0; i < kCases; ++i)
  {
    const Container c = gen::random_container(rng);
    try
    {
      if (!(read_container(write_container(c)) == c))
        ++failures;
    }
    catch (const std::exception&)
    {
      ++failures;
    }
  }
  return {failures == 0, std::to_string(kCases) + " containers, " + std::to_string(failures) + " failures"};
}

} // namespace

int main()
{
  const std::vector<Criterion> criteria{
    {"table1_correlation", 1.0, table1_correlation},
    {"surrogate_trend", 60.0, surrogate_trend},
    {"cascade_monotone", 120.0, cascade_monotone},
    {"divergence_suite", 0.0, divergence_suite},
    {"spectral_suite", 0.0, spectral_suite},
    {"branching", 0.0, branching},
    {"container_round_trip", 0.0, container_round_trip},
  };

  int failures = 0;
  for (const Criterion& c : criteria)
  {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try
    {
      o = c.run();
    }
    catch (const std::exception& e)
    {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.time_limit_s == 0.0 || seconds < c.time_limit_s;
    const bool pass = o.pass && in_time;
    failures += pass ? 0 : 1;
    std::string timing = fmt("%.2f s", seconds);
    if (c.time_limit_s > 0.0)
      timing += fmt(" (limit %.0f s)", c.time_limit_s);
    std::printf("[%s] %s: %s; %s\n", pass ? "PASS" : "FAIL", c.name.c_str(), o.detail.c_str(), timing.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures;
}
