// Copyright 2026 The cpse Authors
// SPDX-License-Identifier: Apache-2.0

#include "cpse/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "cpse/eig_sym.hpp"
#include "cpse/error.hpp"
#include "cpse/kernels.hpp"

namespace cpse {

Spectrum eig_sym(const LayerMatrix& x)
{
  Spectrum s;
  s.source_name = x.source_name;
  s.values = symmetric_eigen(x.matrix, x.size).values;
  if (!x.psd)
    return s;

  double max_diag = 0.0;
  for (std::size_t i = 0; i < x.size; ++i)
    max_diag = std::max(max_diag, x.at(i, i));
  const double tol = kPsdRelativeTolerance * max_diag;
  for (double& v : s.values)
  {
    if (v >= 0.0)
      continue;
    if (v < -tol)
    {
      std::ostringstream os;
      os << "layer '" << x.source_name << "': eigenvalue " << v << " below -" << tol << " (matrix not PSD)";
      throw ComputeError(os.str());
    }
    v = 0.0;
  }
  // Clamping cannot break the descending order: only the tail is negative.
  return s;
}

PeriodicSpectrum periodic_extend(const Spectrum& s, std::size_t period)
{
  if (s.values.empty())
    throw InputError("cannot extend an empty spectrum");
  if (period < s.size())
    throw InputError("period " + std::to_string(period) + " shorter than spectrum length " +
                     std::to_string(s.size()));
  PeriodicSpectrum p;
  p.source_len = s.size();
  p.source_name = s.source_name;
  p.values.resize(period);
  for (std::size_t i = 0; i < period; ++i)
    p.values[i] = s.values[i % s.size()];
  return p;
}

BinGrid global_bin_grid(std::span<const PeriodicSpectrum> spectra, std::size_t bins)
{
  if (spectra.empty())
    throw InputError("bin grid needs at least one spectrum");
  if (bins < 2)
    throw InputError("bin grid needs at least 2 bins");

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  bool any = false;
  for (const PeriodicSpectrum& p : spectra)
    for (double v : p.values)
    {
      if (!std::isfinite(v))
        throw ComputeError("non-finite eigenvalue in '" + p.source_name + "'");
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      any = true;
    }
  if (!any)
    throw InputError("bin grid needs at least one value");

  if (lo == hi)
  {
    hi = lo + 0.5;
    lo = lo - 0.5;
  }
  else
    hi += 1e-9 * (hi - lo);

  BinGrid g;
  g.edges.resize(bins + 1);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t k = 0; k < bins; ++k)
    g.edges[k] = lo + static_cast<double>(k) * width;
  g.edges[bins] = hi;
  g.centres.resize(bins);
  for (std::size_t k = 0; k < bins; ++k)
    g.centres[k] = 0.5 * (g.edges[k] + g.edges[k + 1]);
  return g;
}

SpectralDensity spectral_density(const PeriodicSpectrum& p, const BinGrid& grid)
{
  const std::size_t bins = grid.bins();
  if (bins == 0 || grid.edges.size() != bins + 1)
    throw InputError("malformed bin grid");
  if (p.values.empty())
    throw InputError("empty spectrum");

  std::vector<std::size_t> counts(bins, 0);
  const double lo = grid.edges.front();
  const double hi = grid.edges.back();
  for (double v : p.values)
  {
    if (!(v >= lo && v <= hi))
    {
      std::ostringstream os;
      os << "value " << v << " of '" << p.source_name << "' outside bin grid [" << lo << ", " << hi << "]";
      throw ComputeError(os.str());
    }
    // First edge strictly greater than v closes the bin; v == hi lands in the last bin.
    const auto it = std::upper_bound(grid.edges.begin(), grid.edges.end(), v);
    const auto k = static_cast<std::size_t>(it - grid.edges.begin());
    ++counts[std::min(k, bins) - 1];
  }

  SpectralDensity d;
  d.masses.resize(bins);
  const auto total = static_cast<double>(p.values.size());
  for (std::size_t k = 0; k < bins; ++k)
    d.masses[k] = static_cast<double>(counts[k]) / total;
  return d;
}

OmegaDistribution omega(std::span<const SpectralDensity> densities, std::size_t period)
{
  if (densities.empty())
    throw InputError("omega needs at least one density");
  if (period == 0)
    throw InputError("omega needs a positive period");
  const std::size_t bins = densities.front().masses.size();
  for (const SpectralDensity& d : densities)
    if (d.masses.size() != bins)
      throw InputError("densities are on different bin grids");

  const auto& kernels = simd::active_kernels();
  const auto L = static_cast<double>(densities.size());

  std::vector<double> mean(bins, 0.0);
  for (const SpectralDensity& d : densities)
    kernels.axpy(1.0, d.masses.data(), mean.data(), bins);
  for (double& m : mean)
    m /= L;

  OmegaDistribution o;
  o.depth = densities.size();
  o.period = period;
  o.values.assign(bins, 0.0);
  for (const SpectralDensity& d : densities)
    kernels.sq_dev_acc(d.masses.data(), mean.data(), o.values.data(), bins);
  const double scale = 1.0 / (L * static_cast<double>(period));
  for (double& v : o.values)
    v *= scale;
  return o;
}

OmegaSequence omega_sequence(std::span<const Spectrum> spectra, std::size_t bins, bool log_eigs)
{
  if (spectra.empty())
    throw InputError("empty ensemble");

  OmegaSequence seq;
  seq.spectra.assign(spectra.begin(), spectra.end());
  for (const Spectrum& s : seq.spectra)
    seq.period = std::max(seq.period, s.size());

  for (const Spectrum& s : seq.spectra)
  {
    Spectrum mapped = s;
    if (log_eigs)
      for (double& v : mapped.values)
        v = std::log10(v + kLogEigOffset);
    seq.periodic.push_back(periodic_extend(mapped, seq.period));
  }
  seq.grid = global_bin_grid(seq.periodic, bins);
  for (const PeriodicSpectrum& p : seq.periodic)
    seq.densities.push_back(spectral_density(p, seq.grid));

  const std::span<const SpectralDensity> all(seq.densities);
  for (std::size_t L = 1; L <= all.size(); ++L)
    seq.omegas.push_back(omega(all.first(L), seq.period));
  return seq;
}

OmegaSequence omega_sequence(const LayerMatrixEnsemble& ensemble, std::size_t bins, bool log_eigs)
{
  if (ensemble.layers.empty())
    throw InputError("empty ensemble");
  std::vector<Spectrum> spectra;
  spectra.reserve(ensemble.layers.size());
  for (const LayerMatrix& x : ensemble.layers)
    spectra.push_back(eig_sym(x));
  return omega_sequence(spectra, bins, log_eigs);
}

void write_density_tsv(std::ostream& os, const OmegaSequence& seq)
{
  os.precision(17);
  os << "layer\tbin_centre\tvalue\n";
  for (std::size_t l = 0; l < seq.densities.size(); ++l)
    for (std::size_t k = 0; k < seq.grid.bins(); ++k)
      os << (l + 1) << '\t' << seq.grid.centres[k] << '\t' << seq.densities[l].masses[k] << '\n';
}

void write_omega_tsv(std::ostream& os, const OmegaSequence& seq)
{
  os.precision(17);
  os << "layer\tbin_centre\tvalue\n";
  for (std::size_t l = 0; l < seq.omegas.size(); ++l)
    for (std::size_t k = 0; k < seq.grid.bins(); ++k)
      os << (l + 1) << '\t' << seq.grid.centres[k] << '\t' << seq.omegas[l].values[k] << '\n';
}

} // namespace cpse
