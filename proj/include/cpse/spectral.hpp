// Copyright 2026 The cpse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cpse/ensemble.hpp"

namespace cpse {

struct Spectrum
{
  std::vector<double> values; // descending
  std::string source_name;

  std::size_t size() const { return values.size(); }
};

// Eigenvalue vector tiled cyclically to a common length.
struct PeriodicSpectrum
{
  std::vector<double> values;
  std::size_t source_len = 0;
  std::string source_name;
};

struct BinGrid
{
  std::vector<double> edges;   // B + 1, strictly increasing
  std::vector<double> centres; // B

  std::size_t bins() const { return centres.size(); }
};

// Per-bin probability mass of one layer's periodic spectrum.
struct SpectralDensity
{
  std::vector<double> masses;
};

// Per-bin variance of the first L layer densities around their mean,
// scaled by 1 / (L * N).
struct OmegaDistribution
{
  std::vector<double> values;
  std::size_t depth = 0;
  std::size_t period = 0; // N
};

inline constexpr double kPsdRelativeTolerance = 1e-10;
inline constexpr double kLogEigOffset = 1e-12;

// Eigenvalues of a layer matrix, descending. For PSD matrices, values in
// [-tol, 0) with tol = 1e-10 * max diagonal are clamped to zero and anything
// below -tol throws ComputeError.
Spectrum eig_sym(const LayerMatrix& x);

PeriodicSpectrum periodic_extend(const Spectrum& s, std::size_t period);

// B equal-width bins over [min, max] of every value. The upper edge is pushed
// out by 1e-9 of the span; all-equal input v spans [v - 0.5, v + 0.5].
BinGrid global_bin_grid(std::span<const PeriodicSpectrum> spectra, std::size_t bins);

// Half-open bins except the last, which is closed. Throws ComputeError for
// values outside the grid.
SpectralDensity spectral_density(const PeriodicSpectrum& p, const BinGrid& grid);

OmegaDistribution omega(std::span<const SpectralDensity> densities, std::size_t period);

struct OmegaSequence
{
  std::vector<Spectrum> spectra;
  std::vector<PeriodicSpectrum> periodic;
  BinGrid grid;
  std::vector<SpectralDensity> densities;
  std::vector<OmegaDistribution> omegas; // omegas[L-1] is Omega^L
  std::size_t period = 0;
};

// Spectra are mapped to log10(lambda + 1e-12) first when log_eigs is set.
// N and the grid are computed once over all layers.
OmegaSequence omega_sequence(std::span<const Spectrum> spectra, std::size_t bins, bool log_eigs = false);
OmegaSequence omega_sequence(const LayerMatrixEnsemble& ensemble, std::size_t bins, bool log_eigs = false);

// TSV dumps: layer<TAB>bin_centre<TAB>value
void write_density_tsv(std::ostream& os, const OmegaSequence& seq);
void write_omega_tsv(std::ostream& os, const OmegaSequence& seq);

} // namespace cpse
