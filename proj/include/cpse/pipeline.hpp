// Copyright 2026 The cpse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "cpse/config.hpp"
#include "cpse/divergence.hpp"
#include "cpse/ensemble.hpp"
#include "cpse/spectral.hpp"

namespace cpse {

struct Analysis
{
  CpseReport report;
  OmegaSequence omegas;
};

// Feedforward cascade over an ordered layer sequence: shared N and grid,
// Omega^L for each prefix, D_pse between consecutive depths, then cPSE.
// Needs at least two layers.
Analysis analyze_spectra(std::span<const Spectrum> spectra, const RunConfig& config);
Analysis analyze_sequence(std::span<const LayerMatrix> layers, const RunConfig& config);
Analysis analyze_ensemble(const LayerMatrixEnsemble& ensemble, const RunConfig& config);

std::vector<Spectrum> spectra_of(std::span<const LayerMatrix> layers);

} // namespace cpse
