// Copyright 2026 The cpse Authors
// SPDX-License-Identifier: Apache-2.0

#include "cpse/pipeline.hpp"

#include "cpse/error.hpp"

namespace cpse {

std::vector<Spectrum> spectra_of(std::span<const LayerMatrix> layers)
{
  std::vector<Spectrum> spectra;
  spectra.reserve(layers.size());
  for (const LayerMatrix& x : layers)
    spectra.push_back(eig_sym(x));
  return spectra;
}

Analysis analyze_spectra(std::span<const Spectrum> spectra, const RunConfig& config)
{
  config.validate();
  if (spectra.size() < 2)
    throw InputError("need at least 2 layers");

  Analysis a;
  a.omegas = omega_sequence(spectra, config.bins, config.log_eigs);
  const PseSeries series = pse_series(a.omegas.omegas, config.epsilon);
  a.report = cpse(series, spectra.size(), config.log_floor, config.skip_first);
  return a;
}

Analysis analyze_sequence(std::span<const LayerMatrix> layers, const RunConfig& config)
{
  if (layers.size() < 2)
    throw InputError("need at least 2 layers");
  const std::vector<Spectrum> spectra = spectra_of(layers);
  return analyze_spectra(spectra, config);
}

Analysis analyze_ensemble(const LayerMatrixEnsemble& ensemble, const RunConfig& config)
{
  return analyze_sequence(ensemble.layers, config);
}

} // namespace cpse
