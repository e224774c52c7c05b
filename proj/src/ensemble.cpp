// Copyright 2026 The cpse Authors
// SPDX-License-Identifier: Apache-2.0

#include "cpse/ensemble.hpp"

#include <cmath>
#include <sstream>

#include "cpse/error.hpp"
#include "cpse/kernels.hpp"

namespace cpse {

namespace {

// Empty string when eligible.
std::string ineligibility(const WeightTensor& w, const EligibilityPolicy& policy)
{
  if (w.shape.size() < 2)
    return "fewer than 2 dimensions";
  if (w.shape[0] < 2)
    return "leading dimension < 2";
  if (w.shape.size() == 2 && !policy.include_linear)
    return "2-D weights excluded by policy";
  if (w.shape.size() > 2 && !policy.include_conv)
    return "n-D weights excluded by policy";
  if (w.shape.size() == 2 && !policy.gram_2d && w.shape[0] != w.shape[1])
    return "non-square 2-D weight without Gram product";
  return {};
}

LayerMatrix direct_symmetric(const StackedMatrix& a)
{
  const std::size_t n = a.rows;
  LayerMatrix x{n, std::vector<double>(n * n), a.source_name, false};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
    {
      const double v = 0.5 * (a.at(i, j) + a.at(j, i));
      x.matrix[i * n + j] = v;
      x.matrix[j * n + i] = v;
    }
  return x;
}

} // namespace

std::string SkipRecord::line() const
{
  return "SKIP " + name + " " + shape_string(shape) + " " + reason;
}

const LayerMatrix* LayerMatrixEnsemble::find(const std::string& name) const
{
  for (const LayerMatrix& m : layers)
    if (m.source_name == name)
      return &m;
  return nullptr;
}

StackedMatrix stack_weights(const WeightTensor& w)
{
  if (w.shape.size() < 2)
    throw InputError("layer '" + w.name + "': vector weights are not eligible");
  if (w.shape[0] < 2)
    throw InputError("layer '" + w.name + "': leading dimension < 2");
  if (w.shape_product() != w.size())
    throw InputError("layer '" + w.name + "': data length does not match shape");

  StackedMatrix a;
  a.rows = w.shape[0];
  a.cols = w.size() / a.rows;
  // Row-major storage already is the stacked layout.
  a.entries = w.to_f64();
  a.source_name = w.name;
  return a;
}

LayerMatrix gram(const StackedMatrix& a)
{
  for (double v : a.entries)
    if (!std::isfinite(v))
      throw InputError("layer '" + a.source_name + "': non-finite weight");

  const std::size_t n = a.rows;
  const std::size_t m = a.cols;
  const auto& kernels = simd::active_kernels();
  LayerMatrix x{n, std::vector<double>(n * n), a.source_name, true};
  // Upper triangle mirrored, which is (X + X^T) / 2 without the rounding.
  for (std::size_t i = 0; i < n; ++i)
  {
    const double* ri = a.entries.data() + i * m;
    for (std::size_t j = i; j < n; ++j)
    {
      const double v = kernels.dot(ri, a.entries.data() + j * m, m);
      x.matrix[i * n + j] = v;
      x.matrix[j * n + i] = v;
    }
  }
  return x;
}

LayerMatrixEnsemble build_ensemble(const Container& c, const EligibilityPolicy& policy)
{
  LayerMatrixEnsemble e;
  for (const WeightTensor& w : c.layers)
  {
    if (std::string reason = ineligibility(w, policy); !reason.empty())
    {
      e.skipped.push_back({w.name, w.shape, std::move(reason)});
      continue;
    }
    const StackedMatrix a = stack_weights(w);
    if (w.shape.size() == 2 && !policy.gram_2d)
    {
      for (double v : a.entries)
        if (!std::isfinite(v))
          throw InputError("layer '" + a.source_name + "': non-finite weight");
      e.layers.push_back(direct_symmetric(a));
    }
    else
      e.layers.push_back(gram(a));
  }
  if (e.layers.empty())
    throw InputError("no eligible layers");
  return e;
}

} // namespace cpse
