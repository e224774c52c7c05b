// Copyright 2026 The cpse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace cpse::simd {

// Table of the data-parallel inner loops used by the pipeline. Every
// instruction-set variant fills the same table; the scalar one is the
// reference the others are tested against.
struct KernelSet
{
  std::string_view name;

  // sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // out[i] += a * x[i] + b * y[i]
  void (*axpby_acc)(double a, const double* x, double b, const double* y, double* out, std::size_t n);
  // acc[i] += (x[i] - mean[i])^2
  void (*sq_dev_acc)(const double* x, const double* mean, double* acc, std::size_t n);
};

const KernelSet& scalar_kernels();

// Null when the variant was not compiled for this target.
const KernelSet* avx2_kernels();
const KernelSet* neon_kernels();

// Variants that are both compiled in and supported by the running CPU,
// scalar first.
std::vector<const KernelSet*> available_kernels();

// Kernel table used by the library. Chosen on first use: the CPSE_SIMD
// environment variable ("scalar", "avx2", "neon", "auto") wins, otherwise
// the widest supported variant.
const KernelSet& active_kernels();

// Forces a variant by name; returns false if it is unavailable. Intended
// for tests and benchmarking.
bool select_kernels(std::string_view name);

inline double dot(std::span<const double> x, std::span<const double> y)
{
  return active_kernels().dot(x.data(), y.data(), x.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y)
{
  active_kernels().axpy(alpha, x.data(), y.data(), x.size());
}

} // namespace cpse::simd
