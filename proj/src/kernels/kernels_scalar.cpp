// Copyright 2026 The cpse Authors
// SPDX-License-Identifier: Apache-2.0

#include "cpse/kernels.hpp"

namespace cpse::simd {

namespace {

double dot_ref(const double* x, const double* y, std::size_t n)
{
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    sum += x[i] * y[i];
  return sum;
}

void axpy_ref(double alpha, const double* x, double* y, std::size_t n)
{
  for (std::size_t i = 0; i < n; ++i)
    y[i] += alpha * x[i];
}

void axpby_acc_ref(double a, const double* x, double b, const double* y, double* out, std::size_t n)
{
  for (std::size_t i = 0; i < n; ++i)
    out[i] += a * x[i] + b * y[i];
}

void sq_dev_acc_ref(const double* x, const double* mean, double* acc, std::size_t n)
{
  for (std::size_t i = 0; i < n; ++i)
  {
    const double d = x[i] - mean[i];
    acc[i] += d * d;
  }
}

} // namespace

const KernelSet& scalar_kernels()
{
  static const KernelSet set{"scalar", dot_ref, axpy_ref, axpby_acc_ref, sq_dev_acc_ref};
  return set;
}

} // namespace cpse::simd
