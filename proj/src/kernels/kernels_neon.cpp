// Copyright 2026 The cpse Authors
// SPDX-License-Identifier: Apache-2.0

#include "cpse/kernels.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)

#include <arm_neon.h>

namespace cpse::simd {

namespace {

double dot_neon(const double* x, const double* y, std::size_t n)
{
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
  {
    acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
  }
  double sum = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i)
    sum += x[i] * y[i];
  return sum;
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n)
{
  const float64x2_t a = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), a, vld1q_f64(x + i)));
  for (; i < n; ++i)
    y[i] += alpha * x[i];
}

void axpby_acc_neon(double a, const double* x, double b, const double* y, double* out, std::size_t n)
{
  const float64x2_t va = vdupq_n_f64(a);
  const float64x2_t vb = vdupq_n_f64(b);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
  {
    float64x2_t o = vld1q_f64(out + i);
    o = vfmaq_f64(o, va, vld1q_f64(x + i));
    o = vfmaq_f64(o, vb, vld1q_f64(y + i));
    vst1q_f64(out + i, o);
  }
  for (; i < n; ++i)
    out[i] += a * x[i] + b * y[i];
}

void sq_dev_acc_neon(const double* x, const double* mean, double* acc, std::size_t n)
{
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
  {
    const float64x2_t d = vsubq_f64(vld1q_f64(x + i), vld1q_f64(mean + i));
    vst1q_f64(acc + i, vfmaq_f64(vld1q_f64(acc + i), d, d));
  }
  for (; i < n; ++i)
  {
    const double d = x[i] - mean[i];
    acc[i] += d * d;
  }
}

} // namespace

const KernelSet* neon_kernels()
{
  static const KernelSet set{"neon", dot_neon, axpy_neon, axpby_acc_neon, sq_dev_acc_neon};
  return &set;
}

} // namespace cpse::simd

#else

namespace cpse::simd {

const KernelSet* neon_kernels()
{
  return nullptr;
}

} // namespace cpse::simd

#endif
