// Copyright 2026 The cpse Authors
// SPDX-License-Identifier: Apache-2.0

// Independent reference computations for tests. Nothing here calls into the
// library's numerical paths.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace cpse::oracle {

// Closed-form eigenvalues of a symmetric 2x2, descending.
inline std::vector<double> eig2(double a, double b, double d)
{
  const double mean = 0.5 * (a + d);
  const double radius = std::hypot(0.5 * (a - d), b);
  return {mean + radius, mean - radius};
}

// Trigonometric closed form for a symmetric 3x3 (row-major), descending.
inline std::vector<double> eig3(const std::vector<double>& m)
{
  const double a11 = m[0], a12 = m[1], a13 = m[2], a22 = m[4], a23 = m[5], a33 = m[8];
  const double p1 = a12 * a12 + a13 * a13 + a23 * a23;
  if (p1 == 0.0)
  {
    std::vector<double> d{a11, a22, a33};
    std::sort(d.rbegin(), d.rend());
    return d;
  }
  const double q = (a11 + a22 + a33) / 3.0;
  const double p2 = (a11 - q) * (a11 - q) + (a22 - q) * (a22 - q) + (a33 - q) * (a33 - q) + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  const double b11 = (a11 - q) / p, b12 = a12 / p, b13 = a13 / p;
  const double b22 = (a22 - q) / p, b23 = a23 / p, b33 = (a33 - q) / p;
  const double det = b11 * (b22 * b33 - b23 * b23) - b12 * (b12 * b33 - b23 * b13) + b13 * (b12 * b23 - b22 * b13);
  const double r = std::clamp(det / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double e1 = q + 2.0 * p * std::cos(phi);
  const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  const double e2 = 3.0 * q - e1 - e3;
  std::vector<double> d{e1, e2, e3};
  std::sort(d.rbegin(), d.rend());
  return d;
}

// Number of eigenvalues strictly below x: negative pivots of the LDL^T
// factorization of (A - xI), by Sylvester's law of inertia.
inline std::size_t count_below(const std::vector<double>& a, std::size_t n, double x)
{
  std::vector<long double> m(a.begin(), a.end());
  for (std::size_t i = 0; i < n; ++i)
    m[i * n + i] -= x;
  std::size_t negatives = 0;
  for (std::size_t k = 0; k < n; ++k)
  {
    long double pivot = m[k * n + k];
    if (pivot == 0.0L)
      pivot = -1e-300L;
    if (pivot < 0.0L)
      ++negatives;
    for (std::size_t i = k + 1; i < n; ++i)
    {
      const long double f = m[i * n + k] / pivot;
      for (std::size_t j = k + 1; j < n; ++j)
        m[i * n + j] -= f * m[k * n + j];
    }
  }
  return negatives;
}

// Bisection on the inertia count; eigenvalues descending.
inline std::vector<double> eig_bisect(const std::vector<double>& a, std::size_t n)
{
  double radius = 0.0;
  for (std::size_t i = 0; i < n; ++i)
  {
    double r = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      r += std::abs(a[i * n + j]);
    radius = std::max(radius, r);
  }
  std::vector<double> out;
  for (std::size_t k = 0; k < n; ++k)
  {
    // k-th largest = (n-k)-th smallest: smallest x with count_below(x) >= n-k.
    double lo = -radius - 1.0, hi = radius + 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo) + std::abs(hi)); ++it)
    {
      const double mid = 0.5 * (lo + hi);
      if (count_below(a, n, mid) >= n - k)
        hi = mid;
      else
        lo = mid;
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

// Triple-loop A * A^T.
inline std::vector<double> naive_gram(const std::vector<double>& a, std::size_t rows, std::size_t cols)
{
  std::vector<double> x(rows * rows, 0.0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < rows; ++j)
    {
      long double s = 0.0L;
      for (std::size_t k = 0; k < cols; ++k)
        s += static_cast<long double>(a[i * cols + k]) * a[j * cols + k];
      x[i * rows + j] = static_cast<double>(s);
    }
  return x;
}

// Term-by-term KL in bits, natural log divided by ln 2, extended precision.
inline double kl_bits(const std::vector<double>& p, const std::vector<double>& q)
{
  long double sum = 0.0L;
  for (std::size_t k = 0; k < p.size(); ++k)
  {
    const long double term = static_cast<long double>(p[k]) *
                             (std::log(static_cast<long double>(p[k])) - std::log(static_cast<long double>(q[k])));
    sum += term;
  }
  return static_cast<double>(sum / std::log(2.0L));
}

inline std::vector<double> random_symmetric(std::mt19937_64& rng, std::size_t n)
{
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      m[i * n + j] = m[j * n + i] = u(rng);
  return m;
}

inline std::vector<double> random_probability(std::mt19937_64& rng, std::size_t n)
{
  std::uniform_real_distribution<double> u(0.01, 1.0);
  std::vector<double> p(n);
  double total = 0.0;
  for (double& v : p)
    total += (v = u(rng));
  for (double& v : p)
    v /= total;
  return p;
}

} // namespace cpse::oracle
