// Copyright 2026 The cpse Authors
// SPDX-License-Identifier: Apache-2.0

#include "cpse/eig_sym.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cpse/error.hpp"
#include "cpse/kernels.hpp"

namespace cpse {

namespace {

struct Tridiagonal
{
  std::vector<double> diag;
  std::vector<double> off; // off[i] couples i and i+1; off[n-1] = 0
  std::vector<double> q;   // accumulated orthogonal transform, if requested
};

// Reduces the symmetric matrix to T = Q^T A Q. Works on a full row-major copy
// so each trailing update is a contiguous row operation.
Tridiagonal tridiagonalize(std::span<const double> matrix, std::size_t n, bool want_q)
{
  const auto& kernels = simd::active_kernels();

  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      a[i * n + j] = a[j * n + i] = matrix[i * n + j];

  Tridiagonal t{std::vector<double>(n), std::vector<double>(n, 0.0), {}};
  std::vector<std::vector<double>> reflectors;
  std::vector<double> betas;

  std::vector<double> v(n), p(n);
  for (std::size_t k = 0; k + 2 < n; ++k)
  {
    const std::size_t m = n - k - 1;
    const std::size_t s = k + 1;
    double* row_k = a.data() + k * n + s;

    double tail = 0.0;
    for (std::size_t i = 1; i < m; ++i)
      tail += row_k[i] * row_k[i];

    t.diag[k] = a[k * n + k];
    if (tail == 0.0)
    {
      t.off[k] = row_k[0];
      if (want_q)
      {
        reflectors.emplace_back();
        betas.push_back(0.0);
      }
      continue;
    }

    const double x0 = row_k[0];
    const double norm = std::sqrt(x0 * x0 + tail);
    const double alpha = x0 > 0.0 ? -norm : norm;
    std::copy(row_k, row_k + m, v.begin());
    v[0] -= alpha;
    const double beta = 2.0 / (v[0] * v[0] + tail);
    t.off[k] = alpha;

    // p = beta * S v, then w = p - (beta/2)(p.v) v, stored in p.
    for (std::size_t i = 0; i < m; ++i)
      p[i] = beta * kernels.dot(a.data() + (s + i) * n + s, v.data(), m);
    const double K = 0.5 * beta * kernels.dot(p.data(), v.data(), m);
    kernels.axpy(-K, v.data(), p.data(), m);

    // S -= v w^T + w v^T
    for (std::size_t i = 0; i < m; ++i)
      kernels.axpby_acc(-v[i], p.data(), -p[i], v.data(), a.data() + (s + i) * n + s, m);

    if (want_q)
    {
      reflectors.emplace_back(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(m));
      betas.push_back(beta);
    }
  }
  if (n >= 2)
  {
    t.diag[n - 2] = a[(n - 2) * n + (n - 2)];
    t.off[n - 2] = a[(n - 1) * n + (n - 2)];
  }
  if (n >= 1)
    t.diag[n - 1] = a[(n - 1) * n + (n - 1)];

  if (want_q)
  {
    // Q = H_0 H_1 ... H_{n-3}, applied right to left onto the identity.
    t.q.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      t.q[i * n + i] = 1.0;
    std::vector<double> w(n);
    for (std::size_t r = reflectors.size(); r-- > 0;)
    {
      if (betas[r] == 0.0)
        continue;
      const std::vector<double>& h = reflectors[r];
      const std::size_t s = r + 1;
      const std::size_t m = h.size();
      // w^T = h^T Q[s:, :]
      std::fill(w.begin(), w.end(), 0.0);
      for (std::size_t i = 0; i < m; ++i)
        kernels.axpy(h[i], t.q.data() + (s + i) * n, w.data(), n);
      for (std::size_t i = 0; i < m; ++i)
        kernels.axpy(-betas[r] * h[i], w.data(), t.q.data() + (s + i) * n, n);
    }
  }
  return t;
}

// Implicit QL on the tridiagonal matrix. When z is non-empty its columns are
// rotated along, so z = Q on entry yields the eigenvectors of A on exit.
void implicit_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z, std::size_t n,
                 int max_iterations)
{
  const double eps = std::numeric_limits<double>::epsilon();
  const auto N = static_cast<std::ptrdiff_t>(n);
  for (std::ptrdiff_t l = 0; l < N; ++l)
  {
    int iter = 0;
    std::ptrdiff_t m;
    do
    {
      for (m = l; m < N - 1; ++m)
      {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd)
          break;
      }
      if (m == l)
        break;
      if (iter++ == max_iterations)
        throw ComputeError("eigensolver did not converge after " + std::to_string(max_iterations) + " iterations");

      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      std::ptrdiff_t i;
      bool deflated = false;
      for (i = m - 1; i >= l; --i)
      {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0)
        {
          d[i + 1] -= p;
          e[m] = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        if (!z.empty())
          for (std::size_t k = 0; k < n; ++k)
          {
            double* zk = z.data() + k * n;
            f = zk[i + 1];
            zk[i + 1] = s * zk[i] + c * f;
            zk[i] = c * zk[i] - s * f;
          }
      }
      if (deflated)
        continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
}

} // namespace

SymmetricEigen symmetric_eigen(std::span<const double> matrix, std::size_t n, bool want_vectors, int max_iterations)
{
  if (matrix.size() != n * n)
    throw InputError("matrix storage does not match its size");
  for (double v : matrix)
    if (!std::isfinite(v))
      throw ComputeError("non-finite matrix entry");

  SymmetricEigen result;
  if (n == 0)
    return result;

  Tridiagonal t = tridiagonalize(matrix, n, want_vectors);
  implicit_ql(t.diag, t.off, t.q, n, max_iterations);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return t.diag[a] > t.diag[b]; });

  result.values.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    result.values[k] = t.diag[order[k]];
  if (want_vectors)
  {
    result.vectors.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        result.vectors[i * n + k] = t.q[i * n + order[k]];
  }
  return result;
}

} // namespace cpse
