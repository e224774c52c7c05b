// Copyright 2026 The cpse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cpse {

struct SymmetricEigen
{
  // Descending.
  std::vector<double> values;
  // Row-major n x n; column k is the eigenvector of values[k]. Empty unless
  // requested.
  std::vector<double> vectors;
};

// Dense real symmetric eigensolver: Householder reduction to tridiagonal
// form followed by implicit QL with Wilkinson shifts. Only the lower
// triangle of `matrix` (row-major n x n) is trusted. Throws ComputeError if
// an eigenvalue fails to converge within `max_iterations` QL sweeps.
SymmetricEigen symmetric_eigen(std::span<const double> matrix, std::size_t n, bool want_vectors = false,
                               int max_iterations = 60);

} // namespace cpse
