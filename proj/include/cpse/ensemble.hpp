// Copyright 2026 The cpse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cpse/config.hpp"
#include "cpse/container.hpp"

namespace cpse {

// A weight tensor flattened to rows x cols, row-major. rows is the leading
// dimension, cols the product of the trailing ones.
struct StackedMatrix
{
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> entries;
  std::string source_name;

  double at(std::size_t i, std::size_t k) const { return entries[i * cols + k]; }
};

// Square symmetric matrix, row-major. Gram matrices are positive semidefinite;
// `psd` is false only for the experimental direct 2-D mode.
struct LayerMatrix
{
  std::size_t size = 0;
  std::vector<double> matrix;
  std::string source_name;
  bool psd = true;

  double at(std::size_t i, std::size_t j) const { return matrix[i * size + j]; }
};

struct SkipRecord
{
  std::string name;
  std::vector<std::size_t> shape;
  std::string reason;

  // "SKIP <name> <shape> <reason>"
  std::string line() const;
};

struct LayerMatrixEnsemble
{
  std::vector<LayerMatrix> layers;
  std::vector<SkipRecord> skipped;

  const LayerMatrix* find(const std::string& name) const;
};

StackedMatrix stack_weights(const WeightTensor& w);

// X = A * A^T; exactly symmetric.
LayerMatrix gram(const StackedMatrix& a);

// Builds the ensemble in container order, skipping ineligible tensors.
// Throws InputError when nothing is eligible.
LayerMatrixEnsemble build_ensemble(const Container& c, const EligibilityPolicy& policy = {});

} // namespace cpse
