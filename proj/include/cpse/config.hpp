// Copyright 2026 The cpse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>

#include <json.hpp>

namespace cpse {

// Which container tensors enter the layer matrix ensemble. Tensors with fewer
// than two dimensions or a leading dimension below two are never eligible.
struct EligibilityPolicy
{
  bool include_linear = true; // 2-D weights
  bool include_conv = true;   // weights with three or more dimensions
  // Experimental: use a square 2-D weight directly (symmetrized) instead of
  // its Gram product. Such matrices need not be positive semidefinite.
  bool gram_2d = true;

  std::string describe() const;
};

struct RunConfig
{
  std::size_t bins = 100;
  double epsilon = 1e-10;
  double log_floor = 1e-12;
  EligibilityPolicy eligibility;
  bool log_eigs = false;
  bool skip_first = false;

  // Throws InputError when an invariant is violated.
  void validate() const;
};

nlohmann::ordered_json to_json(const EligibilityPolicy& policy);
nlohmann::ordered_json to_json(const RunConfig& config);

std::string tool_version();

} // namespace cpse
