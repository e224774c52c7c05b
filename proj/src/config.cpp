// Copyright 2026 The cpse Authors
// SPDX-License-Identifier: Apache-2.0

#include "cpse/config.hpp"

#include <cmath>

#include "cpse/error.hpp"

namespace cpse {

std::string EligibilityPolicy::describe() const
{
  std::string s;
  if (include_conv)
    s += "conv";
  if (include_linear)
    s += s.empty() ? "linear" : "+linear";
  if (s.empty())
    s = "none";
  if (!gram_2d)
    s += ",no-gram-2d";
  return s;
}

void RunConfig::validate() const
{
  if (bins < 2)
    throw InputError("bins must be >= 2");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw InputError("epsilon must be > 0");
  if (!(log_floor > 0.0) || !std::isfinite(log_floor))
    throw InputError("log floor must be > 0");
}

nlohmann::ordered_json to_json(const EligibilityPolicy& policy)
{
  nlohmann::ordered_json j;
  j["include_conv"] = policy.include_conv;
  j["include_linear"] = policy.include_linear;
  j["gram_2d"] = policy.gram_2d;
  return j;
}

nlohmann::ordered_json to_json(const RunConfig& config)
{
  nlohmann::ordered_json j;
  j["bins"] = config.bins;
  j["epsilon"] = config.epsilon;
  j["log_floor"] = config.log_floor;
  j["eligibility"] = to_json(config.eligibility);
  j["log_eigs"] = config.log_eigs;
  j["skip_first"] = config.skip_first;
  return j;
}

std::string tool_version()
{
  return CPSE_VERSION;
}

} // namespace cpse
