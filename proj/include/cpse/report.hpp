// Copyright 2026 The cpse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cpse/archgraph.hpp"
#include "cpse/config.hpp"
#include "cpse/divergence.hpp"
#include "cpse/ensemble.hpp"
#include "cpse/stats.hpp"
#include "cpse/surrogate.hpp"

namespace cpse {

enum class Format
{
  csv,
  json,
  tsv_plot
};

Format parse_format(const std::string& name);

// Shortest round-trip decimal form.
std::string format_double(double v);

// Full provenance: cpse, L, B, N, epsilon, floor, eligibility, tool version.
nlohmann::ordered_json to_json(const CpseReport& report, const RunConfig& config,
                               const std::vector<SkipRecord>& skipped = {});
nlohmann::ordered_json to_json(const BranchedReport& report, const RunConfig& config,
                               const std::vector<SkipRecord>& skipped = {});
nlohmann::ordered_json to_json(const TrendReport& report, const SurrogateSpec& spec, const RunConfig& config);
nlohmann::ordered_json to_json(const std::vector<CorrelationReport>& reports);

// csv: "l,D_pse,log10_D_pse"; tsv_plot: "layer<TAB>log10_D_pse"; json: array.
// log10 is taken of max(D_pse, log_floor).
std::string emit(const PseSeries& series, double log_floor, Format format);
// json only.
std::string emit(const CpseReport& report, const RunConfig& config, Format format);
// csv: "group,n,rho_top1,rho_top5"; json: array.
std::string emit(const std::vector<CorrelationReport>& reports, Format format);

} // namespace cpse
