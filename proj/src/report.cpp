// Copyright 2026 The cpse Authors
// SPDX-License-Identifier: Apache-2.0

#include "cpse/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "cpse/error.hpp"

namespace cpse {

namespace {

nlohmann::ordered_json series_json(const PseSeries& series, double log_floor)
{
  nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
  for (const PsePair& p : series.pairs)
  {
    nlohmann::ordered_json j;
    j["l"] = p.l;
    j["d_pse"] = p.d_pse;
    j["log10_d_pse"] = std::log10(std::max(p.d_pse, log_floor));
    pairs.push_back(std::move(j));
  }
  return pairs;
}

nlohmann::ordered_json skipped_json(const std::vector<SkipRecord>& skipped)
{
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const SkipRecord& s : skipped)
    out.push_back({{"name", s.name}, {"shape", s.shape}, {"reason", s.reason}});
  return out;
}

nlohmann::ordered_json header(const char* kind, const RunConfig& config)
{
  nlohmann::ordered_json j;
  j["tool"] = "cpse";
  j["version"] = tool_version();
  j["kind"] = kind;
  j["config"] = to_json(config);
  return j;
}

} // namespace

Format parse_format(const std::string& name)
{
  if (name == "csv")
    return Format::csv;
  if (name == "json")
    return Format::json;
  if (name == "tsv-plot")
    return Format::tsv_plot;
  throw InputError("unknown format '" + name + "'");
}

std::string format_double(double v)
{
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc())
    return "nan";
  return std::string(buf, end);
}

nlohmann::ordered_json to_json(const CpseReport& report, const RunConfig& config,
                               const std::vector<SkipRecord>& skipped)
{
  nlohmann::ordered_json j = header("cpse", config);
  j["cpse"] = report.cpse;
  j["L"] = report.layer_count;
  j["B"] = report.series.bins;
  j["N"] = report.series.period;
  j["epsilon"] = report.series.epsilon;
  j["log_floor"] = report.log_floor;
  j["log_floor_hits"] = report.log_floor_hits;
  j["skip_first"] = report.skip_first;
  j["eligibility"] = config.eligibility.describe();
  j["series"] = series_json(report.series, report.log_floor);
  j["skipped"] = skipped_json(skipped);
  return j;
}

nlohmann::ordered_json to_json(const BranchedReport& report, const RunConfig& config,
                               const std::vector<SkipRecord>& skipped)
{
  nlohmann::ordered_json j = header("branched_cpse", config);
  j["cpse"] = report.total;
  j["B"] = config.bins;
  j["epsilon"] = config.epsilon;
  j["log_floor"] = config.log_floor;
  j["eligibility"] = config.eligibility.describe();

  nlohmann::ordered_json bps = nlohmann::ordered_json::array();
  for (const BranchPoint& bp : report.decomposition.branch_points)
    bps.push_back({{"node", bp.node}, {"out_degree", bp.out_degree}});
  j["branch_points"] = std::move(bps);

  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const BranchTerm& t : report.terms)
  {
    nlohmann::ordered_json tj;
    tj["nodes"] = t.nodes;
    tj["coefficient"] = t.coefficient;
    tj["cpse"] = t.cpse;
    tj["L"] = t.nodes.size();
    if (t.nodes.size() >= 2)
    {
      tj["N"] = t.report.series.period;
      tj["log_floor_hits"] = t.report.log_floor_hits;
      tj["series"] = series_json(t.report.series, t.report.log_floor);
    }
    terms.push_back(std::move(tj));
  }
  j["terms"] = std::move(terms);
  j["skipped"] = skipped_json(skipped);
  return j;
}

nlohmann::ordered_json to_json(const TrendReport& report, const SurrogateSpec& spec, const RunConfig& config)
{
  nlohmann::ordered_json j = header("ergodicity_trend", config);
  nlohmann::ordered_json sizes = nlohmann::ordered_json::array();
  for (const auto& [rows, cols] : spec.sizes)
    sizes.push_back(std::to_string(rows) + "x" + std::to_string(cols));
  j["sizes"] = std::move(sizes);
  j["distribution"] = "gaussian";
  j["seed"] = spec.seed;
  j["spearman"] = report.spearman;
  j["monotone_fraction"] = report.monotone_fraction;
  j["saturated"] = report.saturated;
  j["cpse"] = report.cpse;
  j["N"] = report.series.period;
  j["log_floor_hits"] = report.log_floor_hits;
  j["series"] = series_json(report.series, config.log_floor);
  return j;
}

nlohmann::ordered_json to_json(const std::vector<CorrelationReport>& reports)
{
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const CorrelationReport& r : reports)
  {
    nlohmann::ordered_json j;
    j["group"] = r.group;
    j["n"] = r.n;
    j["rho_top1"] = r.rho_top1;
    j["rho_top5"] = r.rho_top5;
    out.push_back(std::move(j));
  }
  return out;
}

std::string emit(const PseSeries& series, double log_floor, Format format)
{
  std::ostringstream os;
  switch (format)
  {
  case Format::csv:
    os << "l,D_pse,log10_D_pse\n";
    for (const PsePair& p : series.pairs)
      os << p.l << ',' << format_double(p.d_pse) << ',' << format_double(std::log10(std::max(p.d_pse, log_floor)))
         << '\n';
    break;
  case Format::tsv_plot:
    os << "layer\tlog10_D_pse\n";
    for (const PsePair& p : series.pairs)
      os << p.l << '\t' << format_double(std::log10(std::max(p.d_pse, log_floor))) << '\n';
    break;
  case Format::json:
    os << series_json(series, log_floor).dump(2) << '\n';
    break;
  }
  return os.str();
}

std::string emit(const CpseReport& report, const RunConfig& config, Format format)
{
  if (format != Format::json)
    return emit(report.series, report.log_floor, format);
  return to_json(report, config).dump(2) + "\n";
}

std::string emit(const std::vector<CorrelationReport>& reports, Format format)
{
  if (format == Format::json)
    return to_json(reports).dump(2) + "\n";
  if (format != Format::csv)
    throw InputError("correlations support csv and json only");
  std::ostringstream os;
  os << "group,n,rho_top1,rho_top5\n";
  for (const CorrelationReport& r : reports)
    os << r.group << ',' << r.n << ',' << format_double(r.rho_top1) << ',' << format_double(r.rho_top5) << '\n';
  return os.str();
}

} // namespace cpse
