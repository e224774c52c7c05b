// Copyright 2026 The cpse Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "cpse/error.hpp"
#include "cpse/report.hpp"

using namespace cpse;

namespace {

CpseReport sample_report()
{
  CpseReport r;
  r.series.pairs = {{1, 0.5}, {2, 0.0}};
  r.series.bins = 100;
  r.series.period = 64;
  r.series.epsilon = 1e-10;
  r.layer_count = 3;
  r.log_floor = 1e-12;
  r.log_floor_hits = 1;
  r.cpse = (std::log10(0.5) + -12.0) / 3.0;
  return r;
}

} // namespace

TEST_CASE("parse_format")
{
  CHECK(parse_format("csv") == Format::csv);
  CHECK(parse_format("json") == Format::json);
  CHECK(parse_format("tsv-plot") == Format::tsv_plot);
  CHECK_THROWS_WITH_AS(parse_format("xml"), "unknown format 'xml'", InputError);
}

TEST_CASE("format_double is shortest round-trip")
{
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-2.5) == "-2.5");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("cPSE report JSON carries provenance")
{
  const RunConfig config;
  const std::vector<SkipRecord> skipped{{"fc.bias", {10}, "fewer than 2 dimensions"}};
  const auto j = to_json(sample_report(), config, skipped);
  CHECK(j["tool"] == "cpse");
  CHECK(j["version"] == tool_version());
  CHECK(j["kind"] == "cpse");
  CHECK(j["config"]["bins"] == 100);
  CHECK(j["L"] == 3);
  CHECK(j["B"] == 100);
  CHECK(j["N"] == 64);
  CHECK(j["epsilon"] == 1e-10);
  CHECK(j["log_floor"] == 1e-12);
  CHECK(j["log_floor_hits"] == 1);
  CHECK(j["skip_first"] == false);
  CHECK(j["eligibility"] == config.eligibility.describe());
  REQUIRE(j["series"].size() == 2);
  CHECK(j["series"][1]["log10_d_pse"] == -12.0);
  REQUIRE(j["skipped"].size() == 1);
  CHECK(j["skipped"][0]["reason"] == "fewer than 2 dimensions");
}

TEST_CASE("series CSV and tsv-plot")
{
  const CpseReport r = sample_report();
  const RunConfig config;
  CHECK(emit(r, config, Format::csv) == "l,D_pse,log10_D_pse\n1,0.5," + format_double(std::log10(0.5)) + "\n2,0,-12\n");
  CHECK(emit(r, config, Format::tsv_plot) == "layer\tlog10_D_pse\n1\t" + format_double(std::log10(0.5)) + "\n2\t-12\n");
  const auto parsed = nlohmann::json::parse(emit(r, config, Format::json));
  CHECK(parsed["cpse"] == r.cpse);
}

TEST_CASE("correlation output")
{
  const std::vector<CorrelationReport> reports{{"resnet", 5, 0.9, 0.8}};
  CHECK(emit(reports, Format::csv) == "group,n,rho_top1,rho_top5\nresnet,5,0.9,0.8\n");
  const auto j = nlohmann::json::parse(emit(reports, Format::json));
  CHECK(j[0]["group"] == "resnet");
  CHECK_THROWS_AS(emit(reports, Format::tsv_plot), InputError);
}
