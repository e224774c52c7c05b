// Copyright 2026 The cpse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace cpse {

// Sample Pearson correlation. Needs equal lengths >= 3 and nonzero variance.
double pearson(std::span<const double> x, std::span<const double> y);

// Average ranks (1-based); ties share the mean of their positions.
std::vector<double> ranks(std::span<const double> x);

// Pearson on average ranks.
double spearman(std::span<const double> x, std::span<const double> y);

double median(std::vector<double> values);

struct PerformanceRecord
{
  std::string architecture;
  double top1_error = 0.0; // percent
  double top5_error = 0.0; // percent
  double cpse = 0.0;
};

struct CorrelationReport
{
  std::string group;
  std::size_t n = 0;
  double rho_top1 = 0.0;
  double rho_top5 = 0.0;
};

enum class Grouping
{
  prefix, // leading letters plus trailing letter suffix: vgg11bn -> vgg_bn
  all
};

Grouping parse_grouping(const std::string& name);
std::string group_key(const std::string& architecture, Grouping grouping);

// CSV with header columns architecture,top1,top5,cpse (any order).
std::vector<PerformanceRecord> read_records_csv(std::istream& is);
std::vector<PerformanceRecord> load_records_csv(const std::filesystem::path& path);

// One report per group, in order of first appearance. Throws InputError for
// groups with fewer than three records.
std::vector<CorrelationReport> correlate(std::span<const PerformanceRecord> records, Grouping grouping);

} // namespace cpse
