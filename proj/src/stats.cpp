// Copyright 2026 The cpse Authors
// SPDX-License-Identifier: Apache-2.0

#include "cpse/stats.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "cpse/error.hpp"

namespace cpse {

namespace {

std::vector<std::string> split_csv_line(const std::string& line)
{
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ','))
  {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    fields.push_back(b == std::string::npos ? std::string() : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',')
    fields.emplace_back();
  return fields;
}

double parse_number(const std::string& s, std::size_t line_no)
{
  try
  {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size())
      throw std::invalid_argument(s);
    return v;
  }
  catch (const std::exception&)
  {
    throw InputError("line " + std::to_string(line_no) + ": '" + s + "' is not a number");
  }
}

} // namespace

double pearson(std::span<const double> x, std::span<const double> y)
{
  if (x.size() != y.size())
    throw InputError("pearson: length mismatch");
  if (x.size() < 3)
    throw InputError("pearson: need at least 3 samples");

  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
  {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw InputError("pearson: zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> ranks(std::span<const double> x)
{
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < order.size();)
  {
    std::size_t j = i;
    while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]])
      ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k)
      r[order[k]] = avg;
    i = j + 1;
  }
  return r;
}

double spearman(std::span<const double> x, std::span<const double> y)
{
  const std::vector<double> rx = ranks(x);
  const std::vector<double> ry = ranks(y);
  return pearson(rx, ry);
}

double median(std::vector<double> values)
{
  if (values.empty())
    throw InputError("median of nothing");
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  return values.size() % 2 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

Grouping parse_grouping(const std::string& name)
{
  if (name == "prefix")
    return Grouping::prefix;
  if (name == "all")
    return Grouping::all;
  throw InputError("unknown grouping '" + name + "' (expected prefix or all)");
}

std::string group_key(const std::string& architecture, Grouping grouping)
{
  if (grouping == Grouping::all)
    return "all";
  std::string lead, tail;
  std::size_t i = 0;
  while (i < architecture.size() && std::isalpha(static_cast<unsigned char>(architecture[i])))
    lead += static_cast<char>(std::tolower(static_cast<unsigned char>(architecture[i++])));
  std::size_t j = architecture.size();
  while (j > i && std::isalpha(static_cast<unsigned char>(architecture[j - 1])))
    --j;
  if (j > i)
    for (std::size_t k = j; k < architecture.size(); ++k)
      tail += static_cast<char>(std::tolower(static_cast<unsigned char>(architecture[k])));
  if (lead.empty())
    lead = architecture;
  return tail.empty() ? lead : lead + "_" + tail;
}

std::vector<PerformanceRecord> read_records_csv(std::istream& is)
{
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line))
  {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos)
      break;
  }
  const std::vector<std::string> header = split_csv_line(line);
  const auto column = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
      throw InputError("records CSV is missing column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t c_arch = column("architecture");
  const std::size_t c_top1 = column("top1");
  const std::size_t c_top5 = column("top5");
  const std::size_t c_cpse = column("cpse");

  std::vector<PerformanceRecord> records;
  while (std::getline(is, line))
  {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != header.size())
      throw InputError("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                       " fields, got " + std::to_string(f.size()));
    PerformanceRecord r;
    r.architecture = f[c_arch];
    r.top1_error = parse_number(f[c_top1], line_no);
    r.top5_error = parse_number(f[c_top5], line_no);
    r.cpse = parse_number(f[c_cpse], line_no);
    if (!(r.top1_error > 0.0 && r.top1_error < 100.0) || !(r.top5_error > 0.0 && r.top5_error < 100.0))
      throw InputError("line " + std::to_string(line_no) + ": error percentages must lie in (0, 100)");
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<PerformanceRecord> load_records_csv(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot open '" + path.string() + "'");
  return read_records_csv(in);
}

std::vector<CorrelationReport> correlate(std::span<const PerformanceRecord> records, Grouping grouping)
{
  std::vector<std::string> order;
  std::map<std::string, std::vector<const PerformanceRecord*>> groups;
  for (const PerformanceRecord& r : records)
  {
    const std::string key = group_key(r.architecture, grouping);
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted)
      order.push_back(key);
    it->second.push_back(&r);
  }

  std::vector<CorrelationReport> reports;
  for (const std::string& key : order)
  {
    const auto& members = groups.at(key);
    if (members.size() < 3)
      throw InputError("group too small: '" + key + "' has " + std::to_string(members.size()) +
                       " records, need at least 3");
    std::vector<double> c, t1, t5;
    for (const PerformanceRecord* r : members)
    {
      c.push_back(r->cpse);
      t1.push_back(r->top1_error);
      t5.push_back(r->top5_error);
    }
    reports.push_back({key, members.size(), pearson(c, t1), pearson(c, t5)});
  }
  return reports;
}

} // namespace cpse
