// Copyright 2026 The cpse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace cpse {

// LMEC v1 layout:
//   "LMEC" | u32 LE version | u64 LE manifest length | JSON manifest | data
// Manifest: {"layers":[{"name","shape","dtype","offset","nbytes"}...],"graph":...}
// with offsets relative to the first byte after the manifest.
inline constexpr std::uint32_t kLmecVersion = 1;
inline constexpr std::size_t kLmecHeaderSize = 4 + 4 + 8;

enum class DType
{
  f32,
  f64
};

std::string_view to_string(DType dtype);
std::size_t dtype_size(DType dtype);

struct WeightTensor
{
  std::string name;
  std::vector<std::size_t> shape;
  // f32 tensors keep their float storage so writes are bit-exact.
  std::variant<std::vector<float>, std::vector<double>> data;

  WeightTensor() = default;
  WeightTensor(std::string name, std::vector<std::size_t> shape, std::vector<float> values);
  WeightTensor(std::string name, std::vector<std::size_t> shape, std::vector<double> values);

  DType dtype() const { return data.index() == 0 ? DType::f32 : DType::f64; }
  std::size_t size() const;
  std::size_t shape_product() const;
  std::size_t nbytes() const { return size() * dtype_size(dtype()); }

  // Values promoted to double.
  std::vector<double> to_f64() const;

  bool operator==(const WeightTensor& other) const;
};

struct Container
{
  std::uint32_t version = kLmecVersion;
  std::vector<WeightTensor> layers;
  std::optional<nlohmann::json> graph;

  const WeightTensor* find(std::string_view name) const;

  bool operator==(const Container& other) const = default;
};

// One human-readable line per violated invariant; empty when valid.
std::vector<std::string> validate_container(const Container& container);

std::vector<std::uint8_t> write_container(std::span<const WeightTensor> layers,
                                          const std::optional<nlohmann::json>& graph = std::nullopt);
std::vector<std::uint8_t> write_container(const Container& container);

Container read_container(std::span<const std::uint8_t> bytes);

Container load_container(const std::filesystem::path& path);
void save_container(const std::filesystem::path& path, const Container& container);

std::string shape_string(std::span<const std::size_t> shape);

} // namespace cpse
