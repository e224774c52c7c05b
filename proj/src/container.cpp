// Copyright 2026 The cpse Authors
// SPDX-License-Identifier: Apache-2.0

#include "cpse/container.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "cpse/error.hpp"

namespace cpse {

namespace {

constexpr std::uint8_t kMagic[4] = {0x4C, 0x4D, 0x45, 0x43};

template <typename T>
void put_le(std::vector<std::uint8_t>& out, T value)
{
  for (std::size_t i = 0; i < sizeof(T); ++i)
    out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
}

template <typename T>
T get_le(const std::uint8_t* p)
{
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i)
    value |= static_cast<T>(p[i]) << (8 * i);
  return value;
}

DType parse_dtype(const std::string& s)
{
  if (s == "f32")
    return DType::f32;
  if (s == "f64")
    return DType::f64;
  throw InputError("unsupported dtype '" + s + "'");
}

std::size_t checked_product(std::span<const std::size_t> shape)
{
  std::size_t n = 1;
  for (std::size_t p : shape)
  {
    if (p != 0 && n > SIZE_MAX / p)
      throw InputError("shape " + shape_string(shape) + " overflows");
    n *= p;
  }
  return n;
}

} // namespace

std::string_view to_string(DType dtype)
{
  return dtype == DType::f32 ? "f32" : "f64";
}

std::size_t dtype_size(DType dtype)
{
  return dtype == DType::f32 ? 4 : 8;
}

std::string shape_string(std::span<const std::size_t> shape)
{
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < shape.size(); ++i)
    os << (i ? "," : "") << shape[i];
  os << ']';
  return os.str();
}

WeightTensor::WeightTensor(std::string name, std::vector<std::size_t> shape, std::vector<float> values)
  : name(std::move(name)), shape(std::move(shape)), data(std::move(values))
{}

WeightTensor::WeightTensor(std::string name, std::vector<std::size_t> shape, std::vector<double> values)
  : name(std::move(name)), shape(std::move(shape)), data(std::move(values))
{}

std::size_t WeightTensor::size() const
{
  return std::visit([](const auto& v) { return v.size(); }, data);
}

std::size_t WeightTensor::shape_product() const
{
  return checked_product(shape);
}

std::vector<double> WeightTensor::to_f64() const
{
  return std::visit([](const auto& v) { return std::vector<double>(v.begin(), v.end()); }, data);
}

bool WeightTensor::operator==(const WeightTensor& other) const
{
  if (name != other.name || shape != other.shape || data.index() != other.data.index())
    return false;
  // Bitwise, so NaN payloads and signed zeros count.
  return std::visit(
    [&](const auto& v) {
      const auto& w = std::get<std::decay_t<decltype(v)>>(other.data);
      return v.size() == w.size() && std::memcmp(v.data(), w.data(), v.size() * sizeof(v[0])) == 0;
    },
    data);
}

const WeightTensor* Container::find(std::string_view name) const
{
  for (const WeightTensor& t : layers)
    if (t.name == name)
      return &t;
  return nullptr;
}

std::vector<std::string> validate_container(const Container& container)
{
  std::vector<std::string> diagnostics;
  if (container.version != kLmecVersion)
    diagnostics.push_back("unsupported version " + std::to_string(container.version));
  if (container.layers.empty())
    diagnostics.push_back("empty container");

  std::set<std::string> seen;
  std::set<std::string> reported;
  for (const WeightTensor& t : container.layers)
  {
    const std::string tag = "layer '" + t.name + "'";
    if (t.name.empty())
      diagnostics.push_back("layer with empty name");
    if (!seen.insert(t.name).second && reported.insert(t.name).second)
      diagnostics.push_back("duplicate layer name '" + t.name + "'");
    if (t.shape.empty())
      diagnostics.push_back(tag + ": empty shape");
    if (std::find(t.shape.begin(), t.shape.end(), std::size_t{0}) != t.shape.end())
      diagnostics.push_back(tag + ": zero-sized dimension");
    try
    {
      const std::size_t expected = t.shape_product();
      if (!t.shape.empty() && expected != t.size())
        diagnostics.push_back(tag + ": data length " + std::to_string(t.size()) + " does not match shape " +
                              shape_string(t.shape));
    }
    catch (const InputError& e)
    {
      diagnostics.push_back(tag + ": " + e.what());
    }
  }

  if (container.graph && !container.graph->is_object() && !container.graph->is_null())
    diagnostics.push_back("graph must be an object or null");
  return diagnostics;
}

std::vector<std::uint8_t> write_container(std::span<const WeightTensor> layers,
                                          const std::optional<nlohmann::json>& graph)
{
  if (layers.empty())
    throw InputError("empty container");

  Container probe;
  probe.layers.assign(layers.begin(), layers.end());
  probe.graph = graph;
  if (const auto diagnostics = validate_container(probe); !diagnostics.empty())
    throw InputError(diagnostics.front());

  nlohmann::ordered_json manifest;
  manifest["layers"] = nlohmann::ordered_json::array();
  std::uint64_t offset = 0;
  for (const WeightTensor& t : layers)
  {
    nlohmann::ordered_json entry;
    entry["name"] = t.name;
    entry["shape"] = t.shape;
    entry["dtype"] = to_string(t.dtype());
    entry["offset"] = offset;
    entry["nbytes"] = t.nbytes();
    manifest["layers"].push_back(std::move(entry));
    offset += t.nbytes();
  }
  manifest["graph"] = graph ? nlohmann::ordered_json::parse(graph->dump()) : nlohmann::ordered_json();
  const std::string text = manifest.dump();

  std::vector<std::uint8_t> out;
  out.reserve(kLmecHeaderSize + text.size() + offset);
  for (std::uint8_t b : kMagic)
    out.push_back(b);
  put_le<std::uint32_t>(out, kLmecVersion);
  put_le<std::uint64_t>(out, text.size());
  out.insert(out.end(), text.begin(), text.end());

  for (const WeightTensor& t : layers)
  {
    if (const auto* f = std::get_if<std::vector<float>>(&t.data))
      for (float v : *f)
        put_le<std::uint32_t>(out, std::bit_cast<std::uint32_t>(v));
    else
      for (double v : std::get<std::vector<double>>(t.data))
        put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v));
  }
  return out;
}

std::vector<std::uint8_t> write_container(const Container& container)
{
  if (container.version != kLmecVersion)
    throw InputError("unsupported version " + std::to_string(container.version));
  return write_container(container.layers, container.graph);
}

Container read_container(std::span<const std::uint8_t> bytes)
{
  if (bytes.size() < 4 || !std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin()))
    throw InputError("not an LMEC file");
  if (bytes.size() < kLmecHeaderSize)
    throw InputError("truncated header");

  Container c;
  c.version = get_le<std::uint32_t>(bytes.data() + 4);
  if (c.version != kLmecVersion)
    throw InputError("unsupported LMEC version " + std::to_string(c.version));

  const std::uint64_t manifest_len = get_le<std::uint64_t>(bytes.data() + 8);
  if (manifest_len > bytes.size() - kLmecHeaderSize)
    throw InputError("truncated manifest");

  const auto* manifest_begin = reinterpret_cast<const char*>(bytes.data() + kLmecHeaderSize);
  nlohmann::json manifest;
  try
  {
    manifest = nlohmann::json::parse(manifest_begin, manifest_begin + manifest_len);
  }
  catch (const nlohmann::json::exception& e)
  {
    throw InputError(std::string("malformed manifest: ") + e.what());
  }

  const std::span<const std::uint8_t> region = bytes.subspan(kLmecHeaderSize + manifest_len);

  struct Extent
  {
    std::uint64_t offset, nbytes;
    std::string name;
  };
  std::vector<Extent> extents;

  try
  {
    if (!manifest.is_object() || !manifest.contains("layers") || !manifest.at("layers").is_array())
      throw InputError("manifest has no layer list");

    for (const auto& entry : manifest.at("layers"))
    {
      WeightTensor t;
      t.name = entry.at("name").get<std::string>();
      t.shape = entry.at("shape").get<std::vector<std::size_t>>();
      const DType dtype = parse_dtype(entry.at("dtype").get<std::string>());
      const auto offset = entry.at("offset").get<std::uint64_t>();
      const auto nbytes = entry.at("nbytes").get<std::uint64_t>();

      const std::size_t count = checked_product(t.shape);
      if (count > SIZE_MAX / dtype_size(dtype) || nbytes != count * dtype_size(dtype))
        throw InputError("layer '" + t.name + "': nbytes " + std::to_string(nbytes) +
                         " inconsistent with shape " + shape_string(t.shape) + " and dtype " +
                         std::string(to_string(dtype)));
      if (offset > region.size() || nbytes > region.size() - offset)
        throw InputError("truncated data region: layer '" + t.name + "' needs bytes [" + std::to_string(offset) +
                         ", " + std::to_string(offset + nbytes) + ") but only " + std::to_string(region.size()) +
                         " are present");

      const std::uint8_t* p = region.data() + offset;
      if (dtype == DType::f32)
      {
        std::vector<float> values(count);
        for (std::size_t i = 0; i < count; ++i)
          values[i] = std::bit_cast<float>(get_le<std::uint32_t>(p + 4 * i));
        t.data = std::move(values);
      }
      else
      {
        std::vector<double> values(count);
        for (std::size_t i = 0; i < count; ++i)
          values[i] = std::bit_cast<double>(get_le<std::uint64_t>(p + 8 * i));
        t.data = std::move(values);
      }
      extents.push_back({offset, nbytes, t.name});
      c.layers.push_back(std::move(t));
    }

    if (manifest.contains("graph") && !manifest.at("graph").is_null())
      c.graph = manifest.at("graph");
  }
  catch (const nlohmann::json::exception& e)
  {
    throw InputError(std::string("malformed manifest: ") + e.what());
  }

  std::sort(extents.begin(), extents.end(), [](const Extent& a, const Extent& b) { return a.offset < b.offset; });
  for (std::size_t i = 1; i < extents.size(); ++i)
    if (extents[i - 1].offset + extents[i - 1].nbytes > extents[i].offset)
      throw InputError("layers '" + extents[i - 1].name + "' and '" + extents[i].name + "' overlap");

  if (const auto diagnostics = validate_container(c); !diagnostics.empty())
    throw InputError(diagnostics.front());
  return c;
}

Container load_container(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw InputError("cannot open '" + path.string() + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return read_container(bytes);
}

void save_container(const std::filesystem::path& path, const Container& container)
{
  const std::vector<std::uint8_t> bytes = write_container(container);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw InputError("cannot write '" + path.string() + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out)
    throw InputError("short write to '" + path.string() + "'");
}

} // namespace cpse
