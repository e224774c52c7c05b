// Copyright 2026 The cpse Authors
// SPDX-License-Identifier: Apache-2.0

#include "cpse/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace cpse::simd {

namespace {

bool cpu_has_avx2()
{
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelSet* find(std::string_view name)
{
  for (const KernelSet* set : available_kernels())
    if (set->name == name)
      return set;
  return nullptr;
}

const KernelSet* widest()
{
  return available_kernels().back();
}

const KernelSet* initial()
{
  if (const char* env = std::getenv("CPSE_SIMD"))
  {
    const std::string_view requested(env);
    if (requested != "auto")
      if (const KernelSet* set = find(requested))
        return set;
  }
  return widest();
}

std::atomic<const KernelSet*>& current()
{
  static std::atomic<const KernelSet*> active{initial()};
  return active;
}

} // namespace

std::vector<const KernelSet*> available_kernels()
{
  std::vector<const KernelSet*> sets{&scalar_kernels()};
  if (const KernelSet* set = avx2_kernels(); set && cpu_has_avx2())
    sets.push_back(set);
  // NEON is architecturally mandatory on aarch64.
  if (const KernelSet* set = neon_kernels())
    sets.push_back(set);
  return sets;
}

const KernelSet& active_kernels()
{
  return *current().load(std::memory_order_relaxed);
}

bool select_kernels(std::string_view name)
{
  const KernelSet* set = name == "auto" ? widest() : find(name);
  if (!set)
    return false;
  current().store(set, std::memory_order_relaxed);
  return true;
}

} // namespace cpse::simd
