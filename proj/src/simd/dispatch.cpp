// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdlib>
#include <cstring>

#include "wep/simd/kernels.hpp"

namespace wep::simd
{

#if defined(WEP_HAVE_AVX2)
const KernelTable *avx2_table_unchecked() noexcept;
#endif

namespace
{

bool cpu_has_avx2_fma() noexcept
{
#if defined(WEP_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable &select() noexcept
{
  if (const char *forced = std::getenv("WEP_SIMD"); forced && std::strcmp(forced, "scalar") == 0)
  {
    return scalar_table();
  }
  if (const KernelTable *t = avx2_table())
  {
    return *t;
  }
  return scalar_table();
}

}  // namespace

const KernelTable *avx2_table() noexcept
{
#if defined(WEP_HAVE_AVX2)
  if (cpu_has_avx2_fma())
  {
    return avx2_table_unchecked();
  }
#endif
  return nullptr;
}

const KernelTable &active() noexcept
{
  static const KernelTable &table = select();
  return table;
}

double norm(std::span<const cplx> x)
{
  return std::sqrt(norm_sq(x));
}

}  // namespace wep::simd
