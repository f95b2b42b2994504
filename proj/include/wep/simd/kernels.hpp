// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef WEP_SIMD_KERNELS_HPP
#define WEP_SIMD_KERNELS_HPP

#include <cstddef>
#include <span>

#include "wep/common.hpp"

// Elementwise complex kernels used by every hot loop in the solver. Each kernel
// has a scalar reference implementation and, on x86-64, an AVX2+FMA variant; the
// active table is chosen once at first use from the CPU feature bits. Setting
// WEP_SIMD=scalar in the environment forces the reference table.

namespace wep::simd
{

struct KernelTable
{
  const char *name;
  // y += a * x
  void (*axpy)(std::size_t n, cplx a, const cplx *x, cplx *y);
  // x *= a
  void (*scale)(std::size_t n, cplx a, cplx *x);
  // sum(conj(x) * y)
  cplx (*dotc)(std::size_t n, const cplx *x, const cplx *y);
  // sum |x|^2
  double (*norm_sq)(std::size_t n, const cplx *x);
  // y = a .* x (complex Hadamard product, y may alias x)
  void (*mul)(std::size_t n, const cplx *a, const cplx *x, cplx *y);
  // y = k .* x  with k real (y may alias x)
  void (*mul_real)(std::size_t n, const double *k, const cplx *x, cplx *y);
  // y += k .* x with k real
  void (*mul_real_acc)(std::size_t n, const double *k, const cplx *x, cplx *y);
};

const KernelTable &scalar_table() noexcept;

// nullptr when the variant is not compiled in or the CPU lacks the features.
const KernelTable *avx2_table() noexcept;

// Table selected for this process.
const KernelTable &active() noexcept;

inline void axpy(cplx a, std::span<const cplx> x, std::span<cplx> y)
{
  active().axpy(x.size(), a, x.data(), y.data());
}

inline void scale(cplx a, std::span<cplx> x)
{
  active().scale(x.size(), a, x.data());
}

inline cplx dotc(std::span<const cplx> x, std::span<const cplx> y)
{
  return active().dotc(x.size(), x.data(), y.data());
}

inline double norm_sq(std::span<const cplx> x)
{
  return active().norm_sq(x.size(), x.data());
}

double norm(std::span<const cplx> x);

inline void mul(std::span<const cplx> a, std::span<const cplx> x, std::span<cplx> y)
{
  active().mul(x.size(), a.data(), x.data(), y.data());
}

inline void mul_real(std::span<const double> k, std::span<const cplx> x, std::span<cplx> y)
{
  active().mul_real(x.size(), k.data(), x.data(), y.data());
}

inline void mul_real_acc(std::span<const double> k, std::span<const cplx> x,
                         std::span<cplx> y)
{
  active().mul_real_acc(x.size(), k.data(), x.data(), y.data());
}

}  // namespace wep::simd

#endif  // WEP_SIMD_KERNELS_HPP
