// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "wep/simd/kernels.hpp"

namespace wep::simd
{

namespace
{

void axpy_scalar(std::size_t n, cplx a, const cplx *x, cplx *y)
{
  for (std::size_t i = 0; i < n; ++i)
  {
    y[i] += a * x[i];
  }
}

void scale_scalar(std::size_t n, cplx a, cplx *x)
{
  for (std::size_t i = 0; i < n; ++i)
  {
    x[i] *= a;
  }
}

cplx dotc_scalar(std::size_t n, const cplx *x, const cplx *y)
{
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i)
  {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

double norm_sq_scalar(std::size_t n, const cplx *x)
{
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
  {
    s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return s;
}

void mul_scalar(std::size_t n, const cplx *a, const cplx *x, cplx *y)
{
  for (std::size_t i = 0; i < n; ++i)
  {
    const double re = a[i].real() * x[i].real() - a[i].imag() * x[i].imag();
    const double im = a[i].real() * x[i].imag() + a[i].imag() * x[i].real();
    y[i] = {re, im};
  }
}

void mul_real_scalar(std::size_t n, const double *k, const cplx *x, cplx *y)
{
  for (std::size_t i = 0; i < n; ++i)
  {
    y[i] = {k[i] * x[i].real(), k[i] * x[i].imag()};
  }
}

void mul_real_acc_scalar(std::size_t n, const double *k, const cplx *x, cplx *y)
{
  for (std::size_t i = 0; i < n; ++i)
  {
    y[i] += cplx{k[i] * x[i].real(), k[i] * x[i].imag()};
  }
}

constexpr KernelTable kScalarTable{"scalar",     axpy_scalar,     scale_scalar,
                                   dotc_scalar,  norm_sq_scalar,  mul_scalar,
                                   mul_real_scalar, mul_real_acc_scalar};

}  // namespace

const KernelTable &scalar_table() noexcept
{
  return kScalarTable;
}

}  // namespace wep::simd
