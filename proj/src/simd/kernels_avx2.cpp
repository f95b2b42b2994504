// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

// Compiled with -mavx2 -mfma. Nothing here may run before the dispatcher has
// confirmed CPU support.

#include <immintrin.h>

#include "wep/simd/kernels.hpp"

namespace wep::simd
{

namespace
{

// Two interleaved complex numbers per register: [re0 im0 re1 im1].

inline __m256d load2(const cplx *p)
{
  return _mm256_loadu_pd(reinterpret_cast<const double *>(p));
}

inline void store2(cplx *p, __m256d v)
{
  _mm256_storeu_pd(reinterpret_cast<double *>(p), v);
}

// a * x for two complex lanes, given a split into broadcast re/im parts.
inline __m256d cmul(__m256d are, __m256d aim, __m256d x)
{
  const __m256d xs = _mm256_permute_pd(x, 0b0101);
  return _mm256_fmaddsub_pd(are, x, _mm256_mul_pd(aim, xs));
}

inline double hsum(__m256d v)
{
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// [k0 k0 k1 k1] from two consecutive reals.
inline __m256d load_real_pair(const double *k)
{
  const __m256d v = _mm256_castpd128_pd256(_mm_loadu_pd(k));
  return _mm256_permute4x64_pd(v, 0b01010000);
}

void axpy_avx2(std::size_t n, cplx a, const cplx *x, cplx *y)
{
  const __m256d are = _mm256_set1_pd(a.real());
  const __m256d aim = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
  {
    const __m256d y0 = _mm256_add_pd(load2(y + i), cmul(are, aim, load2(x + i)));
    const __m256d y1 = _mm256_add_pd(load2(y + i + 2), cmul(are, aim, load2(x + i + 2)));
    store2(y + i, y0);
    store2(y + i + 2, y1);
  }
  for (; i + 2 <= n; i += 2)
  {
    store2(y + i, _mm256_add_pd(load2(y + i), cmul(are, aim, load2(x + i))));
  }
  for (; i < n; ++i)
  {
    y[i] += a * x[i];
  }
}

void scale_avx2(std::size_t n, cplx a, cplx *x)
{
  const __m256d are = _mm256_set1_pd(a.real());
  const __m256d aim = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
  {
    store2(x + i, cmul(are, aim, load2(x + i)));
  }
  for (; i < n; ++i)
  {
    x[i] *= a;
  }
}

cplx dotc_avx2(std::size_t n, const cplx *x, const cplx *y)
{
  // re accumulates x.*y lanes, im accumulates x.*swap(y) lanes
  __m256d re0 = _mm256_setzero_pd(), re1 = _mm256_setzero_pd();
  __m256d im0 = _mm256_setzero_pd(), im1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
  {
    const __m256d x0 = load2(x + i), x1 = load2(x + i + 2);
    const __m256d y0 = load2(y + i), y1 = load2(y + i + 2);
    re0 = _mm256_fmadd_pd(x0, y0, re0);
    re1 = _mm256_fmadd_pd(x1, y1, re1);
    im0 = _mm256_fmadd_pd(x0, _mm256_permute_pd(y0, 0b0101), im0);
    im1 = _mm256_fmadd_pd(x1, _mm256_permute_pd(y1, 0b0101), im1);
  }
  for (; i + 2 <= n; i += 2)
  {
    const __m256d x0 = load2(x + i), y0 = load2(y + i);
    re0 = _mm256_fmadd_pd(x0, y0, re0);
    im0 = _mm256_fmadd_pd(x0, _mm256_permute_pd(y0, 0b0101), im0);
  }
  const __m256d re = _mm256_add_pd(re0, re1);
  // even lanes hold re(x)*im(y), odd lanes im(x)*re(y)
  const __m256d sign = _mm256_set_pd(-1.0, 1.0, -1.0, 1.0);
  const __m256d im = _mm256_mul_pd(_mm256_add_pd(im0, im1), sign);
  double sre = hsum(re), sim = hsum(im);
  for (; i < n; ++i)
  {
    sre += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    sim += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {sre, sim};
}

double norm_sq_avx2(std::size_t n, const cplx *x)
{
  __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
  {
    const __m256d x0 = load2(x + i), x1 = load2(x + i + 2);
    s0 = _mm256_fmadd_pd(x0, x0, s0);
    s1 = _mm256_fmadd_pd(x1, x1, s1);
  }
  for (; i + 2 <= n; i += 2)
  {
    const __m256d x0 = load2(x + i);
    s0 = _mm256_fmadd_pd(x0, x0, s0);
  }
  double s = hsum(_mm256_add_pd(s0, s1));
  for (; i < n; ++i)
  {
    s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return s;
}

void mul_avx2(std::size_t n, const cplx *a, const cplx *x, cplx *y)
{
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
  {
    const __m256d av = load2(a + i);
    const __m256d are = _mm256_movedup_pd(av);
    const __m256d aim = _mm256_permute_pd(av, 0b1111);
    store2(y + i, cmul(are, aim, load2(x + i)));
  }
  for (; i < n; ++i)
  {
    const double re = a[i].real() * x[i].real() - a[i].imag() * x[i].imag();
    const double im = a[i].real() * x[i].imag() + a[i].imag() * x[i].real();
    y[i] = {re, im};
  }
}

void mul_real_avx2(std::size_t n, const double *k, const cplx *x, cplx *y)
{
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
  {
    store2(y + i, _mm256_mul_pd(load_real_pair(k + i), load2(x + i)));
  }
  for (; i < n; ++i)
  {
    y[i] = {k[i] * x[i].real(), k[i] * x[i].imag()};
  }
}

void mul_real_acc_avx2(std::size_t n, const double *k, const cplx *x, cplx *y)
{
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
  {
    store2(y + i, _mm256_fmadd_pd(load_real_pair(k + i), load2(x + i), load2(y + i)));
  }
  for (; i < n; ++i)
  {
    y[i] += cplx{k[i] * x[i].real(), k[i] * x[i].imag()};
  }
}

constexpr KernelTable kAvx2Table{"avx2",       axpy_avx2,     scale_avx2,
                                 dotc_avx2,    norm_sq_avx2,  mul_avx2,
                                 mul_real_avx2, mul_real_acc_avx2};

}  // namespace

const KernelTable *avx2_table_unchecked() noexcept
{
  return &kAvx2Table;
}

}  // namespace wep::simd
