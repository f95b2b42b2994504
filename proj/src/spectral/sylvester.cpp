// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "wep/spectral/sylvester.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "wep/simd/kernels.hpp"

namespace wep::spectral
{

SylvesterKernel::SylvesterKernel(std::span<const cplx> a_first_column, std::size_t n_x,
                                 double h_x, PlanRigor rigor)
  : a_(a_first_column, n_x, rigor), b_(n_x, h_x, 1, rigor)
{
  const std::size_t nz = a_.size();
  const auto lam_a = a_.eigenvalues();
  const auto lam_b = b_.eigenvalues();

  scaled_inverse_ = CMatrix(nz, n_x);
  min_separation_ = std::numeric_limits<double>::infinity();
  for (std::size_t q = 0; q < n_x; ++q)
  {
    for (std::size_t p = 0; p < nz; ++p)
    {
      const cplx d = lam_a[p] + lam_b[q];
      const double mag = std::abs(d);
      if (mag < min_separation_)
      {
        min_separation_ = mag;
      }
      if (mag < kCollisionTolerance)
      {
        std::ostringstream msg;
        msg << "eig(A) and eig(-B) collide at (p=" << p << ", q=" << q
            << "): |lambda_A + lambda_B| = " << mag;
        throw Error(ErrorCode::SpectrumCollision, msg.str());
      }
      scaled_inverse_(p, q) = cplx{0.0, 0.5} / d;
    }
  }

  const std::size_t m = 2 * (n_x + 1);
  forward_ = FftPlan::two_dimensional(nz, m, FftDirection::Forward, rigor);
  backward_ = FftPlan::two_dimensional(nz, m, FftDirection::Backward, rigor);
}

void SylvesterKernel::check_shape(const CMatrix &m, const char *what) const
{
  if (m.rows() != n_z() || m.cols() != n_x())
  {
    std::ostringstream msg;
    msg << what << " is " << m.rows() << "x" << m.cols() << ", expected " << n_z() << "x"
        << n_x();
    throw Error(ErrorCode::DimensionMismatch, msg.str());
  }
}

void SylvesterKernel::check_size(std::size_t n, const char *what) const
{
  if (n != n_z() * n_x())
  {
    std::ostringstream msg;
    msg << what << " has " << n << " entries, expected " << n_z() << "x" << n_x();
    throw Error(ErrorCode::DimensionMismatch, msg.str());
  }
}

void SylvesterKernel::solve(std::span<const cplx> c, std::span<cplx> x,
                            SylvesterWorkspace &ws) const
{
  check_size(c.size(), "Sylvester right-hand side");
  check_size(x.size(), "Sylvester solution");
  const std::size_t nz = n_z(), nx = n_x(), m = 2 * (nx + 1);
  ws.extended.resize(nz * m);
  cplx *e = ws.extended.data();
  auto ecol = [&](std::size_t j) { return std::span<cplx>(e + j * nz, nz); };

  // Odd extension in x: [0, C, 0, -flip(C)].
  std::fill_n(e, nz, cplx{});
  std::fill_n(e + (nx + 1) * nz, nz, cplx{});
  for (std::size_t j = 1; j <= nx; ++j)
  {
    const auto src = c.subspan((j - 1) * nz, nz);
    std::copy(src.begin(), src.end(), ecol(j).begin());
    auto neg = ecol(m - j);
    for (std::size_t i = 0; i < nz; ++i)
    {
      neg[i] = -src[i];
    }
  }

  forward_.execute(e);

  // Spectral division, then rebuild the odd extension of Y for the inverse pass.
  for (std::size_t j = 1; j <= nx; ++j)
  {
    simd::mul(scaled_inverse_.col(j - 1), ecol(j), ecol(j));
  }
  std::fill_n(e, nz, cplx{});
  std::fill_n(e + (nx + 1) * nz, nz, cplx{});
  for (std::size_t j = 1; j <= nx; ++j)
  {
    const auto src = ecol(j);
    auto neg = ecol(m - j);
    for (std::size_t i = 0; i < nz; ++i)
    {
      neg[i] = -src[i];
    }
  }

  backward_.execute(e);

  // Backward DFT of the extension carries n_z * 2i; the sine inverse carries 2/(n_x+1).
  const cplx factor{0.0, -1.0 / (static_cast<double>(nz) * static_cast<double>(nx + 1))};
  for (std::size_t j = 1; j <= nx; ++j)
  {
    const auto src = ecol(j);
    auto dst = x.subspan((j - 1) * nz, nz);
    for (std::size_t i = 0; i < nz; ++i)
    {
      dst[i] = factor * src[i];
    }
  }
}

void SylvesterKernel::solve(std::span<const cplx> c, std::span<cplx> x) const
{
  thread_local SylvesterWorkspace ws;
  solve(c, x, ws);
}

void SylvesterKernel::solve(const CMatrix &c, CMatrix &x, SylvesterWorkspace &ws) const
{
  check_shape(c, "Sylvester right-hand side");
  if (x.rows() != n_z() || x.cols() != n_x())
  {
    x = CMatrix(n_z(), n_x());
  }
  solve(c.flat(), x.flat(), ws);
}

void SylvesterKernel::solve(const CMatrix &c, CMatrix &x) const
{
  thread_local SylvesterWorkspace ws;
  solve(c, x, ws);
}

CMatrix SylvesterKernel::solve(const CMatrix &c) const
{
  CMatrix x(n_z(), n_x());
  solve(c, x);
  return x;
}

void SylvesterKernel::apply(std::span<const cplx> x, std::span<cplx> y) const
{
  check_size(x.size(), "Sylvester argument");
  check_size(y.size(), "Sylvester result");
  const std::size_t nz = n_z(), nx = n_x();

  // A X
  if (a_.is_periodic_tridiagonal() && nz >= 3)
  {
    const auto col = a_.first_column();
    const cplx c0 = col[0], sub = col[1], sup = col[nz - 1];
    for (std::size_t j = 0; j < nx; ++j)
    {
      const auto xs = x.subspan(j * nz, nz);
      auto ys = y.subspan(j * nz, nz);
      ys[0] = c0 * xs[0] + sub * xs[nz - 1] + sup * xs[1];
      for (std::size_t i = 1; i + 1 < nz; ++i)
      {
        ys[i] = c0 * xs[i] + sub * xs[i - 1] + sup * xs[i + 1];
      }
      ys[nz - 1] = c0 * xs[nz - 1] + sub * xs[nz - 2] + sup * xs[0];
    }
  }
  else
  {
    a_.apply(x, y);
  }

  // + X B, B = tridiag(1,-2,1)/h^2 with homogeneous Dirichlet ends
  const double h = b_.step();
  const double inv_h2 = 1.0 / (h * h);
  for (std::size_t j = 0; j < nx; ++j)
  {
    auto ys = y.subspan(j * nz, nz);
    simd::axpy(-2.0 * inv_h2, x.subspan(j * nz, nz), ys);
    if (j > 0)
    {
      simd::axpy(inv_h2, x.subspan((j - 1) * nz, nz), ys);
    }
    if (j + 1 < nx)
    {
      simd::axpy(inv_h2, x.subspan((j + 1) * nz, nz), ys);
    }
  }
}

void SylvesterKernel::apply(const CMatrix &x, CMatrix &y) const
{
  check_shape(x, "Sylvester argument");
  if (y.rows() != n_z() || y.cols() != n_x())
  {
    y = CMatrix(n_z(), n_x());
  }
  apply(x.flat(), y.flat());
}

CMatrix SylvesterKernel::apply(const CMatrix &x) const
{
  CMatrix y(n_z(), n_x());
  apply(x, y);
  return y;
}

}  // namespace wep::spectral
