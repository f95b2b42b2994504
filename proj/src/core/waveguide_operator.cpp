// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "wep/core/waveguide_operator.hpp"

#include <cmath>
#include <sstream>

#include "wep/simd/kernels.hpp"

namespace wep
{

namespace
{

// Periodic 3-point stencil y_i = c0 x_i + sub x_{i-1} + sup x_{i+1}, accumulated.
void periodic_stencil_acc(cplx c0, cplx sub, cplx sup, std::span<const cplx> x,
                          std::span<cplx> y)
{
  const std::size_t n = x.size();
  y[0] += c0 * x[0] + sub * x[n - 1] + sup * x[1];
  for (std::size_t i = 1; i + 1 < n; ++i)
  {
    y[i] += c0 * x[i] + sub * x[i - 1] + sup * x[i + 1];
  }
  y[n - 1] += c0 * x[n - 1] + sub * x[n - 2] + sup * x[0];
}

}  // namespace

WaveguideOperator::WaveguideOperator(const DiscreteProblem &problem, cplx gamma)
  : problem_(&problem), gamma_(gamma),
    dtn_(dtn_coefficients(gamma, problem.p(), problem.kappa_minus(), problem.kappa_plus()))
{
  const std::size_t nz = problem.n_z();
  const std::size_t p = problem.p();
  const double d0 = problem.d0();
  for (Side side : {Side::Minus, Side::Plus})
  {
    const std::size_t s = side_index(side);
    const CVector &sk = dtn_.s(side);
    const CVector &spk = dtn_.s_prime(side);
    p_diag_[s].resize(nz);
    p_inv_diag_[s].resize(nz);
    p_prime_diag_[s].resize(nz);
    for (std::size_t q = 0; q < nz; ++q)
    {
      // DFT index q carries Fourier mode m = q (q <= p) or q - n_z.
      const std::size_t idx = q <= p ? q + p : q - (p + 1);
      const cplx lam = sk[idx] + d0;
      p_diag_[s][q] = lam;
      p_prime_diag_[s][q] = spk[idx];
      if (std::abs(lam) <= kSingularModeTolerance)
      {
        p_invertible_[s] = false;
        p_inv_diag_[s][q] = 0.0;
      }
      else
      {
        p_inv_diag_[s][q] = 1.0 / lam;
      }
    }
  }

  const double g = std::abs(gamma);
  double dtn_sum = 0.0;
  for (std::size_t i = 0; i < nz; ++i)
  {
    dtn_sum += std::abs(dtn_.s_plus[i]) + std::abs(dtn_.s_minus[i]);
  }
  denominator_ = problem.norm1_a0() + g * problem.norm1_a1() + g * g * problem.norm1_a2() +
                 problem.norm1_c1() + problem.norm1_c2t() + 2.0 * std::abs(d0) + dtn_sum;
}

std::span<const cplx> WaveguideOperator::p_diagonal(Side side) const noexcept
{
  return p_diag_[side_index(side)];
}

std::span<const cplx> WaveguideOperator::p_prime_diagonal(Side side) const noexcept
{
  return p_prime_diag_[side_index(side)];
}

void WaveguideOperator::apply_p(Side side, std::span<const cplx> g, std::span<cplx> out) const
{
  problem_->apply_boundary_diagonal(p_diag_[side_index(side)], g, out);
}

void WaveguideOperator::apply_p_inverse(Side side, std::span<const cplx> g,
                                        std::span<cplx> out) const
{
  if (!p_invertible_[side_index(side)])
  {
    std::ostringstream msg;
    msg << "P_" << (side == Side::Minus ? '-' : '+') << "(gamma) has a vanishing mode s_k + d_0"
        << " at gamma = " << gamma_;
    throw Error(ErrorCode::SingularDtnMode, msg.str());
  }
  problem_->apply_boundary_diagonal(p_inv_diag_[side_index(side)], g, out);
}

void WaveguideOperator::apply_q(std::span<const cplx> interior, std::span<cplx> out) const
{
  const DiscreteProblem &pr = *problem_;
  const std::size_t nz = pr.n_z(), nx = pr.n_x();
  require(interior.size() == nz * nx && out.size() == nz * nx, ErrorCode::DimensionMismatch,
          "Q(gamma) acts on vectors of length n_x n_z");
  const double iz = 1.0 / pr.h_z();
  const double iz2 = iz * iz;
  const double ix2 = 1.0 / (pr.h_x() * pr.h_x());
  const cplx c0 = -2.0 * iz2 + gamma_ * gamma_ - 2.0 * ix2;
  const cplx sub = iz2 - gamma_ * iz;
  const cplx sup = iz2 + gamma_ * iz;

  auto col = [&](std::span<const cplx> v, std::size_t j) { return v.subspan(j * nz, nz); };
  for (std::size_t j = 0; j < nx; ++j)
  {
    auto y = out.subspan(j * nz, nz);
    const auto x = col(interior, j);
    simd::mul_real(pr.kappa2().col(j), x, y);
    periodic_stencil_acc(c0, sub, sup, x, y);
    if (j > 0)
    {
      simd::axpy(ix2, col(interior, j - 1), y);
    }
    if (j + 1 < nx)
    {
      simd::axpy(ix2, col(interior, j + 1), y);
    }
  }
}

void WaveguideOperator::apply(std::span<const cplx> v, std::span<cplx> out) const
{
  const DiscreteProblem &pr = *problem_;
  const std::size_t nz = pr.n_z(), nx = pr.n_x(), ni = pr.interior_size();
  require(v.size() == pr.size() && out.size() == pr.size(), ErrorCode::DimensionMismatch,
          "M(gamma) acts on vectors of length " + std::to_string(pr.size()) + ", got " +
              std::to_string(v.size()));
  const auto interior = v.subspan(0, ni);
  const auto v_minus = v.subspan(ni, nz);
  const auto v_plus = v.subspan(ni + nz, nz);
  auto top = out.subspan(0, ni);
  auto b_minus = out.subspan(ni, nz);
  auto b_plus = out.subspan(ni + nz, nz);

  apply_q(interior, top);
  const double ix2 = 1.0 / (pr.h_x() * pr.h_x());
  simd::axpy(ix2, v_minus, top.subspan(0, nz));
  simd::axpy(ix2, v_plus, top.subspan((nx - 1) * nz, nz));

  apply_p(Side::Minus, v_minus, b_minus);
  apply_p(Side::Plus, v_plus, b_plus);
  simd::axpy(pr.d1(), interior.subspan(0, nz), b_minus);
  simd::axpy(pr.d2(), interior.subspan(nz, nz), b_minus);
  simd::axpy(pr.d1(), interior.subspan((nx - 1) * nz, nz), b_plus);
  simd::axpy(pr.d2(), interior.subspan((nx - 2) * nz, nz), b_plus);
}

CVector WaveguideOperator::apply(std::span<const cplx> v) const
{
  CVector out(problem_->size());
  apply(v, out);
  return out;
}

void WaveguideOperator::apply_derivative(std::span<const cplx> v, std::span<cplx> out) const
{
  if (!(gamma_.real() < 0.0))
  {
    std::ostringstream msg;
    msg << "M'(gamma) is only valid in the open left half-plane, gamma = " << gamma_;
    throw Error(ErrorCode::RightHalfPlane, msg.str());
  }
  const DiscreteProblem &pr = *problem_;
  const std::size_t nz = pr.n_z(), nx = pr.n_x(), ni = pr.interior_size();
  require(v.size() == pr.size() && out.size() == pr.size(), ErrorCode::DimensionMismatch,
          "M'(gamma) acts on vectors of length " + std::to_string(pr.size()));

  // (A_1 + 2 gamma A_2) vec(X) = vec(2 D_z X + 2 gamma X)
  const double iz = 1.0 / pr.h_z();
  const cplx c0 = 2.0 * gamma_;
  const cplx sub = -iz, sup = iz;
  for (std::size_t j = 0; j < nx; ++j)
  {
    auto y = out.subspan(j * nz, nz);
    std::fill(y.begin(), y.end(), cplx{});
    periodic_stencil_acc(c0, sub, sup, v.subspan(j * nz, nz), y);
  }
  pr.apply_boundary_diagonal(p_prime_diag_[0], v.subspan(ni, nz), out.subspan(ni, nz));
  pr.apply_boundary_diagonal(p_prime_diag_[1], v.subspan(ni + nz, nz), out.subspan(ni + nz, nz));
}

CVector WaveguideOperator::apply_derivative(std::span<const cplx> v) const
{
  CVector out(problem_->size());
  apply_derivative(v, out);
  return out;
}

double WaveguideOperator::relative_residual(std::span<const cplx> v) const
{
  const double nv = simd::norm(v);
  if (nv == 0.0)
  {
    return 0.0;
  }
  const CVector r = apply(v);
  return simd::norm(r) / (nv * denominator_);
}

}  // namespace wep
