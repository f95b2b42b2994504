// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "wep/core/discrete_problem.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>

#include "wep/simd/kernels.hpp"

namespace wep
{

namespace
{

class Fnv1a
{
public:
  void bytes(const void *data, std::size_t n) noexcept
  {
    const auto *p = static_cast<const unsigned char *>(data);
    for (std::size_t i = 0; i < n; ++i)
    {
      state_ ^= p[i];
      state_ *= 0x100000001b3ULL;
    }
  }
  template <typename T>
  void value(const T &v) noexcept
  {
    bytes(&v, sizeof(T));
  }
  std::uint64_t digest() const noexcept { return state_; }

private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

CVector &boundary_scratch(std::size_t n)
{
  thread_local CVector buf;
  if (buf.size() < n)
  {
    buf.resize(n);
  }
  return buf;
}

}  // namespace

DiscreteProblem::DiscreteProblem(const WaveguideGeometry &geometry, std::size_t n_x,
                                 std::size_t n_z)
  : DiscreteProblem(sample_wavenumber(geometry, n_x, n_z), geometry.x_minus, geometry.x_plus,
                    geometry.kappa_minus, geometry.kappa_plus)
{
}

DiscreteProblem::DiscreteProblem(RMatrix kappa2, double x_minus, double x_plus,
                                 double kappa_minus, double kappa_plus)
  : n_x_(kappa2.cols()), n_z_(kappa2.rows()), x_minus_(x_minus), x_plus_(x_plus),
    kappa_minus_(kappa_minus), kappa_plus_(kappa_plus), kappa2_(std::move(kappa2))
{
  require(n_z_ % 2 == 1, ErrorCode::OddGridRequired,
          "n_z = " + std::to_string(n_z_) + " must be odd (n_z = 2p + 1)");
  require(n_z_ >= 3, ErrorCode::InvalidArgument, "n_z must be at least 3");
  require(n_x_ >= 2, ErrorCode::InvalidArgument, "n_x must be at least 2");
  require(x_minus < x_plus, ErrorCode::InvalidArgument, "domain needs x_minus < x_plus");
  require(kappa_minus > 0.0 && kappa_plus > 0.0, ErrorCode::InvalidArgument,
          "exterior wavenumbers must be positive");
  h_x_ = (x_plus - x_minus) / static_cast<double>(n_x_ + 1);
  h_z_ = 1.0 / static_cast<double>(n_z_);
  finalize();
}

void DiscreteProblem::finalize()
{
  const auto k = kappa2_.flat();
  for (double v : k)
  {
    require(std::isfinite(v) && v >= 0.0, ErrorCode::InvalidArgument,
            "sampled kappa^2 must be finite and nonnegative");
  }
  mean_kappa2_ = std::accumulate(k.begin(), k.end(), 0.0) / static_cast<double>(k.size());

  // A_0 = D_xx (x) I + I (x) D_zz + diag(vec K): per column, the diagonal entry
  // plus |off-diagonals| of the x and z stencils.
  const double ix2 = 1.0 / (h_x_ * h_x_), iz2 = 1.0 / (h_z_ * h_z_);
  norm1_a0_ = 0.0;
  for (std::size_t j = 0; j < n_x_; ++j)
  {
    const double x_neighbours = static_cast<double>((j > 0) + (j + 1 < n_x_));
    for (std::size_t i = 0; i < n_z_; ++i)
    {
      const double diag = kappa2_(i, j) - 2.0 * ix2 - 2.0 * iz2;
      norm1_a0_ = std::max(norm1_a0_, std::abs(diag) + x_neighbours * ix2 + 2.0 * iz2);
    }
  }

  norm1_c2t_ = 0.0;
  for (std::size_t j = 0; j < n_x_; ++j)
  {
    double s = 0.0;
    s += std::abs(d1()) * static_cast<double>((j == 0) + (j + 1 == n_x_));
    s += std::abs(d2()) * static_cast<double>((j == 1) + (j + 2 == n_x_));
    norm1_c2t_ = std::max(norm1_c2t_, s);
  }

  Fnv1a h;
  h.value(x_minus_);
  h.value(x_plus_);
  h.value(kappa_minus_);
  h.value(kappa_plus_);
  h.value(static_cast<std::uint64_t>(n_x_));
  h.value(static_cast<std::uint64_t>(n_z_));
  h.bytes(kappa2_.data(), kappa2_.size() * sizeof(double));
  hash_ = h.digest();

  boundary_forward_ = spectral::FftPlan::batched(n_z_, 1, 1, n_z_, spectral::FftDirection::Forward,
                                                 spectral::PlanRigor::Estimate);
  boundary_backward_ = spectral::FftPlan::batched(
      n_z_, 1, 1, n_z_, spectral::FftDirection::Backward, spectral::PlanRigor::Estimate);
}

double DiscreteProblem::norm1_dz() const noexcept
{
  return 1.0 / h_z_;
}

RVector DiscreteProblem::dz_first_column() const
{
  RVector c(n_z_, 0.0);
  c[1] = -0.5 / h_z_;
  c[n_z_ - 1] = 0.5 / h_z_;
  return c;
}

RVector DiscreteProblem::dzz_first_column() const
{
  RVector c(n_z_, 0.0);
  const double iz2 = 1.0 / (h_z_ * h_z_);
  c[0] = -2.0 * iz2;
  c[1] += iz2;
  c[n_z_ - 1] += iz2;
  return c;
}

void DiscreteProblem::apply_boundary_diagonal(std::span<const cplx> lambda,
                                              std::span<const cplx> g,
                                              std::span<cplx> out) const
{
  require(lambda.size() == n_z_ && g.size() == n_z_ && out.size() == n_z_,
          ErrorCode::DimensionMismatch, "boundary vectors must have length n_z");
  CVector &buf = boundary_scratch(n_z_);
  std::copy(g.begin(), g.end(), buf.begin());
  boundary_forward_.execute(buf.data());
  std::span<cplx> head(buf.data(), n_z_);
  simd::mul(lambda, head, head);
  boundary_backward_.execute(buf.data());
  const double inv_n = 1.0 / static_cast<double>(n_z_);
  for (std::size_t i = 0; i < n_z_; ++i)
  {
    out[i] = buf[i] * inv_n;
  }
}

}  // namespace wep
