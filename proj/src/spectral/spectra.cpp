// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "wep/spectral/spectra.hpp"

#include <cmath>

#include "wep/simd/kernels.hpp"

namespace wep::spectral
{

namespace
{

CVector &scratch_buffer(std::size_t n)
{
  thread_local CVector buffer;
  if (buffer.size() < n)
  {
    buffer.resize(n);
  }
  return buffer;
}

}  // namespace

CirculantSpectrum::CirculantSpectrum(std::span<const cplx> first_column, std::size_t batch,
                                     PlanRigor rigor)
  : batch_(batch), first_column_(first_column.begin(), first_column.end())
{
  require(!first_column.empty(), ErrorCode::InvalidArgument, "circulant of order zero");
  require(batch >= 1, ErrorCode::InvalidArgument, "circulant batch must be positive");
  init_plans(rigor);

  // eigenvalues = DFT(first column)
  const std::size_t n = first_column_.size();
  FftPlan single = FftPlan::batched(n, 1, 1, n, FftDirection::Forward, PlanRigor::Estimate);
  eigenvalues_ = first_column_;
  single.execute(eigenvalues_.data());

  inverse_eigenvalues_.resize(n);
  for (std::size_t q = 0; q < n; ++q)
  {
    inverse_eigenvalues_[q] = eigenvalues_[q] == cplx{} ? cplx{} : 1.0 / eigenvalues_[q];
  }
  tridiagonal_ = true;
  for (std::size_t j = 2; j + 1 < n; ++j)
  {
    if (first_column_[j] != cplx{})
    {
      tridiagonal_ = false;
      break;
    }
  }
}

CirculantSpectrum CirculantSpectrum::from_eigenvalues(std::span<const cplx> eigenvalues,
                                                      std::size_t batch, PlanRigor rigor)
{
  require(!eigenvalues.empty(), ErrorCode::InvalidArgument, "circulant of order zero");
  const std::size_t n = eigenvalues.size();
  CVector column(eigenvalues.begin(), eigenvalues.end());
  FftPlan single = FftPlan::batched(n, 1, 1, n, FftDirection::Backward, PlanRigor::Estimate);
  single.execute(column.data());
  simd::scale(1.0 / static_cast<double>(n), column);

  CirculantSpectrum c;
  c.batch_ = batch;
  c.first_column_ = std::move(column);
  c.eigenvalues_.assign(eigenvalues.begin(), eigenvalues.end());
  c.inverse_eigenvalues_.resize(n);
  for (std::size_t q = 0; q < n; ++q)
  {
    c.inverse_eigenvalues_[q] = eigenvalues[q] == cplx{} ? cplx{} : 1.0 / eigenvalues[q];
  }
  // Round-off in the recovered column makes the sparsity test meaningless.
  c.tridiagonal_ = false;
  c.init_plans(rigor);
  return c;
}

void CirculantSpectrum::init_plans(PlanRigor rigor)
{
  const std::size_t n = first_column_.size();
  forward_ = FftPlan::batched(n, batch_, 1, n, FftDirection::Forward, rigor);
  backward_ = FftPlan::batched(n, batch_, 1, n, FftDirection::Backward, rigor);
}

void CirculantSpectrum::apply_diag(std::span<const cplx> x, std::span<cplx> y,
                                   std::span<const cplx> diag) const
{
  const std::size_t n = size();
  require(x.size() == n * batch_ && y.size() == n * batch_, ErrorCode::DimensionMismatch,
          "circulant apply: expected " + std::to_string(n * batch_) + " entries");
  CVector &buf = scratch_buffer(n * batch_);
  std::copy(x.begin(), x.end(), buf.begin());
  forward_.execute(buf.data());
  for (std::size_t b = 0; b < batch_; ++b)
  {
    std::span<cplx> colspan(buf.data() + b * n, n);
    simd::mul(diag, colspan, colspan);
  }
  backward_.execute(buf.data());
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n * batch_; ++i)
  {
    y[i] = buf[i] * inv_n;
  }
}

void CirculantSpectrum::apply(std::span<const cplx> x, std::span<cplx> y) const
{
  apply_diag(x, y, eigenvalues_);
}

void CirculantSpectrum::apply_inverse(std::span<const cplx> x, std::span<cplx> y) const
{
  for (const cplx &lam : eigenvalues_)
  {
    require(lam != cplx{}, ErrorCode::InvalidArgument, "circulant is singular");
  }
  apply_diag(x, y, inverse_eigenvalues_);
}

SineSpectrum::SineSpectrum(std::size_t n, double h, std::size_t batch, PlanRigor rigor)
  : h_(h), batch_(batch), eigenvalues_(n)
{
  require(n >= 1, ErrorCode::InvalidArgument, "sine spectrum of order zero");
  require(h > 0.0, ErrorCode::InvalidArgument, "grid step must be positive");
  require(batch >= 1, ErrorCode::InvalidArgument, "sine batch must be positive");
  const double np1 = static_cast<double>(n + 1);
  for (std::size_t j = 1; j <= n; ++j)
  {
    const double s = std::sin(static_cast<double>(j) * pi / (2.0 * np1));
    eigenvalues_[j - 1] = -4.0 / (h * h) * s * s;
  }
  const std::size_t m = 2 * (n + 1);
  plan_ = FftPlan::batched(m, batch, 1, m, FftDirection::Forward, rigor);
}

void SineSpectrum::transform(std::span<const cplx> x, std::span<cplx> y) const
{
  const std::size_t n = size();
  const std::size_t m = 2 * (n + 1);
  require(x.size() == n * batch_ && y.size() == n * batch_, ErrorCode::DimensionMismatch,
          "sine transform: expected " + std::to_string(n * batch_) + " entries");
  CVector &buf = scratch_buffer(m * batch_);
  for (std::size_t b = 0; b < batch_; ++b)
  {
    cplx *e = buf.data() + b * m;
    const cplx *src = x.data() + b * n;
    e[0] = 0.0;
    e[n + 1] = 0.0;
    for (std::size_t j = 1; j <= n; ++j)
    {
      e[j] = src[j - 1];
      e[m - j] = -src[j - 1];
    }
  }
  plan_.execute(buf.data());
  // DFT of the odd extension is -2i * S x.
  const cplx factor{0.0, 0.5};
  for (std::size_t b = 0; b < batch_; ++b)
  {
    const cplx *e = buf.data() + b * m;
    cplx *dst = y.data() + b * n;
    for (std::size_t k = 1; k <= n; ++k)
    {
      dst[k - 1] = factor * e[k];
    }
  }
}

}  // namespace wep::spectral
