// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef WEP_SPECTRAL_SYLVESTER_HPP
#define WEP_SPECTRAL_SYLVESTER_HPP

#include <cstddef>
#include <span>

#include "wep/common.hpp"
#include "wep/spectral/spectra.hpp"

namespace wep::spectral
{

/// Reusable transient storage for SylvesterKernel::solve. One per thread.
struct SylvesterWorkspace
{
  CVector extended;
};

/// The Sylvester operator L(X) = A X + X B for a circulant A (n_z x n_z) and
/// B = tridiag(1,-2,1)/h_x^2 (n_x x n_x), with X an n_z x n_x matrix.
///
/// solve() uses the closed-form diagonalization X = V Y W^{-1} with V the
/// Fourier basis of A and W the sine basis of B. The z-DFT and the x-DST are
/// fused into one 2D FFT over the odd extension of X in x, so a solve costs two
/// 2D FFTs of size n_z x 2(n_x+1) plus one Hadamard product.
class SylvesterKernel
{
public:
  /// Minimum admissible |lambda_A(p) + lambda_B(q)|.
  static constexpr double kCollisionTolerance = 1e-12;

  SylvesterKernel() = default;
  SylvesterKernel(std::span<const cplx> a_first_column, std::size_t n_x, double h_x,
                  PlanRigor rigor = default_rigor());

  std::size_t n_z() const noexcept { return a_.size(); }
  std::size_t n_x() const noexcept { return b_.size(); }

  const CirculantSpectrum &a_spectrum() const noexcept { return a_; }
  const SineSpectrum &b_spectrum() const noexcept { return b_; }

  /// Smallest |lambda_A(p) + lambda_B(q)| over the spectrum grid.
  double min_separation() const noexcept { return min_separation_; }

  /// X = L^{-1}(C) on flat column-major storage. c and x may alias.
  void solve(std::span<const cplx> c, std::span<cplx> x, SylvesterWorkspace &ws) const;
  void solve(std::span<const cplx> c, std::span<cplx> x) const;

  /// Y = L(X) = A X + X B on flat storage. x and y must not alias.
  void apply(std::span<const cplx> x, std::span<cplx> y) const;

  void solve(const CMatrix &c, CMatrix &x, SylvesterWorkspace &ws) const;
  void solve(const CMatrix &c, CMatrix &x) const;
  CMatrix solve(const CMatrix &c) const;

  void apply(const CMatrix &x, CMatrix &y) const;
  CMatrix apply(const CMatrix &x) const;

private:
  void check_shape(const CMatrix &m, const char *what) const;
  void check_size(std::size_t n, const char *what) const;

  CirculantSpectrum a_;
  SineSpectrum b_;
  // i/2 / (lambda_A(p) + lambda_B(q)), n_z x n_x; the i/2 undoes the odd-extension
  // DFT factor of the forward pass.
  CMatrix scaled_inverse_;
  double min_separation_ = 0.0;
  FftPlan forward_;
  FftPlan backward_;
};

}  // namespace wep::spectral

#endif  // WEP_SPECTRAL_SYLVESTER_HPP
