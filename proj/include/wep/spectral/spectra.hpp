// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef WEP_SPECTRAL_SPECTRA_HPP
#define WEP_SPECTRAL_SPECTRA_HPP

#include <cstddef>
#include <span>

#include "wep/common.hpp"
#include "wep/spectral/fft_plan.hpp"

namespace wep::spectral
{

/// An n x n circulant matrix held by its DFT spectrum. The eigenvalue at DFT
/// index q belongs to the eigenvector exp(2 pi i q j / n), j = 0..n-1.
///
/// Plans are built for `batch` contiguous columns of length n, so apply() maps
/// an n x batch column-major block in one call.
class CirculantSpectrum
{
public:
  CirculantSpectrum() = default;
  explicit CirculantSpectrum(std::span<const cplx> first_column, std::size_t batch = 1,
                             PlanRigor rigor = default_rigor());

  /// Circulant with prescribed spectrum; the first column is recovered by an
  /// inverse DFT.
  static CirculantSpectrum from_eigenvalues(std::span<const cplx> eigenvalues,
                                            std::size_t batch = 1,
                                            PlanRigor rigor = default_rigor());

  std::size_t size() const noexcept { return eigenvalues_.size(); }
  std::size_t batch() const noexcept { return batch_; }
  std::span<const cplx> eigenvalues() const noexcept { return eigenvalues_; }
  std::span<const cplx> first_column() const noexcept { return first_column_; }

  /// True when only entries 0, 1 and n-1 of the first column are nonzero.
  bool is_periodic_tridiagonal() const noexcept { return tridiagonal_; }

  /// y = C x for `batch` stacked columns. x and y may alias.
  void apply(std::span<const cplx> x, std::span<cplx> y) const;

  /// y = C^{-1} x. Throws InvalidArgument if any eigenvalue is exactly zero.
  void apply_inverse(std::span<const cplx> x, std::span<cplx> y) const;

private:
  void init_plans(PlanRigor rigor);
  void apply_diag(std::span<const cplx> x, std::span<cplx> y, std::span<const cplx> diag) const;

  std::size_t batch_ = 1;
  CVector first_column_;
  CVector eigenvalues_;
  CVector inverse_eigenvalues_;
  bool tridiagonal_ = false;
  FftPlan forward_;
  FftPlan backward_;
};

/// Spectrum of the Dirichlet second-difference matrix tridiag(1,-2,1)/h^2 of
/// order n together with its sine eigenbasis S, [S]_{jk} = sin(jk pi/(n+1)).
/// S is symmetric and S*S = (n+1)/2 * I.
class SineSpectrum
{
public:
  SineSpectrum() = default;
  SineSpectrum(std::size_t n, double h, std::size_t batch = 1,
               PlanRigor rigor = default_rigor());

  std::size_t size() const noexcept { return eigenvalues_.size(); }
  double step() const noexcept { return h_; }
  std::size_t batch() const noexcept { return batch_; }

  /// lambda_j = -(4/h^2) sin^2(j pi / (2(n+1))), j = 1..n (stored 0-based).
  std::span<const double> eigenvalues() const noexcept { return eigenvalues_; }

  /// (n+1)/2: the constant with S*S = c*I.
  double normalization() const noexcept { return 0.5 * static_cast<double>(size() + 1); }

  /// y = S x for `batch` stacked contiguous vectors of length n, realized with
  /// an odd-extension FFT of length 2(n+1). x and y may alias.
  void transform(std::span<const cplx> x, std::span<cplx> y) const;

private:
  double h_ = 0.0;
  std::size_t batch_ = 1;
  RVector eigenvalues_;
  FftPlan plan_;
};

}  // namespace wep::spectral

#endif  // WEP_SPECTRAL_SPECTRA_HPP
