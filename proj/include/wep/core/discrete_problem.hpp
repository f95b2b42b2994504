// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef WEP_CORE_DISCRETE_PROBLEM_HPP
#define WEP_CORE_DISCRETE_PROBLEM_HPP

#include <cstddef>
#include <cstdint>
#include <span>

#include "wep/common.hpp"
#include "wep/core/geometry.hpp"
#include "wep/spectral/fft_plan.hpp"

namespace wep
{

/// Finite-difference discretization of the waveguide cell on n_x x n_z interior
/// nodes plus one boundary column of n_z nodes at each end in x.
///
/// Unknown layout: v = [vec(X); v_minus; v_plus], X n_z x n_x column-major
/// (x-index is the column), total size n_x n_z + 2 n_z.
///
/// D_z is the periodic central difference (x_{k+1} - x_{k-1}) / (2 h_z), the
/// sign that matches the Fourier modes exp(2 pi i k z) of the DtN maps.
class DiscreteProblem
{
public:
  DiscreteProblem(const WaveguideGeometry &geometry, std::size_t n_x, std::size_t n_z);

  /// Direct construction from a sampled wavenumber matrix (n_z x n_x).
  DiscreteProblem(RMatrix kappa2, double x_minus, double x_plus, double kappa_minus,
                  double kappa_plus);

  DiscreteProblem(const DiscreteProblem &) = delete;
  DiscreteProblem &operator=(const DiscreteProblem &) = delete;
  DiscreteProblem(DiscreteProblem &&) noexcept = default;

  std::size_t n_x() const noexcept { return n_x_; }
  std::size_t n_z() const noexcept { return n_z_; }
  std::size_t p() const noexcept { return (n_z_ - 1) / 2; }
  std::size_t interior_size() const noexcept { return n_x_ * n_z_; }
  std::size_t size() const noexcept { return n_x_ * n_z_ + 2 * n_z_; }

  double h_x() const noexcept { return h_x_; }
  double h_z() const noexcept { return h_z_; }
  double x_minus() const noexcept { return x_minus_; }
  double x_plus() const noexcept { return x_plus_; }
  double kappa_minus() const noexcept { return kappa_minus_; }
  double kappa_plus() const noexcept { return kappa_plus_; }

  // One-sided boundary stencil (d0 u_0 + d1 u_1 + d2 u_2 ~ u_x).
  double d0() const noexcept { return -1.5 / h_x_; }
  double d1() const noexcept { return 2.0 / h_x_; }
  double d2() const noexcept { return -0.5 / h_x_; }

  const RMatrix &kappa2() const noexcept { return kappa2_; }
  double mean_kappa2() const noexcept { return mean_kappa2_; }

  /// FNV-1a over the domain, exterior wavenumbers and sampled K.
  std::uint64_t geometry_hash() const noexcept { return hash_; }

  /// First columns of the circulants D_z and D_zz (length n_z).
  RVector dz_first_column() const;
  RVector dzz_first_column() const;

  // 1-norms of the constant blocks, from closed-form stencil column sums.
  double norm1_a0() const noexcept { return norm1_a0_; }
  double norm1_a1() const noexcept { return 2.0 * norm1_dz(); }
  double norm1_a2() const noexcept { return 1.0; }
  double norm1_c1() const noexcept { return 1.0 / (h_x_ * h_x_); }
  double norm1_c2t() const noexcept { return norm1_c2t_; }

  /// g -> F^{-1} diag(lambda) F g for a boundary vector of length n_z, where
  /// lambda is indexed in DFT order. out may alias g.
  void apply_boundary_diagonal(std::span<const cplx> lambda, std::span<const cplx> g,
                               std::span<cplx> out) const;

private:
  void finalize();
  double norm1_dz() const noexcept;

  std::size_t n_x_ = 0, n_z_ = 0;
  double x_minus_ = 0.0, x_plus_ = 0.0;
  double kappa_minus_ = 0.0, kappa_plus_ = 0.0;
  double h_x_ = 0.0, h_z_ = 0.0;
  RMatrix kappa2_;
  double mean_kappa2_ = 0.0;
  double norm1_a0_ = 0.0;
  double norm1_c2t_ = 0.0;
  std::uint64_t hash_ = 0;
  spectral::FftPlan boundary_forward_;
  spectral::FftPlan boundary_backward_;
};

}  // namespace wep

#endif  // WEP_CORE_DISCRETE_PROBLEM_HPP
