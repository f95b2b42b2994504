// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef WEP_CORE_WAVEGUIDE_OPERATOR_HPP
#define WEP_CORE_WAVEGUIDE_OPERATOR_HPP

#include <array>
#include <span>

#include "wep/common.hpp"
#include "wep/core/discrete_problem.hpp"
#include "wep/core/dtn.hpp"

namespace wep
{

/// Matrix-free M(gamma) = [Q(gamma) C_1; C_2^T P(gamma)] at a fixed gamma.
///
/// Q(gamma) = A_0 + gamma A_1 + gamma^2 A_2 acts on vec(X) through the stencil
/// form (D_zz + 2 gamma D_z + gamma^2 I) X + X D_xx + K o X. The DtN blocks
/// P_+-(gamma) = R diag(s_k + d_0) R^{-1} are diagonal in the DFT basis, since
/// the phase factors in R cancel between R and R^{-1}.
///
/// The referenced DiscreteProblem must outlive the operator.
class WaveguideOperator
{
public:
  static constexpr double kSingularModeTolerance = 1e-14;

  WaveguideOperator(const DiscreteProblem &problem, cplx gamma);

  const DiscreteProblem &problem() const noexcept { return *problem_; }
  cplx gamma() const noexcept { return gamma_; }
  const DtnCoefficients &dtn() const noexcept { return dtn_; }

  /// diag(S_+-) in DFT order: entry q is s_{m} + d_0 with m = q for q <= p,
  /// m = q - n_z otherwise.
  std::span<const cplx> p_diagonal(Side side) const noexcept;
  std::span<const cplx> p_prime_diagonal(Side side) const noexcept;

  void apply_p(Side side, std::span<const cplx> g, std::span<cplx> out) const;
  /// Throws SingularDtnMode if some |s_k + d_0| <= 1e-14.
  void apply_p_inverse(Side side, std::span<const cplx> g, std::span<cplx> out) const;

  /// out = Q(gamma) vec(X) for an interior vector of length n_x n_z.
  void apply_q(std::span<const cplx> interior, std::span<cplx> out) const;

  void apply(std::span<const cplx> v, std::span<cplx> out) const;
  CVector apply(std::span<const cplx> v) const;

  /// M'(gamma); requires Re(gamma) < 0 (throws RightHalfPlane otherwise).
  void apply_derivative(std::span<const cplx> v, std::span<cplx> out) const;
  CVector apply_derivative(std::span<const cplx> v) const;

  /// Denominator of the relative residual: sum_k |gamma|^k ||A_k||_1 + ||C_1||_1
  /// + ||C_2^T||_1 + 2|d_0| + sum_k (|s_{+,k}| + |s_{-,k}|).
  double residual_denominator() const noexcept { return denominator_; }

  /// ||M(gamma) v||_2 / (||v||_2 * residual_denominator()).
  double relative_residual(std::span<const cplx> v) const;

private:
  static std::size_t side_index(Side s) noexcept { return s == Side::Minus ? 0 : 1; }

  const DiscreteProblem *problem_;
  cplx gamma_;
  DtnCoefficients dtn_;
  std::array<CVector, 2> p_diag_;
  std::array<CVector, 2> p_inv_diag_;
  std::array<CVector, 2> p_prime_diag_;
  std::array<bool, 2> p_invertible_{true, true};
  double denominator_ = 0.0;
};

}  // namespace wep

#endif  // WEP_CORE_WAVEGUIDE_OPERATOR_HPP
