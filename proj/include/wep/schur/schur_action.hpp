// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef WEP_SCHUR_SCHUR_ACTION_HPP
#define WEP_SCHUR_SCHUR_ACTION_HPP

#include <array>
#include <optional>
#include <span>

#include "wep/common.hpp"
#include "wep/core/discrete_problem.hpp"
#include "wep/core/waveguide_operator.hpp"
#include "wep/spectral/sylvester.hpp"

namespace wep
{

/// Interior Schur complement S(sigma) = Q(sigma) - C_1 P(sigma)^{-1} C_2^T in
/// matrix-equation form:
///
///   S vec(X) = vec(L(X) + Phi(X)),  L(X) = A X + X B,
///   A = D_zz + 2 sigma D_z + (sigma^2 + kbar) I,  B = D_xx,
///   Phi(X) = (K - kbar) o X - P_-^{-1} (X u) e_1^T - P_+^{-1} (X J u) e_n^T,
///
/// with u = (d_1 e_1 + d_2 e_2) / h_x^2. The result does not depend on kbar;
/// kbar only moves mass between L and Phi.
///
/// The referenced DiscreteProblem must outlive the action.
class SchurAction
{
public:
  /// kbar defaults to mean(K).
  SchurAction(const DiscreteProblem &problem, cplx sigma, std::optional<double> kbar = std::nullopt,
              spectral::PlanRigor rigor = spectral::default_rigor());

  SchurAction(const SchurAction &) = delete;
  SchurAction &operator=(const SchurAction &) = delete;

  const DiscreteProblem &problem() const noexcept { return *problem_; }
  cplx sigma() const noexcept { return sigma_; }
  double kbar() const noexcept { return kbar_; }
  std::size_t dimension() const noexcept { return problem_->interior_size(); }

  const WaveguideOperator &block_operator() const noexcept { return block_; }
  const spectral::SylvesterKernel &sylvester() const noexcept { return kernel_; }

  /// K - kbar, n_z x n_x.
  const RMatrix &shifted_wavenumber() const noexcept { return k_shifted_; }

  /// (u_1, u_2) = (d_1, d_2) / h_x^2; u has no other nonzeros.
  std::array<double, 2> boundary_weights() const noexcept { return u_; }

  /// out = -P_side(sigma)^{-1} g for a boundary vector g. out may alias g.
  void boundary_correction(Side side, std::span<const cplx> g, std::span<cplx> out) const;

  /// g = X u (Minus) or X J u (Plus): the column combination feeding one DtN block.
  void boundary_trace(Side side, std::span<const cplx> x, std::span<cplx> g) const;

  /// out = vec(Phi(X)). x and out must not alias.
  void apply_phi(std::span<const cplx> x, std::span<cplx> out) const;
  CMatrix apply_phi(const CMatrix &x) const;

  /// out = S(sigma) x. x and out must not alias.
  void apply(std::span<const cplx> x, std::span<cplx> out) const;
  CVector apply(std::span<const cplx> x) const;

  /// r~ = r_int - C_1 P(sigma)^{-1} r_ext for a full-length r; out has length n_x n_z.
  void reduce_rhs(std::span<const cplx> r, std::span<cplx> out) const;

  /// [q; P(sigma)^{-1}(r_ext - C_2^T q)] for the interior solution q.
  void back_substitute(std::span<const cplx> q, std::span<const cplx> r_ext,
                       std::span<cplx> out) const;

private:
  const DiscreteProblem *problem_;
  cplx sigma_;
  double kbar_;
  WaveguideOperator block_;
  spectral::SylvesterKernel kernel_;
  RMatrix k_shifted_;
  std::array<double, 2> u_{};
};

}  // namespace wep

#endif  // WEP_SCHUR_SCHUR_ACTION_HPP
