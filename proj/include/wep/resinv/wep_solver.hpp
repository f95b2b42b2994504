// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef WEP_RESINV_WEP_SOLVER_HPP
#define WEP_RESINV_WEP_SOLVER_HPP

#include <cstdint>

#include "wep/core/discrete_problem.hpp"
#include "wep/krylov/krylov.hpp"
#include "wep/resinv/resinv.hpp"
#include "wep/schur/schur_action.hpp"
#include "wep/smw/preconditioner.hpp"

namespace wep
{

/// gamma -> M(gamma) of the discretized waveguide.
class WaveguideNep final : public NonlinearOperator
{
public:
  explicit WaveguideNep(const DiscreteProblem &problem) : problem_(&problem) {}

  std::size_t dimension() const override { return problem_->size(); }
  void apply(cplx gamma, std::span<const cplx> v, std::span<cplx> out) const override;
  void apply_derivative(cplx gamma, std::span<const cplx> v, std::span<cplx> out) const override;
  double residual_scale(cplx gamma) const override;

private:
  const DiscreteProblem *problem_;
};

enum class KrylovMethod
{
  Gmres,
  Bicgstab
};

const char *to_string(KrylovMethod m) noexcept;

/// M(sigma)^{-1} r through the Schur complement: reduce the right-hand side,
/// solve S(sigma) q = r~ with a preconditioned Krylov method, back-substitute.
class SchurShiftSolver final : public ShiftedSolver
{
public:
  /// precond may be null (unpreconditioned). Both must outlive the solver.
  SchurShiftSolver(const SchurAction &schur, const SmwPreconditioner *precond,
                   KrylovMethod method = KrylovMethod::Gmres, krylov::KrylovOptions options = {});

  cplx shift() const override { return schur_->sigma(); }
  InnerSolveInfo solve(std::span<const cplx> r, std::span<cplx> dx, double tol) const override;

  /// Solves S(sigma) q = c directly.
  krylov::SolveReport solve_interior(std::span<const cplx> c, double tol) const;

  krylov::LinearMap schur_map() const;
  krylov::LinearMap precond_map() const;

private:
  const SchurAction *schur_;
  const SmwPreconditioner *precond_;
  KrylovMethod method_;
  krylov::KrylovOptions options_;
};

/// Interior all ones, exterior P(sigma)^{-1}(-C_2^T v_int), unit norm.
CVector default_start_vector(const SchurAction &schur);

/// Seeded random start with the same consistent exterior block.
CVector random_start_vector(const SchurAction &schur, std::uint64_t seed);

}  // namespace wep

#endif  // WEP_RESINV_WEP_SOLVER_HPP
