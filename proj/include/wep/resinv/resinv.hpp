// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef WEP_RESINV_RESINV_HPP
#define WEP_RESINV_RESINV_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "wep/common.hpp"
#include "wep/krylov/krylov.hpp"

namespace wep
{

/// gamma -> M(gamma) for a nonlinear eigenvalue problem M(gamma) v = 0.
class NonlinearOperator
{
public:
  virtual ~NonlinearOperator() = default;
  virtual std::size_t dimension() const = 0;
  virtual void apply(cplx gamma, std::span<const cplx> v, std::span<cplx> out) const = 0;
  virtual void apply_derivative(cplx gamma, std::span<const cplx> v,
                                std::span<cplx> out) const = 0;
  /// Normalization of the relative residual ||M(gamma) v|| / (||v|| scale).
  virtual double residual_scale(cplx gamma) const = 0;

  double relative_residual(cplx gamma, std::span<const cplx> v) const;
};

struct InnerSolveInfo
{
  std::size_t iterations = 0;
  bool converged = true;
  krylov::SolveStatus status = krylov::SolveStatus::Converged;
  double relative_residual = 0.0;
  double seconds = 0.0;
};

/// dx ~ M(sigma)^{-1} r at a fixed shift, to relative accuracy tol.
class ShiftedSolver
{
public:
  virtual ~ShiftedSolver() = default;
  virtual cplx shift() const = 0;
  virtual InnerSolveInfo solve(std::span<const cplx> r, std::span<cplx> dx, double tol) const = 0;
};

struct NewtonOptions
{
  double tol = 1e-14;  // relative to residual_scale
  std::size_t max_iterations = 50;
  bool require_left_half_plane = true;
};

struct NewtonResult
{
  cplx gamma;
  std::size_t iterations = 0;
};

/// Newton on the Rayleigh functional f(gamma) = v^H M(gamma) v. Throws
/// LeftHalfPlaneViolation if an iterate has Re(gamma) >= 0 (when required)
/// and NewtonStall if max_iterations pass without |f| <= tol scale ||v||^2.
NewtonResult rayleigh_newton(const NonlinearOperator &op, std::span<const cplx> v,
                             cplx gamma_start, const NewtonOptions &options = {});

enum class InnerPolicy
{
  Fixed,
  Adaptive
};

struct InnerToleranceOptions
{
  InnerPolicy policy = InnerPolicy::Fixed;
  double fixed = 1e-12;
  double factor = 0.1;
  double min = 1e-13;
  double max = 1e-2;
};

/// Fixed: options.fixed. Adaptive: clamp(factor |gamma - sigma|, min, max).
double inner_tolerance(const InnerToleranceOptions &options, cplx gamma, cplx sigma) noexcept;

struct OuterRecord
{
  std::size_t iteration = 0;
  cplx gamma;
  double residual = 0.0;
  double gamma_error = 0.0;  // |gamma_k - gamma_final|, filled at exit
  std::size_t newton_iterations = 0;
  std::size_t inner_iterations = 0;
  double inner_tolerance = 0.0;
  double inner_residual = 0.0;
  double seconds = 0.0;
  double inner_seconds = 0.0;
};

enum class ResinvStatus
{
  Converged,
  NoConvergence
};

const char *to_string(ResinvStatus s) noexcept;

struct EigResult
{
  cplx gamma;
  CVector v;
  std::vector<OuterRecord> history;
  bool converged = false;
  ResinvStatus status = ResinvStatus::NoConvergence;
  double seconds = 0.0;
  std::size_t warmup_inner_iterations = 0;

  double final_residual() const noexcept { return history.empty() ? 0.0 : history.back().residual; }
  std::size_t total_inner_iterations() const noexcept;
};

struct ResinvOptions
{
  double outer_tol = 1e-10;
  std::size_t max_outer = 50;
  // Inverse-iteration steps v <- M(sigma)^{-1} M'(gamma0) v applied to v0 before
  // the first Rayleigh-Newton solve. Without them a smooth v0 tends to pull Newton
  // towards a non-leaky root far from sigma.
  std::size_t warmup = 2;
  double warmup_tol = 1e-6;
  InnerToleranceOptions inner;
  NewtonOptions newton;
};

/// Residual inverse iteration with a fixed shift:
///   gamma_{k+1} = Rayleigh-Newton(v_k), r_k = M(gamma_{k+1}) v_k,
///   v_{k+1} = normalize(v_k - M(sigma)^{-1} r_k),
/// after options.warmup inverse-iteration steps on v0,
/// stopping once ||r_k|| / (||v_k|| scale) <= outer_tol. On NoConvergence the
/// iterate with the smallest residual is returned. v0 is normalized internally.
EigResult resinv(const NonlinearOperator &op, const ShiftedSolver &solver, cplx gamma0,
                 std::span<const cplx> v0, const ResinvOptions &options = {});

/// Unit 2-norm with the first entry above 1e-10 ||v||_inf made positive real.
void normalize_phase(std::span<cplx> v);

/// Mean of successive residual ratios res_{k+1}/res_k (geometric) over the
/// records from `skip` on. Returns 0 if fewer than two usable records.
double convergence_factor(std::span<const OuterRecord> history, std::size_t skip = 2);

}  // namespace wep

#endif  // WEP_RESINV_RESINV_HPP
