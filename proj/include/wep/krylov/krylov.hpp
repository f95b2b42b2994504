// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef WEP_KRYLOV_KRYLOV_HPP
#define WEP_KRYLOV_KRYLOV_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "wep/common.hpp"

namespace wep::krylov
{

/// y = Op(x). Implementations must not assume x and y alias.
using LinearMap = std::function<void(std::span<const cplx>, std::span<cplx>)>;

/// Called after every iteration with the iteration count and the current iterate.
using IterateMonitor = std::function<void(std::size_t, std::span<const cplx>)>;

enum class SolveStatus
{
  Converged,
  MaxIterations,
  Breakdown,
  RhoBreakdown,
  OmegaBreakdown,
  // GMRES: the recurrence reached tol but the recomputed residual did not move.
  Stagnation
};

const char *to_string(SolveStatus s) noexcept;

struct KrylovOptions
{
  double tol = 1e-12;
  std::size_t restart = 100;
  std::size_t max_iterations = 1000;
  // Forming the iterate costs one extra preconditioner application per GMRES step.
  IterateMonitor monitor;
};

struct SolveReport
{
  CVector solution;
  std::size_t iterations = 0;
  // ||b - Op(x_k)|| / ||b||, k = 0..iterations.
  std::vector<double> residual_history;
  bool converged = false;
  SolveStatus status = SolveStatus::MaxIterations;
  double seconds = 0.0;
};

/// Restarted GMRES with right preconditioning: solves Op(M(y)) = b and returns
/// x = M(y), so the monitored residual is that of the original system. Modified
/// Gram-Schmidt with a second pass whenever a projection removes more than 30%
/// of the norm. Inside a cycle the history holds the Givens residual estimates;
/// the last entry of each cycle is the explicitly recomputed residual (or every
/// entry, when a monitor forces the iterate to be formed).
///
/// A null preconditioner means identity. x0 may be empty (zero start).
SolveReport gmres(const LinearMap &op, const LinearMap &precond, std::span<const cplx> rhs,
                  const KrylovOptions &options, std::span<const cplx> x0 = {});

/// Right-preconditioned BiCGStab; the residual is recomputed explicitly every
/// iteration. Breakdowns return the best iterate seen.
SolveReport bicgstab(const LinearMap &op, const LinearMap &precond, std::span<const cplx> rhs,
                     const KrylovOptions &options, std::span<const cplx> x0 = {});

}  // namespace wep::krylov

#endif  // WEP_KRYLOV_KRYLOV_HPP
