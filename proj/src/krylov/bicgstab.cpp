// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <chrono>
#include <cmath>
#include <limits>

#include "wep/krylov/krylov.hpp"
#include "wep/simd/kernels.hpp"

namespace wep::krylov
{

SolveReport bicgstab(const LinearMap &op, const LinearMap &precond, std::span<const cplx> rhs,
                     const KrylovOptions &options, std::span<const cplx> x0)
{
  const auto t0 = std::chrono::steady_clock::now();
  require(options.tol >= 0.0, ErrorCode::InvalidArgument, "BiCGStab tolerance must be >= 0");
  const std::size_t n = rhs.size();
  require(x0.empty() || x0.size() == n, ErrorCode::DimensionMismatch,
          "BiCGStab initial guess has the wrong length");
  constexpr double eps = std::numeric_limits<double>::epsilon();

  auto apply_m = [&](std::span<const cplx> in, std::span<cplx> out)
  {
    if (precond)
    {
      precond(in, out);
    }
    else
    {
      std::copy(in.begin(), in.end(), out.begin());
    }
  };

  SolveReport rep;
  CVector x(n), r(n), rhat(n), p(n), phat(n), v(n), s(n), shat(n), t(n), best;
  if (!x0.empty())
  {
    std::copy(x0.begin(), x0.end(), x.begin());
  }
  auto residual = [&](std::span<cplx> out)
  {
    op(x, out);
    for (std::size_t i = 0; i < n; ++i)
    {
      out[i] = rhs[i] - out[i];
    }
    return simd::norm(out);
  };

  const double bnorm = simd::norm(rhs);
  if (bnorm == 0.0)
  {
    rep.solution.assign(n, cplx{});
    rep.residual_history.push_back(0.0);
    rep.converged = true;
    rep.status = SolveStatus::Converged;
    return rep;
  }

  double rel = residual(r) / bnorm;
  rep.residual_history.push_back(rel);
  best = x;
  double best_rel = rel;
  rhat = r;
  cplx rho = 1.0, alpha = 1.0, omega = 1.0;
  rep.status = SolveStatus::MaxIterations;

  while (rel > options.tol && rep.iterations < options.max_iterations)
  {
    const cplx rho_new = simd::dotc(rhat, r);
    if (std::abs(rho_new) <= eps * simd::norm(rhat) * simd::norm(r))
    {
      rep.status = SolveStatus::RhoBreakdown;
      break;
    }
    const cplx beta = (rho_new / rho) * (alpha / omega);
    rho = rho_new;
    for (std::size_t i = 0; i < n; ++i)
    {
      p[i] = r[i] + beta * (p[i] - omega * v[i]);
    }
    apply_m(p, phat);
    op(phat, v);
    const cplx rv = simd::dotc(rhat, v);
    if (rv == cplx{})
    {
      rep.status = SolveStatus::RhoBreakdown;
      break;
    }
    alpha = rho / rv;
    for (std::size_t i = 0; i < n; ++i)
    {
      s[i] = r[i] - alpha * v[i];
    }
    simd::axpy(alpha, phat, x);
    ++rep.iterations;

    if (simd::norm(s) / bnorm <= options.tol)
    {
      rel = residual(r) / bnorm;
      rep.residual_history.push_back(rel);
      if (options.monitor)
      {
        options.monitor(rep.iterations, x);
      }
      if (rel < best_rel)
      {
        best = x;
        best_rel = rel;
      }
      if (rel <= options.tol)
      {
        break;
      }
      continue;
    }

    apply_m(s, shat);
    op(shat, t);
    const double tt = simd::norm_sq(t);
    if (tt == 0.0)
    {
      rep.status = SolveStatus::OmegaBreakdown;
      rep.residual_history.push_back(residual(r) / bnorm);
      break;
    }
    omega = simd::dotc(t, s) / tt;
    simd::axpy(omega, shat, x);
    if (std::abs(omega) <= eps)
    {
      rel = residual(r) / bnorm;
      rep.residual_history.push_back(rel);
      if (rel < best_rel)
      {
        best = x;
        best_rel = rel;
      }
      if (rel > options.tol)
      {
        rep.status = SolveStatus::OmegaBreakdown;
      }
      break;
    }

    // Explicit residual instead of the recurrence s - omega t.
    rel = residual(r) / bnorm;
    rep.residual_history.push_back(rel);
    if (options.monitor)
    {
      options.monitor(rep.iterations, x);
    }
    if (rel < best_rel)
    {
      best = x;
      best_rel = rel;
    }
  }

  if (best_rel <= options.tol)
  {
    rep.converged = true;
    rep.status = SolveStatus::Converged;
  }
  rep.solution = rel <= best_rel ? std::move(x) : std::move(best);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace wep::krylov
