// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "wep/resinv/resinv.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include <spdlog/spdlog.h>

#include "wep/simd/kernels.hpp"

namespace wep
{

double NonlinearOperator::relative_residual(cplx gamma, std::span<const cplx> v) const
{
  const double nv = simd::norm(v);
  if (nv == 0.0)
  {
    return 0.0;
  }
  CVector r(v.size());
  apply(gamma, v, r);
  return simd::norm(r) / (nv * residual_scale(gamma));
}

const char *to_string(ResinvStatus s) noexcept
{
  return s == ResinvStatus::Converged ? "converged" : "no-convergence";
}

std::size_t EigResult::total_inner_iterations() const noexcept
{
  std::size_t s = 0;
  for (const auto &h : history)
  {
    s += h.inner_iterations;
  }
  return s;
}

NewtonResult rayleigh_newton(const NonlinearOperator &op, std::span<const cplx> v,
                             cplx gamma_start, const NewtonOptions &options)
{
  const std::size_t n = op.dimension();
  require(v.size() == n, ErrorCode::DimensionMismatch, "Rayleigh functional: wrong vector length");
  const double vv = simd::norm_sq(v);
  CVector w(n);
  cplx gamma = gamma_start;
  auto check_half_plane = [&]
  {
    if (options.require_left_half_plane && !(gamma.real() < 0.0))
    {
      std::ostringstream msg;
      msg << "Newton iterate left the open left half-plane: gamma = " << gamma;
      throw Error(ErrorCode::LeftHalfPlaneViolation, msg.str());
    }
  };

  for (std::size_t it = 0; it <= options.max_iterations; ++it)
  {
    check_half_plane();
    op.apply(gamma, v, w);
    const cplx f = simd::dotc(v, w);
    if (std::abs(f) <= options.tol * op.residual_scale(gamma) * vv)
    {
      return {gamma, it};
    }
    if (it == options.max_iterations)
    {
      break;
    }
    op.apply_derivative(gamma, v, w);
    const cplx fp = simd::dotc(v, w);
    if (fp == cplx{})
    {
      throw Error(ErrorCode::NewtonStall, "Rayleigh functional has a vanishing derivative");
    }
    const cplx step = f / fp;
    gamma -= step;
    // Round-off floor: f cannot be resolved further.
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(gamma))
    {
      check_half_plane();
      return {gamma, it + 1};
    }
  }
  std::ostringstream msg;
  msg << "Newton did not converge in " << options.max_iterations << " steps (gamma = " << gamma
      << ")";
  throw Error(ErrorCode::NewtonStall, msg.str());
}

double inner_tolerance(const InnerToleranceOptions &options, cplx gamma, cplx sigma) noexcept
{
  if (options.policy == InnerPolicy::Fixed)
  {
    return options.fixed;
  }
  return std::clamp(options.factor * std::abs(gamma - sigma), options.min, options.max);
}

void normalize_phase(std::span<cplx> v)
{
  const double nv = simd::norm(v);
  if (nv == 0.0)
  {
    return;
  }
  double vmax = 0.0;
  for (const cplx &x : v)
  {
    vmax = std::max(vmax, std::abs(x));
  }
  cplx phase = 1.0;
  for (const cplx &x : v)
  {
    if (std::abs(x) > 1e-10 * vmax)
    {
      phase = std::conj(x) / std::abs(x);
      break;
    }
  }
  simd::scale(phase / nv, v);
}

double convergence_factor(std::span<const OuterRecord> history, std::size_t skip)
{
  double log_sum = 0.0;
  std::size_t count = 0;
  for (std::size_t k = skip + 1; k < history.size(); ++k)
  {
    const double a = history[k - 1].residual, b = history[k].residual;
    if (a > 0.0 && b > 0.0)
    {
      log_sum += std::log(b / a);
      ++count;
    }
  }
  return count == 0 ? 0.0 : std::exp(log_sum / static_cast<double>(count));
}

EigResult resinv(const NonlinearOperator &op, const ShiftedSolver &solver, cplx gamma0,
                 std::span<const cplx> v0, const ResinvOptions &options)
{
  const auto t_start = std::chrono::steady_clock::now();
  const std::size_t n = op.dimension();
  require(v0.size() == n, ErrorCode::DimensionMismatch, "resinv: v0 has the wrong length");
  const cplx sigma = solver.shift();
  if (!(sigma.real() < 0.0))
  {
    std::ostringstream msg;
    msg << "resinv requires Re(sigma) < 0, sigma = " << sigma;
    throw Error(ErrorCode::LeftHalfPlaneViolation, msg.str());
  }

  EigResult res;
  CVector v(v0.begin(), v0.end());
  const double nv0 = simd::norm(v);
  require(nv0 > 0.0, ErrorCode::InvalidArgument, "resinv: v0 is zero");
  simd::scale(1.0 / nv0, v);

  CVector r(n), dv(n), best_v;
  for (std::size_t w = 0; w < options.warmup; ++w)
  {
    op.apply_derivative(gamma0, v, r);
    const InnerSolveInfo info = solver.solve(r, v, options.warmup_tol);
    res.warmup_inner_iterations += info.iterations;
    const double nv = simd::norm(v);
    require(nv > 0.0, ErrorCode::InvalidArgument, "resinv: warm-up produced a zero vector");
    simd::scale(1.0 / nv, v);
  }
  cplx gamma = gamma0, best_gamma = gamma0;
  double best = std::numeric_limits<double>::infinity();

  for (std::size_t k = 0; k < options.max_outer; ++k)
  {
    const auto t0 = std::chrono::steady_clock::now();
    OuterRecord rec;
    rec.iteration = k;
    const NewtonResult nr = rayleigh_newton(op, v, gamma, options.newton);
    gamma = nr.gamma;
    rec.gamma = gamma;
    rec.newton_iterations = nr.iterations;

    op.apply(gamma, v, r);
    rec.residual = simd::norm(r) / (simd::norm(v) * op.residual_scale(gamma));
    if (rec.residual < best)
    {
      best = rec.residual;
      best_gamma = gamma;
      best_v = v;
    }
    spdlog::debug("resinv {:3d}: gamma = {:.15g}{:+.15g}i residual = {:.3e}", k, gamma.real(),
                  gamma.imag(), rec.residual);
    if (rec.residual <= options.outer_tol)
    {
      rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      res.history.push_back(rec);
      res.converged = true;
      break;
    }

    rec.inner_tolerance = inner_tolerance(options.inner, gamma, sigma);
    const InnerSolveInfo info = solver.solve(r, dv, rec.inner_tolerance);
    rec.inner_iterations = info.iterations;
    rec.inner_residual = info.relative_residual;
    rec.inner_seconds = info.seconds;
    if (!info.converged)
    {
      // Stagnation is the round-off floor, expected with tight fixed tolerances.
      const auto level = info.status == krylov::SolveStatus::Stagnation ? spdlog::level::debug
                                                                         : spdlog::level::warn;
      spdlog::log(level, "resinv {}: inner solve stopped ({}) at relative residual {:.3e} > {:.3e}",
                  k, krylov::to_string(info.status), info.relative_residual, rec.inner_tolerance);
    }
    simd::axpy(-1.0, dv, v);
    simd::scale(1.0 / simd::norm(v), v);
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    res.history.push_back(rec);
  }

  if (res.converged)
  {
    res.gamma = gamma;
    res.v = std::move(v);
    res.status = ResinvStatus::Converged;
  }
  else
  {
    res.gamma = best_gamma;
    res.v = best_v.empty() ? std::move(v) : std::move(best_v);
    res.status = ResinvStatus::NoConvergence;
  }
  normalize_phase(res.v);
  for (auto &h : res.history)
  {
    h.gamma_error = std::abs(h.gamma - res.gamma);
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return res;
}

}  // namespace wep
