// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <chrono>
#include <cmath>

#include "wep/krylov/krylov.hpp"
#include "wep/simd/kernels.hpp"

namespace wep::krylov
{

const char *to_string(SolveStatus s) noexcept
{
  switch (s)
  {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxIterations: return "max-iterations";
    case SolveStatus::Breakdown: return "breakdown";
    case SolveStatus::RhoBreakdown: return "rho-breakdown";
    case SolveStatus::OmegaBreakdown: return "omega-breakdown";
    case SolveStatus::Stagnation: return "stagnation";
  }
  return "unknown";
}

namespace
{

constexpr double kBreakdownTolerance = 1e-14;
constexpr double kReorthogonalize = 0.7;
// A cycle whose estimate met tol but whose true residual fell by less than this
// factor sits on the round-off floor; another restart will not help.
constexpr double kStagnationRatio = 0.5;

// Complex Givens rotation zeroing b in (a, b).
void givens(cplx a, cplx b, double &c, cplx &s)
{
  const double na = std::abs(a), nb = std::abs(b);
  if (nb == 0.0)
  {
    c = 1.0;
    s = 0.0;
  }
  else if (na == 0.0)
  {
    c = 0.0;
    s = std::conj(b) / nb;
  }
  else
  {
    const double r = std::hypot(na, nb);
    c = na / r;
    s = (a / na) * std::conj(b) / r;
  }
}

}  // namespace

SolveReport gmres(const LinearMap &op, const LinearMap &precond, std::span<const cplx> rhs,
                  const KrylovOptions &options, std::span<const cplx> x0)
{
  const auto t0 = std::chrono::steady_clock::now();
  require(options.tol >= 0.0, ErrorCode::InvalidArgument, "GMRES tolerance must be >= 0");
  require(options.restart >= 1, ErrorCode::InvalidArgument, "GMRES restart must be >= 1");
  const std::size_t n = rhs.size();
  require(x0.empty() || x0.size() == n, ErrorCode::DimensionMismatch,
          "GMRES initial guess has the wrong length");

  SolveReport rep;
  rep.solution.assign(n, cplx{});
  if (!x0.empty())
  {
    std::copy(x0.begin(), x0.end(), rep.solution.begin());
  }
  CVector &x = rep.solution;

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

  const double bnorm = simd::norm(rhs);
  if (bnorm == 0.0)
  {
    std::fill(x.begin(), x.end(), cplx{});
    rep.residual_history.push_back(0.0);
    rep.converged = true;
    rep.status = SolveStatus::Converged;
    return rep;
  }

  const std::size_t m = std::min(options.restart, std::max<std::size_t>(n, 1));
  std::vector<CVector> v(m + 1, CVector(n));
  CMatrix h(m + 1, m);
  std::vector<double> cs(m);
  CVector sn(m), g(m + 1), y(m);
  CVector r(n), z(n), w(n), xk;

  auto true_residual = [&](std::span<const cplx> xv)
  {
    op(xv, r);
    for (std::size_t i = 0; i < n; ++i)
    {
      r[i] = rhs[i] - r[i];
    }
    return simd::norm(r);
  };

  // Solution update from the first j columns of the current Krylov basis.
  auto combine = [&](std::size_t j, std::span<cplx> target)
  {
    for (std::size_t i = j; i-- > 0;)
    {
      cplx s = g[i];
      for (std::size_t k = i + 1; k < j; ++k)
      {
        s -= h(i, k) * y[k];
      }
      y[i] = s / h(i, i);
    }
    std::fill(w.begin(), w.end(), cplx{});
    for (std::size_t i = 0; i < j; ++i)
    {
      simd::axpy(y[i], v[i], w);
    }
    apply_m(w, z);
    simd::axpy(1.0, z, target);
  };

  double beta = x0.empty() ? bnorm : true_residual(x);
  if (x0.empty())
  {
    std::copy(rhs.begin(), rhs.end(), r.begin());
  }
  rep.residual_history.push_back(beta / bnorm);
  if (beta / bnorm <= options.tol)
  {
    rep.converged = true;
    rep.status = SolveStatus::Converged;
  }

  while (!rep.converged && rep.iterations < options.max_iterations)
  {
    std::copy(r.begin(), r.end(), v[0].begin());
    simd::scale(1.0 / beta, v[0]);
    std::fill(g.begin(), g.end(), cplx{});
    g[0] = beta;

    std::size_t j = 0;
    bool cycle_done = false;
    bool broke_down = false;
    while (!cycle_done)
    {
      apply_m(v[j], z);
      op(z, w);
      const double wnorm0 = simd::norm(w);
      for (std::size_t i = 0; i <= j; ++i)
      {
        h(i, j) = simd::dotc(v[i], w);
        simd::axpy(-h(i, j), v[i], w);
      }
      double wnorm = simd::norm(w);
      if (wnorm < kReorthogonalize * wnorm0)
      {
        for (std::size_t i = 0; i <= j; ++i)
        {
          const cplx c = simd::dotc(v[i], w);
          h(i, j) += c;
          simd::axpy(-c, v[i], w);
        }
        wnorm = simd::norm(w);
      }
      h(j + 1, j) = wnorm;
      broke_down = wnorm < kBreakdownTolerance * wnorm0 || wnorm == 0.0;
      if (!broke_down)
      {
        std::copy(w.begin(), w.end(), v[j + 1].begin());
        simd::scale(1.0 / wnorm, v[j + 1]);
      }

      for (std::size_t i = 0; i < j; ++i)
      {
        const cplx a = h(i, j), b = h(i + 1, j);
        h(i, j) = cs[i] * a + sn[i] * b;
        h(i + 1, j) = -std::conj(sn[i]) * a + cs[i] * b;
      }
      givens(h(j, j), h(j + 1, j), cs[j], sn[j]);
      h(j, j) = cs[j] * h(j, j) + sn[j] * h(j + 1, j);
      h(j + 1, j) = 0.0;
      g[j + 1] = -std::conj(sn[j]) * g[j];
      g[j] = cs[j] * g[j];

      ++j;
      ++rep.iterations;
      double rel = std::abs(g[j]) / bnorm;

      if (options.monitor)
      {
        xk.assign(x.begin(), x.end());
        combine(j, xk);
        rel = true_residual(xk) / bnorm;
        options.monitor(rep.iterations, xk);
      }
      rep.residual_history.push_back(rel);

      cycle_done = rel <= options.tol || broke_down || j == m ||
                   rep.iterations >= options.max_iterations;
    }

    const double estimate = std::abs(g[j]) / bnorm;
    const double rel_start = beta / bnorm;
    combine(j, x);
    beta = true_residual(x);
    const double rel = beta / bnorm;
    rep.residual_history.back() = rel;
    if (rel <= options.tol)
    {
      rep.converged = true;
      rep.status = SolveStatus::Converged;
    }
    else if (broke_down)
    {
      rep.status = SolveStatus::Breakdown;
      break;
    }
    else if (estimate <= options.tol && rel > kStagnationRatio * rel_start)
    {
      rep.status = SolveStatus::Stagnation;
      break;
    }
  }
  if (!rep.converged && rep.status != SolveStatus::Breakdown &&
      rep.status != SolveStatus::Stagnation)
  {
    rep.status = SolveStatus::MaxIterations;
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace wep::krylov
