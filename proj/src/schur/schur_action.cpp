// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "wep/schur/schur_action.hpp"

#include "wep/simd/kernels.hpp"

namespace wep
{

namespace
{

CVector &boundary_buffer(std::size_t n)
{
  thread_local CVector buf;
  if (buf.size() < n)
  {
    buf.resize(n);
  }
  return buf;
}

CVector a_first_column(const DiscreteProblem &problem, cplx sigma, double kbar)
{
  const RVector dzz = problem.dzz_first_column();
  const RVector dz = problem.dz_first_column();
  CVector col(problem.n_z());
  for (std::size_t i = 0; i < col.size(); ++i)
  {
    col[i] = dzz[i] + 2.0 * sigma * dz[i];
  }
  col[0] += sigma * sigma + kbar;
  return col;
}

}  // namespace

SchurAction::SchurAction(const DiscreteProblem &problem, cplx sigma, std::optional<double> kbar,
                         spectral::PlanRigor rigor)
  : problem_(&problem), sigma_(sigma), kbar_(kbar.value_or(problem.mean_kappa2())),
    block_(problem, sigma),
    kernel_(a_first_column(problem, sigma, kbar_), problem.n_x(), problem.h_x(), rigor),
    k_shifted_(problem.n_z(), problem.n_x())
{
  require(problem.n_x() >= 2, ErrorCode::InvalidArgument, "the Schur action needs n_x >= 2");
  const auto k = problem.kappa2().flat();
  auto ks = k_shifted_.flat();
  for (std::size_t i = 0; i < k.size(); ++i)
  {
    ks[i] = k[i] - kbar_;
  }
  const double ix2 = 1.0 / (problem.h_x() * problem.h_x());
  u_ = {problem.d1() * ix2, problem.d2() * ix2};
}

void SchurAction::boundary_correction(Side side, std::span<const cplx> g,
                                      std::span<cplx> out) const
{
  block_.apply_p_inverse(side, g, out);
  simd::scale(-1.0, out);
}

void SchurAction::boundary_trace(Side side, std::span<const cplx> x, std::span<cplx> g) const
{
  const std::size_t nz = problem_->n_z(), nx = problem_->n_x();
  const std::size_t c0 = side == Side::Minus ? 0 : nx - 1;
  const std::size_t c1 = side == Side::Minus ? 1 : nx - 2;
  std::fill(g.begin(), g.end(), cplx{});
  simd::axpy(u_[0], x.subspan(c0 * nz, nz), g);
  simd::axpy(u_[1], x.subspan(c1 * nz, nz), g);
}

void SchurAction::apply_phi(std::span<const cplx> x, std::span<cplx> out) const
{
  const std::size_t nz = problem_->n_z(), nx = problem_->n_x(), ni = nz * nx;
  require(x.size() == ni && out.size() == ni, ErrorCode::DimensionMismatch,
          "Phi acts on vectors of length n_x n_z");
  simd::mul_real(k_shifted_.flat(), x, out);

  CVector &g = boundary_buffer(nz);
  std::span<cplx> gs(g.data(), nz);
  boundary_trace(Side::Minus, x, gs);
  boundary_correction(Side::Minus, gs, gs);
  simd::axpy(1.0, gs, out.subspan(0, nz));
  boundary_trace(Side::Plus, x, gs);
  boundary_correction(Side::Plus, gs, gs);
  simd::axpy(1.0, gs, out.subspan((nx - 1) * nz, nz));
}

CMatrix SchurAction::apply_phi(const CMatrix &x) const
{
  CMatrix y(problem_->n_z(), problem_->n_x());
  apply_phi(x.flat(), y.flat());
  return y;
}

void SchurAction::apply(std::span<const cplx> x, std::span<cplx> out) const
{
  const std::size_t nz = problem_->n_z(), nx = problem_->n_x(), ni = nz * nx;
  require(x.size() == ni && out.size() == ni, ErrorCode::DimensionMismatch,
          "S(sigma) acts on vectors of length n_x n_z");
  kernel_.apply(x, out);
  simd::mul_real_acc(k_shifted_.flat(), x, out);

  CVector &g = boundary_buffer(nz);
  std::span<cplx> gs(g.data(), nz);
  boundary_trace(Side::Minus, x, gs);
  boundary_correction(Side::Minus, gs, gs);
  simd::axpy(1.0, gs, out.subspan(0, nz));
  boundary_trace(Side::Plus, x, gs);
  boundary_correction(Side::Plus, gs, gs);
  simd::axpy(1.0, gs, out.subspan((nx - 1) * nz, nz));
}

CVector SchurAction::apply(std::span<const cplx> x) const
{
  CVector y(dimension());
  apply(x, y);
  return y;
}

void SchurAction::reduce_rhs(std::span<const cplx> r, std::span<cplx> out) const
{
  const DiscreteProblem &pr = *problem_;
  const std::size_t nz = pr.n_z(), nx = pr.n_x(), ni = pr.interior_size();
  require(r.size() == pr.size() && out.size() == ni, ErrorCode::DimensionMismatch,
          "reduce_rhs expects a full-length r and an interior-length output");
  std::copy(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(ni), out.begin());

  const double ix2 = 1.0 / (pr.h_x() * pr.h_x());
  CVector &g = boundary_buffer(nz);
  std::span<cplx> gs(g.data(), nz);
  block_.apply_p_inverse(Side::Minus, r.subspan(ni, nz), gs);
  simd::axpy(-ix2, gs, out.subspan(0, nz));
  block_.apply_p_inverse(Side::Plus, r.subspan(ni + nz, nz), gs);
  simd::axpy(-ix2, gs, out.subspan((nx - 1) * nz, nz));
}

void SchurAction::back_substitute(std::span<const cplx> q, std::span<const cplx> r_ext,
                                  std::span<cplx> out) const
{
  const DiscreteProblem &pr = *problem_;
  const std::size_t nz = pr.n_z(), nx = pr.n_x(), ni = pr.interior_size();
  require(q.size() == ni && r_ext.size() == 2 * nz && out.size() == pr.size(),
          ErrorCode::DimensionMismatch, "back_substitute: inconsistent block sizes");
  std::copy(q.begin(), q.end(), out.begin());

  CVector &g = boundary_buffer(nz);
  std::span<cplx> gs(g.data(), nz);
  // r_- - d1 q_1 - d2 q_2, and the mirrored combination on the + side.
  std::copy(r_ext.begin(), r_ext.begin() + static_cast<std::ptrdiff_t>(nz), gs.begin());
  simd::axpy(-pr.d1(), q.subspan(0, nz), gs);
  simd::axpy(-pr.d2(), q.subspan(nz, nz), gs);
  block_.apply_p_inverse(Side::Minus, gs, out.subspan(ni, nz));

  std::copy(r_ext.begin() + static_cast<std::ptrdiff_t>(nz), r_ext.end(), gs.begin());
  simd::axpy(-pr.d1(), q.subspan((nx - 1) * nz, nz), gs);
  simd::axpy(-pr.d2(), q.subspan((nx - 2) * nz, nz), gs);
  block_.apply_p_inverse(Side::Plus, gs, out.subspan(ni + nz, nz));
}

}  // namespace wep
