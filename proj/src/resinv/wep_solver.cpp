// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "wep/resinv/wep_solver.hpp"

#include "wep/core/waveguide_operator.hpp"
#include "wep/random.hpp"
#include "wep/simd/kernels.hpp"

namespace wep
{

void WaveguideNep::apply(cplx gamma, std::span<const cplx> v, std::span<cplx> out) const
{
  WaveguideOperator(*problem_, gamma).apply(v, out);
}

void WaveguideNep::apply_derivative(cplx gamma, std::span<const cplx> v,
                                    std::span<cplx> out) const
{
  WaveguideOperator(*problem_, gamma).apply_derivative(v, out);
}

double WaveguideNep::residual_scale(cplx gamma) const
{
  return WaveguideOperator(*problem_, gamma).residual_denominator();
}

const char *to_string(KrylovMethod m) noexcept
{
  return m == KrylovMethod::Gmres ? "gmres" : "bicgstab";
}

SchurShiftSolver::SchurShiftSolver(const SchurAction &schur, const SmwPreconditioner *precond,
                                   KrylovMethod method, krylov::KrylovOptions options)
  : schur_(&schur), precond_(precond), method_(method), options_(std::move(options))
{
  require(!precond || &precond->schur() == &schur, ErrorCode::InvalidArgument,
          "preconditioner was built for a different Schur action");
}

krylov::LinearMap SchurShiftSolver::schur_map() const
{
  const SchurAction *s = schur_;
  return [s](std::span<const cplx> x, std::span<cplx> y) { s->apply(x, y); };
}

krylov::LinearMap SchurShiftSolver::precond_map() const
{
  if (!precond_)
  {
    return {};
  }
  const SmwPreconditioner *p = precond_;
  return [p](std::span<const cplx> x, std::span<cplx> y) { p->apply(x, y); };
}

krylov::SolveReport SchurShiftSolver::solve_interior(std::span<const cplx> c, double tol) const
{
  krylov::KrylovOptions o = options_;
  o.tol = tol;
  return method_ == KrylovMethod::Gmres ? krylov::gmres(schur_map(), precond_map(), c, o)
                                        : krylov::bicgstab(schur_map(), precond_map(), c, o);
}

InnerSolveInfo SchurShiftSolver::solve(std::span<const cplx> r, std::span<cplx> dx,
                                       double tol) const
{
  const DiscreteProblem &pr = schur_->problem();
  const std::size_t ni = pr.interior_size();
  CVector rt(ni);
  schur_->reduce_rhs(r, rt);
  krylov::SolveReport rep = solve_interior(rt, tol);
  schur_->back_substitute(rep.solution, r.subspan(ni), dx);
  InnerSolveInfo info;
  info.iterations = rep.iterations;
  info.converged = rep.converged;
  info.status = rep.status;
  info.relative_residual = rep.residual_history.empty() ? 0.0 : rep.residual_history.back();
  info.seconds = rep.seconds;
  return info;
}

namespace
{

CVector with_consistent_exterior(const SchurAction &schur, std::span<const cplx> interior)
{
  const DiscreteProblem &pr = schur.problem();
  CVector v(pr.size());
  CVector zero(2 * pr.n_z());
  // back_substitute with r_ext = 0 gives exactly P^{-1}(-C_2^T v_int).
  schur.back_substitute(interior, zero, v);
  simd::scale(1.0 / simd::norm(v), v);
  return v;
}

}  // namespace

CVector default_start_vector(const SchurAction &schur)
{
  CVector interior(schur.problem().interior_size(), cplx{1.0, 0.0});
  return with_consistent_exterior(schur, interior);
}

CVector random_start_vector(const SchurAction &schur, std::uint64_t seed)
{
  Rng rng(seed);
  const CVector interior = rng.complex_vector(schur.problem().interior_size());
  return with_consistent_exterior(schur, interior);
}

}  // namespace wep
