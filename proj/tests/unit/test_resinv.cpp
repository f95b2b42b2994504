// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "dense_oracle.hpp"
#include "fixtures.hpp"
#include "wep/resinv/resinv.hpp"
#include "wep/resinv/wep_solver.hpp"
#include "wep/simd/kernels.hpp"

namespace
{

using namespace wep;
namespace oracle = wep::oracle;

// M(gamma) = A0 + gamma A1 + gamma^2 A2 with dense coefficients.
class PolynomialNep final : public NonlinearOperator
{
public:
  explicit PolynomialNep(std::vector<oracle::Mat> coeffs) : c_(std::move(coeffs)) {}
  std::size_t dimension() const override { return static_cast<std::size_t>(c_[0].rows()); }
  void apply(cplx g, std::span<const cplx> v, std::span<cplx> out) const override
  {
    const oracle::Vec r = matrix(g) * oracle::to_eigen(v);
    std::copy(r.data(), r.data() + r.size(), out.begin());
  }
  void apply_derivative(cplx g, std::span<const cplx> v, std::span<cplx> out) const override
  {
    oracle::Mat d = oracle::Mat::Zero(c_[0].rows(), c_[0].cols());
    for (std::size_t k = 1; k < c_.size(); ++k)
    {
      d += static_cast<double>(k) * std::pow(g, static_cast<double>(k - 1)) * c_[k];
    }
    const oracle::Vec r = d * oracle::to_eigen(v);
    std::copy(r.data(), r.data() + r.size(), out.begin());
  }
  double residual_scale(cplx) const override { return 1.0; }
  oracle::Mat matrix(cplx g) const
  {
    oracle::Mat m = oracle::Mat::Zero(c_[0].rows(), c_[0].cols());
    for (std::size_t k = 0; k < c_.size(); ++k)
    {
      m += std::pow(g, static_cast<double>(k)) * c_[k];
    }
    return m;
  }

private:
  std::vector<oracle::Mat> c_;
};

class DenseShiftSolver final : public ShiftedSolver
{
public:
  DenseShiftSolver(const PolynomialNep &op, cplx sigma) : sigma_(sigma), lu_(op.matrix(sigma)) {}
  cplx shift() const override { return sigma_; }
  InnerSolveInfo solve(std::span<const cplx> r, std::span<cplx> dx, double) const override
  {
    const oracle::Vec x = lu_.solve(oracle::to_eigen(r));
    std::copy(x.data(), x.data() + x.size(), dx.begin());
    return {1, true, krylov::SolveStatus::Converged, 0.0, 0.0};
  }

private:
  cplx sigma_;
  Eigen::PartialPivLU<oracle::Mat> lu_;
};

TEST(RayleighNewton, ExactOnAffineProblems)
{
  // A - gamma I with v an eigenvector of A for eigenvalue -2 + i.
  oracle::Mat a = oracle::Mat::Zero(3, 3);
  a(0, 0) = cplx(-2.0, 1.0);
  a(1, 1) = -5.0;
  a(2, 2) = cplx(-1.0, -1.0);
  const PolynomialNep op({a, -oracle::Mat::Identity(3, 3)});
  const CVector v{1.0, 0.0, 0.0};
  const NewtonResult r = rayleigh_newton(op, v, {-0.3, 0.2});
  EXPECT_LE(r.iterations, 2u);  // one step, plus the confirming evaluation
  EXPECT_LE(std::abs(r.gamma - cplx(-2.0, 1.0)), 1e-14);
}

TEST(RayleighNewton, QuadraticConvergence)
{
  // Scalar quadratic f(g) = (g - r1)(g - r2), r1 = -1 + 0.5i.
  const cplx r1{-1.0, 0.5}, r2{-3.0, -2.0};
  oracle::Mat a0(1, 1), a1(1, 1), a2(1, 1);
  a0(0, 0) = r1 * r2;
  a1(0, 0) = -(r1 + r2);
  a2(0, 0) = 1.0;
  const PolynomialNep op({a0, a1, a2});
  const CVector v{1.0};
  std::vector<double> err;
  cplx g{-0.6, 0.9};
  for (int k = 0; k < 5; ++k)
  {
    err.push_back(std::abs(g - r1));
    NewtonOptions o;
    o.max_iterations = 1;
    o.tol = 0.0;
    try
    {
      g = rayleigh_newton(op, v, g, o).gamma;
    }
    catch (const Error &e)
    {
      ASSERT_EQ(e.code(), ErrorCode::NewtonStall);
      // One step taken; recover it exactly.
      const cplx f = (g - r1) * (g - r2), fp = 2.0 * g - r1 - r2;
      g -= f / fp;
    }
  }
  for (std::size_t k = 0; k + 1 < err.size(); ++k)
  {
    if (err[k + 1] < 1e-13)
    {
      break;
    }
    EXPECT_LE(err[k + 1] / (err[k] * err[k]), 1.0) << k;
  }
}

TEST(RayleighNewton, LeavingTheLeftHalfPlaneIsAnError)
{
  oracle::Mat a = oracle::Mat::Zero(1, 1);
  a(0, 0) = 2.0;  // root at gamma = 2
  const PolynomialNep op({a, -oracle::Mat::Identity(1, 1)});
  const CVector v{1.0};
  try
  {
    rayleigh_newton(op, v, {-0.1, 0.0});
    FAIL();
  }
  catch (const Error &e)
  {
    EXPECT_EQ(e.code(), ErrorCode::LeftHalfPlaneViolation);
  }
}

TEST(InnerTolerance, Policies)
{
  InnerToleranceOptions o;
  const cplx sigma{-0.5, -0.4};
  EXPECT_EQ(inner_tolerance(o, {-0.523, -0.375}, sigma), 1e-12);
  o.policy = InnerPolicy::Adaptive;
  EXPECT_EQ(inner_tolerance(o, sigma, sigma), 1e-13);
  EXPECT_NEAR(inner_tolerance(o, sigma + cplx(0.034, 0.0), sigma), 3.4e-3, 1e-15);
  EXPECT_EQ(inner_tolerance(o, sigma + cplx(5.0, 0.0), sigma), 1e-2);
}

TEST(NormalizePhase, UnitNormFirstEntryPositiveReal)
{
  CVector v{{0.0, 0.0}, {1e-14, 0.0}, {-3.0, 4.0}, {1.0, 1.0}};
  normalize_phase(v);
  EXPECT_NEAR(simd::norm(v), 1.0, 1e-15);
  EXPECT_GT(v[2].real(), 0.0);
  EXPECT_NEAR(v[2].imag(), 0.0, 1e-16);
}

TEST(Resinv, DenseQuadraticProblemConvergesLinearly)
{
  const std::size_t n = 12;
  std::vector<oracle::Mat> c;
  for (int k = 0; k < 2; ++k)
  {
    const CVector v = fixture::random_vector(n * n, 100 + k);
    oracle::Mat m(n, n);
    std::copy(v.begin(), v.end(), m.data());
    c.push_back(0.2 * m);
  }
  c[0] += cplx(-1.0, 0.4) * oracle::Mat::Identity(n, n);
  c.push_back(oracle::Mat::Identity(n, n));
  const PolynomialNep op(c);
  // Companion linearization gives the reference spectrum.
  const cplx guess{-1.2, -0.9};
  Eigen::ComplexEigenSolver<oracle::Mat> es;
  oracle::Mat lin = oracle::Mat::Zero(2 * n, 2 * n);
  lin.block(0, n, n, n) = oracle::Mat::Identity(n, n);
  lin.block(n, 0, n, n) = -c[0];
  lin.block(n, n, n, n) = -c[1];
  es.compute(lin);
  Eigen::Index best = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
  {
    if (std::abs(es.eigenvalues()(i) - guess) < std::abs(es.eigenvalues()(best) - guess))
    {
      best = i;
    }
  }
  const cplx target = es.eigenvalues()(best);
  ASSERT_LT(target.real(), -0.1);
  const cplx sigma = target + cplx(0.05, 0.05);

  const DenseShiftSolver solver(op, sigma);
  CVector v0 = fixture::random_vector(n, 3);
  ResinvOptions o;
  o.outer_tol = 1e-12;
  o.max_outer = 200;
  const EigResult r = resinv(op, solver, sigma, v0, o);
  ASSERT_TRUE(r.converged) << r.gamma << " target " << target << " residual " << r.final_residual() << " rate " << convergence_factor(r.history);
  EXPECT_LE(std::abs(r.gamma - target), 1e-9);
  EXPECT_LE(r.final_residual(), o.outer_tol);
  EXPECT_NEAR(simd::norm(r.v), 1.0, 1e-14);

  // Restarting at the converged pair stops after one residual evaluation.
  o.warmup = 0;
  const EigResult again = resinv(op, solver, r.gamma, r.v, o);
  EXPECT_EQ(again.history.size(), 1u);
  EXPECT_LE(std::abs(again.gamma - r.gamma), 1e-12);
}

TEST(Resinv, RejectsShiftInTheRightHalfPlane)
{
  const PolynomialNep op({oracle::Mat::Identity(2, 2), -oracle::Mat::Identity(2, 2)});
  const DenseShiftSolver solver(op, {0.5, 0.0});
  const CVector v0{1.0, 0.0};
  EXPECT_THROW(resinv(op, solver, {-0.5, 0.0}, v0), Error);
}

TEST(Resinv, WaveguideAdaptivePolicyReachesOuterTolerance)
{
  const WaveguideGeometry geo = fixture::two_region_geometry();
  const DiscreteProblem pr(geo, 49, 45);
  const cplx sigma{-0.2, -0.5};
  const SchurAction s(pr, sigma);
  const SmwPreconditioner pc(s, CoarseGrid::build(49, 45, 7));
  const SchurShiftSolver solver(s, &pc);
  const WaveguideNep op(pr);
  ResinvOptions o;
  o.outer_tol = 1e-10;
  o.max_outer = 60;
  o.inner.policy = InnerPolicy::Adaptive;
  const EigResult r = resinv(op, solver, sigma, default_start_vector(s), o);
  ASSERT_TRUE(r.converged) << r.final_residual();
  EXPECT_LE(WaveguideOperator(pr, r.gamma).relative_residual(r.v), 1e-10);
  // The Rayleigh-Newton update is a fixed point at the converged pair.
  const NewtonResult nr = rayleigh_newton(op, r.v, r.gamma);
  EXPECT_LE(std::abs(nr.gamma - r.gamma), 1e-12);

  // Deterministic single-threaded rerun.
  const EigResult r2 = resinv(op, solver, sigma, default_start_vector(s), o);
  EXPECT_EQ(r.gamma, r2.gamma);
  for (std::size_t i = 0; i < r.v.size(); ++i)
  {
    ASSERT_EQ(r.v[i], r2.v[i]);
  }
}

}  // namespace
