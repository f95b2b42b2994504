// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "dense_oracle.hpp"
#include "fixtures.hpp"
#include "wep/core/discrete_problem.hpp"
#include "wep/core/dtn.hpp"
#include "wep/core/geometry.hpp"
#include "wep/core/waveguide_operator.hpp"

namespace
{

using namespace wep;
namespace oracle = wep::oracle;
using fixture::kSigma;

TEST(SampleWavenumber, ConstantField)
{
  WaveguideGeometry g;
  g.background_kappa2 = pi * pi;
  const RMatrix k = sample_wavenumber(g, 6, 5);
  for (double v : k.flat())
  {
    EXPECT_DOUBLE_EQ(v, pi * pi);
  }
}

TEST(SampleWavenumber, EvenGridRejected)
{
  WaveguideGeometry g;
  g.background_kappa2 = 1.0;
  try
  {
    sample_wavenumber(g, 6, 4);
    FAIL();
  }
  catch (const Error &e)
  {
    EXPECT_EQ(e.code(), ErrorCode::OddGridRequired);
  }
}

TEST(SampleWavenumber, NestedGridsAgreeOnSharedNodes)
{
  // Edges at multiples of 1/9 in z and of 1/4 in x fall on both grids.
  WaveguideGeometry g;
  g.x_minus = 0.0;
  g.x_plus = 1.0;
  g.background_kappa2 = 2.0;
  g.regions.push_back({0.25, 0.75, 1.0 / 9.0, 5.0 / 9.0, 7.0, "a"});
  g.regions.push_back({0.5, 1.0, 3.0 / 9.0, 1.0, 11.0, "b"});
  // coarse h_x = 1/8 (n_x = 7), fine h_x = 1/16 (n_x = 15); h_z = 1/9 and 1/27
  const RMatrix coarse = sample_wavenumber(g, 7, 9);
  const RMatrix fine = sample_wavenumber(g, 15, 27);
  for (std::size_t j = 0; j < 7; ++j)
  {
    for (std::size_t i = 0; i < 9; ++i)
    {
      EXPECT_DOUBLE_EQ(coarse(i, j), fine(3 * i + 2, 2 * j + 1)) << i << "," << j;
    }
  }
}

TEST(SampleWavenumber, LastRegionWins)
{
  WaveguideGeometry g;
  g.background_kappa2 = 1.0;
  g.regions.push_back({0.0, 1.0, 0.0, 1.0, 5.0, "first"});
  g.regions.push_back({0.0, 1.0, 0.0, 1.0, 9.0, "second"});
  const RMatrix k = sample_wavenumber(g, 3, 3);
  for (double v : k.flat())
  {
    EXPECT_DOUBLE_EQ(v, 9.0);
  }
}

TEST(Geometry, ValidationCatchesBadInputs)
{
  WaveguideGeometry g;
  g.x_minus = 1.0;
  g.x_plus = 0.0;
  EXPECT_THROW(g.validate(), Error);
  g.x_plus = 2.0;
  g.regions.push_back({0.5, 3.0, 0.0, 1.0, 1.0, "outside"});
  EXPECT_THROW(g.validate(), Error);
  g.regions.clear();
  g.kappa_plus = -1.0;
  EXPECT_THROW(g.validate(), Error);
}

TEST(Dtn, BetaAtOrigin)
{
  const DtnCoefficients c = dtn_coefficients(0.0, 0, pi, pi);
  EXPECT_NEAR(std::abs(c.beta_minus[0] - pi * pi), 0.0, 1e-14);
}

TEST(Dtn, PrincipalRootWithSign)
{
  // gamma = 1 + i, kappa = 0: beta = 2i, sqrt = 1 + i, s = i (1 + i).
  const DtnCoefficients c = dtn_coefficients({1.0, 1.0}, 0, 0.0, 0.0);
  EXPECT_NEAR(std::abs(c.beta_plus[0] - cplx(0.0, 2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(c.s_plus[0] - cplx(-1.0, 1.0)), 0.0, 1e-15);
}

TEST(Dtn, DerivativeMatchesCentralDifference)
{
  const double d = 1e-5;
  const std::size_t p = 4;
  const DtnCoefficients c0 = dtn_coefficients(kSigma, p, pi, 2.0 * pi);
  const DtnCoefficients cp = dtn_coefficients(kSigma + d, p, pi, 2.0 * pi);
  const DtnCoefficients cm = dtn_coefficients(kSigma - d, p, pi, 2.0 * pi);
  for (std::size_t i = 0; i < 2 * p + 1; ++i)
  {
    const cplx fd = (cp.s_minus[i] - cm.s_minus[i]) / (2.0 * d);
    EXPECT_LE(std::abs(fd - c0.s_prime_minus[i]), 1e-8 * std::max(1.0, std::abs(fd))) << i;
    const cplx fd2 = (cp.s_plus[i] - cm.s_plus[i]) / (2.0 * d);
    EXPECT_LE(std::abs(fd2 - c0.s_prime_plus[i]), 1e-8 * std::max(1.0, std::abs(fd2))) << i;
  }
}

TEST(Dtn, SymmetricExteriorGivesEqualMaps)
{
  const DtnCoefficients c = dtn_coefficients(kSigma, 6, 1.7, 1.7);
  for (std::size_t i = 0; i < c.s_plus.size(); ++i)
  {
    EXPECT_EQ(c.s_plus[i], c.s_minus[i]);
  }
}

TEST(Dtn, BranchAmbiguityIsCountedNotFatal)
{
  // gamma = 0, kappa real: beta = kappa^2 - (2 pi k)^2 is real for every k.
  const DtnCoefficients c = dtn_coefficients(0.0, 2, 1.0, 1.0);
  EXPECT_EQ(c.branch_ambiguities, 10u);
}

class CoreGrid : public ::testing::TestWithParam<std::size_t>
{
};

TEST_P(CoreGrid, MatrixFreeMatchesDenseAssembly)
{
  const std::size_t nz = GetParam(), nx = nz + 4;
  const DiscreteProblem pr = fixture::random_problem(nz, nx, nz);
  for (cplx gamma : {kSigma, cplx(-1.341, -1.861), cplx(-0.2, 0.9)})
  {
    const WaveguideOperator op(pr, gamma);
    const oracle::Blocks b = oracle::assemble(pr, gamma);
    const CVector v = fixture::random_vector(pr.size(), 31 + nz);
    const CVector y = op.apply(v);
    EXPECT_LE(oracle::rel_err(oracle::to_eigen(y), b.m * oracle::to_eigen(v)), 1e-12);
  }
}

TEST_P(CoreGrid, DerivativeMatchesDenseAndFiniteDifference)
{
  const std::size_t nz = GetParam(), nx = nz + 4;
  const DiscreteProblem pr = fixture::random_problem(nz, nx, nz + 1);
  const CVector v = fixture::random_vector(pr.size(), 77);
  const WaveguideOperator op(pr, kSigma);
  const CVector yp = op.apply_derivative(v);
  const oracle::Vec dense = oracle::assemble_derivative(pr, kSigma) * oracle::to_eigen(v);
  EXPECT_LE(oracle::rel_err(oracle::to_eigen(yp), dense), 1e-12);

  const double d = 1e-5;
  const CVector ya = WaveguideOperator(pr, kSigma + d).apply(v);
  const CVector yb = WaveguideOperator(pr, kSigma - d).apply(v);
  CVector fd(v.size());
  for (std::size_t i = 0; i < fd.size(); ++i)
  {
    fd[i] = (ya[i] - yb[i]) / (2.0 * d);
  }
  EXPECT_LE(oracle::rel_err(fd, yp), 1e-8);
}

TEST_P(CoreGrid, QuadraticInGammaOnTheInterior)
{
  const std::size_t nz = GetParam(), nx = nz + 4;
  const DiscreteProblem pr = fixture::random_problem(nz, nx, 3);
  const oracle::Blocks b = oracle::assemble(pr, 0.0);
  const CVector x = fixture::random_vector(pr.interior_size(), 8);
  const cplx g{-0.7, 1.3};
  CVector y(x.size());
  WaveguideOperator(pr, g).apply_q(x, y);
  const oracle::Vec xv = oracle::to_eigen(x);
  const oracle::Vec rest = oracle::to_eigen(y) - b.a0 * xv - g * (b.a1 * xv) - g * g * (b.a2 * xv);
  EXPECT_LE(rest.norm() / oracle::to_eigen(y).norm(), 1e-13);
}

INSTANTIATE_TEST_SUITE_P(SmallGrids, CoreGrid, ::testing::Values(5u, 7u, 9u));

TEST(WaveguideOperator, BlockSparsityWithZeroExterior)
{
  const DiscreteProblem pr = fixture::random_problem(5, 9);
  const WaveguideOperator op(pr, kSigma);
  CVector v = fixture::random_vector(pr.size(), 4);
  std::fill(v.begin() + static_cast<std::ptrdiff_t>(pr.interior_size()), v.end(), cplx{});
  const CVector y = op.apply(v);
  const oracle::Blocks b = oracle::assemble(pr, kSigma);
  const oracle::Vec vi = oracle::to_eigen(std::span<const cplx>(v).first(pr.interior_size()));
  const oracle::Vec top = b.q * vi;
  const oracle::Vec bottom = b.c2t * vi;
  const oracle::Vec yv = oracle::to_eigen(y);
  EXPECT_LE(oracle::rel_err(yv.head(top.size()), top), 1e-12);
  EXPECT_LE(oracle::rel_err(yv.tail(bottom.size()), bottom), 1e-12);

  const CVector yp = op.apply_derivative(v);
  for (std::size_t i = pr.interior_size(); i < pr.size(); ++i)
  {
    EXPECT_EQ(yp[i], cplx{});
  }
}

TEST(WaveguideOperator, DtnBlocksMatchDenseAndInvert)
{
  const DiscreteProblem pr = fixture::random_problem(5, 9);
  const WaveguideOperator op(pr, kSigma);
  const oracle::Blocks b = oracle::assemble(pr, kSigma);
  const CVector g = fixture::random_vector(5, 12);
  CVector y(5), back(5);
  op.apply_p(Side::Minus, g, y);
  EXPECT_LE(oracle::rel_err(oracle::to_eigen(y), b.p.block(0, 0, 5, 5) * oracle::to_eigen(g)),
            1e-12);
  op.apply_p(Side::Plus, g, y);
  EXPECT_LE(oracle::rel_err(oracle::to_eigen(y), b.p.block(5, 5, 5, 5) * oracle::to_eigen(g)),
            1e-12);
  op.apply_p_inverse(Side::Plus, y, back);
  EXPECT_LE(oracle::rel_err(back, g), 1e-12);
}

TEST(WaveguideOperator, ConstantVectorExcitesTheZeroMode)
{
  const DiscreteProblem pr = fixture::random_problem(7, 5);
  const WaveguideOperator op(pr, kSigma);
  const CVector one(7, cplx{1.0, 0.0});
  CVector y(7);
  op.apply_p(Side::Minus, one, y);
  const cplx expected = op.dtn().s_minus[pr.p()] + pr.d0();
  for (const cplx &v : y)
  {
    EXPECT_LE(std::abs(v - expected), 1e-12 * std::abs(expected));
  }
}

TEST(WaveguideOperator, DerivativeRejectsRightHalfPlane)
{
  const DiscreteProblem pr = fixture::random_problem(5, 4);
  const WaveguideOperator op(pr, {0.1, -0.3});
  const CVector v(pr.size(), cplx{1.0});
  try
  {
    op.apply_derivative(v);
    FAIL();
  }
  catch (const Error &e)
  {
    EXPECT_EQ(e.code(), ErrorCode::RightHalfPlane);
  }
}

TEST(WaveguideOperator, DimensionMismatch)
{
  const DiscreteProblem pr = fixture::random_problem(5, 4);
  const WaveguideOperator op(pr, kSigma);
  const CVector v(pr.size() - 1);
  CVector out(pr.size() - 1);
  EXPECT_THROW(op.apply(v, out), Error);
}

TEST(ResidualNorm, DenominatorMatchesAssembledOneNorms)
{
  const DiscreteProblem pr = fixture::random_problem(5, 9, 13);
  const cplx gamma{-1.1, 0.6};
  const WaveguideOperator op(pr, gamma);
  const oracle::Blocks b = oracle::assemble(pr, gamma);
  const oracle::DtnDirect d = oracle::dtn_direct(gamma, pr.p(), pr.kappa_minus(), pr.kappa_plus());
  const double g = std::abs(gamma);
  const double expected = oracle::norm1(b.a0) + g * oracle::norm1(b.a1) +
                          g * g * oracle::norm1(b.a2) + oracle::norm1(b.c1) +
                          oracle::norm1(b.c2t) + 2.0 * std::abs(pr.d0()) +
                          d.s_minus.cwiseAbs().sum() + d.s_plus.cwiseAbs().sum();
  EXPECT_NEAR(op.residual_denominator(), expected, 1e-12 * expected);
}

TEST(ResidualNorm, ZeroForNullVectorsAndPhaseInvariant)
{
  const DiscreteProblem pr = fixture::random_problem(5, 9, 13);
  const WaveguideOperator op(pr, kSigma);
  const CVector zero(pr.size());
  EXPECT_EQ(op.relative_residual(zero), 0.0);

  CVector v = fixture::random_vector(pr.size(), 3);
  const double r1 = op.relative_residual(v);
  for (cplx &x : v)
  {
    x *= std::polar(1.0, 0.83);
  }
  EXPECT_NEAR(op.relative_residual(v), r1, 1e-14 * r1);
}

TEST(ResidualNorm, VanishesOnADenseNullVector)
{
  // Build w = M(gamma)^{-1} e, then M(gamma) w - e = 0 to round-off; residual of
  // the exact null vector is only testable through a singular M, so check the
  // operator action consistency instead: ||M w - e|| ~ eps.
  const DiscreteProblem pr = fixture::random_problem(5, 9, 13);
  const WaveguideOperator op(pr, kSigma);
  const oracle::Blocks b = oracle::assemble(pr, kSigma);
  oracle::Vec e = oracle::Vec::Zero(b.m.rows());
  e(3) = 1.0;
  const oracle::Vec w = b.m.partialPivLu().solve(e);
  const CVector mw = op.apply(oracle::from_eigen(w));
  EXPECT_LE((oracle::to_eigen(mw) - e).norm(), 1e-10);
}

}  // namespace
