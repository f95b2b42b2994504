// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "dense_oracle.hpp"
#include "fixtures.hpp"
#include "wep/spectral/spectra.hpp"
#include "wep/spectral/sylvester.hpp"

namespace
{

using namespace wep;
using namespace wep::spectral;
namespace oracle = wep::oracle;

CVector a_column(std::size_t nz, cplx sigma, double kbar)
{
  const double h = 1.0 / static_cast<double>(nz);
  CVector c(nz);
  c[0] = -2.0 / (h * h) + sigma * sigma + kbar;
  c[1] = 1.0 / (h * h) - sigma / h;
  c[nz - 1] = 1.0 / (h * h) + sigma / h;
  return c;
}

TEST(CirculantSpectrum, ScaledIdentity)
{
  const CVector col{2.0, 0.0, 0.0, 0.0};
  const CirculantSpectrum s(col);
  for (const cplx &l : s.eigenvalues())
  {
    EXPECT_NEAR(std::abs(l - cplx(2.0)), 0.0, 1e-15);
  }
}

TEST(CirculantSpectrum, SecondDifferenceMatchesDenseEigenvalues)
{
  const CVector col{-32.0, 16.0, 0.0, 16.0};
  const CirculantSpectrum s(col);
  const std::vector<double> expected{0.0, -32.0, -64.0, -32.0};
  for (std::size_t q = 0; q < 4; ++q)
  {
    EXPECT_NEAR(std::abs(s.eigenvalues()[q] - expected[q]), 0.0, 1e-12);
  }
  // Dense decomposition of the assembled circulant, as a set.
  Eigen::ComplexEigenSolver<oracle::Mat> es(oracle::circulant(col));
  std::vector<double> dense;
  for (Eigen::Index i = 0; i < 4; ++i)
  {
    dense.push_back(es.eigenvalues()(i).real());
  }
  std::sort(dense.begin(), dense.end());
  EXPECT_NEAR(dense[0], -64.0, 1e-12);
  EXPECT_NEAR(dense[1], -32.0, 1e-12);
  EXPECT_NEAR(dense[2], -32.0, 1e-12);
  EXPECT_NEAR(dense[3], 0.0, 1e-12);
}

TEST(CirculantSpectrum, LinearInTheFirstColumn)
{
  const CVector col = fixture::random_vector(9, 11);
  CVector scaled = col;
  const cplx alpha{3.0, 2.0};
  for (cplx &c : scaled)
  {
    c *= alpha;
  }
  const CirculantSpectrum s1(col), s2(scaled);
  for (std::size_t q = 0; q < 9; ++q)
  {
    EXPECT_LE(std::abs(s2.eigenvalues()[q] - alpha * s1.eigenvalues()[q]),
              1e-13 * std::abs(s2.eigenvalues()[q]) + 1e-14);
  }
}

TEST(CirculantSpectrum, ApplyMatchesDenseProduct)
{
  for (std::size_t n : {1u, 5u, 12u, 31u})
  {
    const CVector col = fixture::random_vector(n, n);
    const CVector x = fixture::random_vector(n, n + 100);
    const CirculantSpectrum s(col);
    CVector y(n);
    s.apply(x, y);
    const oracle::Vec ref = oracle::circulant(col) * oracle::to_eigen(x);
    EXPECT_LE(oracle::rel_err(oracle::to_eigen(y), ref), 1e-12) << "n=" << n;

    CVector back(n);
    s.apply_inverse(y, back);
    EXPECT_LE(oracle::rel_err(back, x), 1e-11) << "n=" << n;
  }
}

TEST(CirculantSpectrum, BatchedColumns)
{
  const std::size_t n = 7, batch = 4;
  const CVector col = fixture::random_vector(n, 21);
  const CVector x = fixture::random_vector(n * batch, 22);
  const CirculantSpectrum s(col, batch);
  CVector y(n * batch);
  s.apply(x, y);
  const oracle::Mat c = oracle::circulant(col);
  for (std::size_t b = 0; b < batch; ++b)
  {
    const std::span<const cplx> xb(x.data() + b * n, n), yb(y.data() + b * n, n);
    EXPECT_LE(oracle::rel_err(oracle::to_eigen(yb), c * oracle::to_eigen(xb)), 1e-12);
  }
}

TEST(SineSpectrum, OneByOne)
{
  const SineSpectrum s(1, 0.5);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_NEAR(s.eigenvalues()[0], -8.0, 1e-14);
}

TEST(SineSpectrum, MatchesDenseEigenvalues)
{
  const SineSpectrum s(3, 0.25);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(oracle::dirichlet_dxx(3, 0.25).real());
  // Dense eigenvalues come ascending; lambda_j is descending in j.
  for (int j = 0; j < 3; ++j)
  {
    EXPECT_NEAR(s.eigenvalues()[static_cast<std::size_t>(j)], es.eigenvalues()(2 - j), 1e-12);
  }
}

TEST(SineSpectrum, StrictlyNegativeAndOrdered)
{
  const SineSpectrum s(40, 0.01);
  for (std::size_t j = 0; j < s.size(); ++j)
  {
    EXPECT_LT(s.eigenvalues()[j], 0.0);
    if (j > 0)
    {
      EXPECT_LT(s.eigenvalues()[j], s.eigenvalues()[j - 1]);
    }
  }
}

TEST(SineSpectrum, TransformIsTheSineBasisAndInvolutive)
{
  for (std::size_t n : {1u, 4u, 9u, 22u})
  {
    const SineSpectrum s(n, 0.1);
    const CVector x = fixture::random_vector(n, 40 + n);
    CVector y(n), z(n);
    s.transform(x, y);
    oracle::Mat basis(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j)
    {
      for (std::size_t k = 0; k < n; ++k)
      {
        basis(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
            std::sin(static_cast<double>((j + 1) * (k + 1)) * pi / static_cast<double>(n + 1));
      }
    }
    EXPECT_LE(oracle::rel_err(oracle::to_eigen(y), basis * oracle::to_eigen(x)), 1e-12);
    s.transform(y, z);
    for (cplx &v : z)
    {
      v /= s.normalization();
    }
    EXPECT_LE(oracle::rel_err(z, x), 1e-12) << "n=" << n;
  }
}

TEST(Sylvester, ZeroRightHandSide)
{
  const SylvesterKernel k(a_column(5, fixture::kSigma, 1.0), 9, 0.2);
  const CMatrix x = k.solve(CMatrix(5, 9));
  for (const cplx &v : x.flat())
  {
    EXPECT_EQ(v, cplx{});
  }
  const CMatrix y = k.apply(CMatrix(5, 9));
  for (const cplx &v : y.flat())
  {
    EXPECT_EQ(v, cplx{});
  }
}

TEST(Sylvester, MatchesDenseKroneckerSolve)
{
  const std::size_t nz = 5, nx = 9;
  const double hx = 2.0 / static_cast<double>(nx + 1);
  const SylvesterKernel k(a_column(nz, fixture::kSigma, 1.0), nx, hx);
  const oracle::Mat a = oracle::circulant(a_column(nz, fixture::kSigma, 1.0));
  const oracle::Mat b = oracle::dirichlet_dxx(nx, hx);
  const oracle::Mat l = oracle::kron(oracle::Mat::Identity(9, 9), a) +
                        oracle::kron(b.transpose(), oracle::Mat::Identity(5, 5));
  CMatrix c(nz, nx);
  const CVector r = fixture::random_vector(nz * nx, 3);
  std::copy(r.begin(), r.end(), c.data());
  const CMatrix x = k.solve(c);
  const oracle::Vec ref = l.partialPivLu().solve(oracle::to_eigen(c.flat()));
  EXPECT_LE(oracle::rel_err(oracle::to_eigen(x.flat()), ref), 1e-10);

  const CMatrix y = k.apply(c);
  EXPECT_LE(oracle::rel_err(oracle::to_eigen(y.flat()), l * oracle::to_eigen(c.flat())), 1e-12);
}

TEST(Sylvester, RoundTripAndLinearityOnRandomSizes)
{
  Rng rng(99);
  for (int trial = 0; trial < 12; ++trial)
  {
    const std::size_t nz = 2 * (1 + static_cast<std::size_t>(rng.uniform() * 15)) + 1;  // odd, <= 31
    const std::size_t nx = 1 + static_cast<std::size_t>(rng.uniform() * 36);
    const double hx = 1.5 / static_cast<double>(nx + 1);
    const SylvesterKernel k(a_column(nz, fixture::kSigma, 3.0 * rng.uniform()), nx, hx);
    CMatrix c1(nz, nx), c2(nz, nx);
    for (cplx &v : c1.flat())
    {
      v = rng.symmetric_complex();
    }
    for (cplx &v : c2.flat())
    {
      v = rng.symmetric_complex();
    }
    const CMatrix x1 = k.solve(c1);
    const CMatrix back = k.apply(x1);
    EXPECT_LE(oracle::rel_err(back.flat(), c1.flat()), 1e-10) << nz << "x" << nx;

    const cplx alpha{0.7, -1.1}, beta{-2.0, 0.5};
    CMatrix comb(nz, nx);
    for (std::size_t i = 0; i < comb.size(); ++i)
    {
      comb.flat()[i] = alpha * c1.flat()[i] + beta * c2.flat()[i];
    }
    const CMatrix xc = k.solve(comb);
    const CMatrix x2 = k.solve(c2);
    CVector lin(comb.size());
    for (std::size_t i = 0; i < lin.size(); ++i)
    {
      lin[i] = alpha * x1.flat()[i] + beta * x2.flat()[i];
    }
    EXPECT_LE(oracle::rel_err(xc.flat(), lin), 1e-10);
  }
}

TEST(Sylvester, InPlaceSolveOnFlatStorage)
{
  const SylvesterKernel k(a_column(7, fixture::kSigma, 2.0), 6, 0.3);
  const CVector c = fixture::random_vector(42, 5);
  CVector x = c;
  k.solve(x, x);
  CVector back(42);
  k.apply(x, back);
  EXPECT_LE(oracle::rel_err(back, c), 1e-10);
}

TEST(Sylvester, DetectsSpectrumCollision)
{
  // A = -lambda_B(1) I makes the (0, 0) denominator vanish.
  const std::size_t nx = 4;
  const double h = 0.2;
  const double lb = -(4.0 / (h * h)) * std::pow(std::sin(pi / (2.0 * (nx + 1))), 2);
  CVector col(5, cplx{});
  col[0] = -lb;
  try
  {
    SylvesterKernel k(col, nx, h);
    FAIL() << "expected SpectrumCollision";
  }
  catch (const Error &e)
  {
    EXPECT_EQ(e.code(), ErrorCode::SpectrumCollision);
  }
}

TEST(Sylvester, RejectsWrongShapes)
{
  const SylvesterKernel k(a_column(5, fixture::kSigma, 1.0), 3, 0.25);
  EXPECT_THROW(k.solve(CMatrix(5, 4)), Error);
  CVector small(7), out(15);
  EXPECT_THROW(k.apply(small, out), Error);
}

}  // namespace
