// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "dense_oracle.hpp"

#include <cmath>

namespace wep::oracle
{

Vec to_eigen(std::span<const cplx> v)
{
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i)
  {
    out(static_cast<Eigen::Index>(i)) = v[i];
  }
  return out;
}

CVector from_eigen(const Vec &v)
{
  return CVector(v.data(), v.data() + v.size());
}

double rel_err(const Vec &a, const Vec &b)
{
  const double nb = b.norm();
  return nb == 0.0 ? (a - b).norm() : (a - b).norm() / nb;
}

double rel_err(std::span<const cplx> a, std::span<const cplx> b)
{
  return rel_err(to_eigen(a), to_eigen(b));
}

Mat circulant(std::span<const cplx> c)
{
  const auto n = static_cast<Eigen::Index>(c.size());
  Mat m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
  {
    for (Eigen::Index j = 0; j < n; ++j)
    {
      m(i, j) = c[static_cast<std::size_t>(((i - j) % n + n) % n)];
    }
  }
  return m;
}

Mat periodic_dz(std::size_t n, double h)
{
  const auto N = static_cast<Eigen::Index>(n);
  Mat m = Mat::Zero(N, N);
  for (Eigen::Index i = 0; i < N; ++i)
  {
    m(i, (i + 1) % N) += 0.5 / h;
    m(i, (i + N - 1) % N) -= 0.5 / h;
  }
  return m;
}

Mat periodic_dzz(std::size_t n, double h)
{
  const auto N = static_cast<Eigen::Index>(n);
  Mat m = Mat::Zero(N, N);
  for (Eigen::Index i = 0; i < N; ++i)
  {
    m(i, i) -= 2.0 / (h * h);
    m(i, (i + 1) % N) += 1.0 / (h * h);
    m(i, (i + N - 1) % N) += 1.0 / (h * h);
  }
  return m;
}

Mat dirichlet_dxx(std::size_t n, double h)
{
  const auto N = static_cast<Eigen::Index>(n);
  Mat m = Mat::Zero(N, N);
  for (Eigen::Index i = 0; i < N; ++i)
  {
    m(i, i) = -2.0 / (h * h);
    if (i > 0)
    {
      m(i, i - 1) = 1.0 / (h * h);
    }
    if (i + 1 < N)
    {
      m(i, i + 1) = 1.0 / (h * h);
    }
  }
  return m;
}

Mat kron(const Mat &a, const Mat &b)
{
  Mat k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
  {
    for (Eigen::Index j = 0; j < a.cols(); ++j)
    {
      k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return k;
}

Mat dtn_basis(std::size_t n_z)
{
  const auto N = static_cast<Eigen::Index>(n_z);
  const double p = static_cast<double>((n_z - 1) / 2);
  const double hz = 1.0 / static_cast<double>(n_z);
  Mat r(N, N);
  for (Eigen::Index k = 1; k <= N; ++k)
  {
    for (Eigen::Index l = 1; l <= N; ++l)
    {
      const double arg = 2.0 * pi * (static_cast<double>(l) - p - 1.0) * static_cast<double>(k) * hz;
      r(k - 1, l - 1) = std::polar(1.0, arg);
    }
  }
  return r;
}

DtnDirect dtn_direct(cplx gamma, std::size_t p, double km, double kp)
{
  const auto n = static_cast<Eigen::Index>(2 * p + 1);
  DtnDirect d{Vec(n), Vec(n), Vec(n), Vec(n)};
  for (Eigen::Index i = 0; i < n; ++i)
  {
    const double k = static_cast<double>(i) - static_cast<double>(p);
    const cplx g = gamma + cplx(0.0, 2.0 * pi * k);
    for (int side = 0; side < 2; ++side)
    {
      const double kappa = side == 0 ? km : kp;
      const cplx beta = g * g + kappa * kappa;
      const double sgn = beta.imag() < 0.0 ? -1.0 : 1.0;
      const cplx s = sgn * cplx(0.0, 1.0) * std::sqrt(beta);
      const cplx sp = sgn * cplx(0.0, 1.0) * g / std::sqrt(beta);
      (side == 0 ? d.s_minus : d.s_plus)(i) = s;
      (side == 0 ? d.sp_minus : d.sp_plus)(i) = sp;
    }
  }
  return d;
}

Blocks assemble(const DiscreteProblem &pr, cplx gamma)
{
  const std::size_t nz = pr.n_z(), nx = pr.n_x();
  const auto NZ = static_cast<Eigen::Index>(nz), NX = static_cast<Eigen::Index>(nx);
  const Eigen::Index ni = NZ * NX;
  const Mat iz = Mat::Identity(NZ, NZ), ix = Mat::Identity(NX, NX);
  const Mat dz = periodic_dz(nz, pr.h_z()), dzz = periodic_dzz(nz, pr.h_z());
  const Mat dxx = dirichlet_dxx(nx, pr.h_x());

  Blocks b;
  Mat kdiag = Mat::Zero(ni, ni);
  for (std::size_t j = 0; j < nx; ++j)
  {
    for (std::size_t i = 0; i < nz; ++i)
    {
      const auto idx = static_cast<Eigen::Index>(i + j * nz);
      kdiag(idx, idx) = pr.kappa2()(i, j);
    }
  }
  b.a0 = kron(ix, dzz) + kron(dxx.transpose(), iz) + kdiag;
  b.a1 = kron(ix, 2.0 * dz);
  b.a2 = Mat::Identity(ni, ni);
  b.q = b.a0 + gamma * b.a1 + gamma * gamma * b.a2;

  const double ix2 = 1.0 / (pr.h_x() * pr.h_x());
  b.c1 = Mat::Zero(ni, 2 * NZ);
  b.c1.block(0, 0, NZ, NZ) = ix2 * iz;
  b.c1.block(ni - NZ, NZ, NZ, NZ) = ix2 * iz;
  b.c2t = Mat::Zero(2 * NZ, ni);
  b.c2t.block(0, 0, NZ, NZ) = pr.d1() * iz;
  b.c2t.block(0, NZ, NZ, NZ) = pr.d2() * iz;
  b.c2t.block(NZ, ni - NZ, NZ, NZ) = pr.d1() * iz;
  b.c2t.block(NZ, ni - 2 * NZ, NZ, NZ) = pr.d2() * iz;

  const DtnDirect d = dtn_direct(gamma, pr.p(), pr.kappa_minus(), pr.kappa_plus());
  const Mat r = dtn_basis(nz);
  const Mat rinv = r.inverse();
  const Vec d0 = Vec::Constant(NZ, pr.d0());
  b.p = Mat::Zero(2 * NZ, 2 * NZ);
  b.p.block(0, 0, NZ, NZ) = r * (d.s_minus + d0).asDiagonal() * rinv;
  b.p.block(NZ, NZ, NZ, NZ) = r * (d.s_plus + d0).asDiagonal() * rinv;

  b.m = Mat::Zero(ni + 2 * NZ, ni + 2 * NZ);
  b.m.block(0, 0, ni, ni) = b.q;
  b.m.block(0, ni, ni, 2 * NZ) = b.c1;
  b.m.block(ni, 0, 2 * NZ, ni) = b.c2t;
  b.m.block(ni, ni, 2 * NZ, 2 * NZ) = b.p;
  return b;
}

Mat assemble_derivative(const DiscreteProblem &pr, cplx gamma)
{
  const Blocks b = assemble(pr, gamma);
  const auto NZ = static_cast<Eigen::Index>(pr.n_z());
  const Eigen::Index ni = b.q.rows();
  const DtnDirect d = dtn_direct(gamma, pr.p(), pr.kappa_minus(), pr.kappa_plus());
  const Mat r = dtn_basis(pr.n_z());
  const Mat rinv = r.inverse();
  Mat m = Mat::Zero(ni + 2 * NZ, ni + 2 * NZ);
  m.block(0, 0, ni, ni) = b.a1 + 2.0 * gamma * b.a2;
  m.block(ni, ni, NZ, NZ) = r * d.sp_minus.asDiagonal() * rinv;
  m.block(ni + NZ, ni + NZ, NZ, NZ) = r * d.sp_plus.asDiagonal() * rinv;
  return m;
}

Mat schur(const DiscreteProblem &pr, cplx sigma)
{
  const Blocks b = assemble(pr, sigma);
  return b.q - b.c1 * b.p.partialPivLu().solve(b.c2t);
}

Mat sylvester(const DiscreteProblem &pr, cplx sigma, double kbar)
{
  const std::size_t nz = pr.n_z(), nx = pr.n_x();
  const auto NZ = static_cast<Eigen::Index>(nz), NX = static_cast<Eigen::Index>(nx);
  const Mat a = periodic_dzz(nz, pr.h_z()) + 2.0 * sigma * periodic_dz(nz, pr.h_z()) +
                (sigma * sigma + kbar) * Mat::Identity(NZ, NZ);
  const Mat bm = dirichlet_dxx(nx, pr.h_x());
  return kron(Mat::Identity(NX, NX), a) + kron(bm.transpose(), Mat::Identity(NZ, NZ));
}

Mat indicators(const CoarseGrid &grid)
{
  const auto ni = static_cast<Eigen::Index>(grid.n_x() * grid.n_z());
  Mat v = Mat::Zero(ni, static_cast<Eigen::Index>(grid.size()));
  for (std::size_t i = 0; i < grid.n_z(); ++i)
  {
    for (std::size_t j = 0; j < grid.n_x(); ++j)
    {
      v(static_cast<Eigen::Index>(i + j * grid.n_z()),
        static_cast<Eigen::Index>(grid.cell_of(i, j))) = 1.0;
    }
  }
  return v;
}

Mat mean_functionals(const CoarseGrid &grid)
{
  Mat v = indicators(grid);
  for (Eigen::Index k = 0; k < v.cols(); ++k)
  {
    v.col(k) /= v.col(k).sum();
  }
  return v;
}

Mat coupling(const DiscreteProblem &pr, const CoarseGrid &grid, cplx sigma, double kbar)
{
  const Mat l = sylvester(pr, sigma, kbar);
  const Mat phi = schur(pr, sigma) - l;
  const Mat v = indicators(grid);
  const Mat w = mean_functionals(grid);
  const Mat f = l.partialPivLu().solve(phi * v);
  const auto n = static_cast<Eigen::Index>(grid.size());
  return Mat::Identity(n, n) + w.transpose() * f;
}

Mat smw_operator(const DiscreteProblem &pr, const CoarseGrid &grid, cplx sigma, double kbar)
{
  const Mat l = sylvester(pr, sigma, kbar);
  const Mat phi = schur(pr, sigma) - l;
  const Mat v = indicators(grid);
  const Mat w = mean_functionals(grid);
  return l + phi * v * w.transpose();
}

double norm1(const Mat &m)
{
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

}  // namespace wep::oracle
