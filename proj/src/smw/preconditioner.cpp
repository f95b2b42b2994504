// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "wep/smw/preconditioner.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include <Eigen/Dense>
#include <spdlog/spdlog.h>

#include "wep/simd/kernels.hpp"
#include "wep/smw/coupling_cache.hpp"

namespace wep
{

struct SmwPreconditioner::Factorization
{
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu;
};

void StructuredEk::materialize(std::size_t n_z, std::size_t n_x, std::span<cplx> out) const
{
  std::fill(out.begin(), out.end(), cplx{});
  add_to(1.0, n_z, n_x, out);
}

void StructuredEk::add_to(cplx a, std::size_t n_z, std::size_t n_x, std::span<cplx> out) const
{
  require(out.size() == n_z * n_x, ErrorCode::DimensionMismatch,
          "E_k lives on the fine n_z x n_x grid");
  const std::size_t r0 = range.rows.begin, c0 = range.cols.begin;
  for (std::size_t j = 0; j < local.cols(); ++j)
  {
    cplx *dst = out.data() + (c0 + j) * n_z + r0;
    const double *src = local.data() + j * local.rows();
    for (std::size_t i = 0; i < local.rows(); ++i)
    {
      dst[i] += a * src[i];
    }
  }
  if (!left.empty())
  {
    simd::axpy(a, left, out.subspan(0, n_z));
  }
  if (!right.empty())
  {
    simd::axpy(a, right, out.subspan((n_x - 1) * n_z, n_z));
  }
}

StructuredEk build_ek(const SchurAction &schur, const CoarseGrid &grid, std::size_t k)
{
  const std::size_t nz = grid.n_z(), nx = grid.n_x();
  StructuredEk e;
  e.cell = k;
  e.range = grid.cell(k);
  const IndexRange rows = e.range.rows, cols = e.range.cols;

  const RMatrix &ks = schur.shifted_wavenumber();
  e.local = RMatrix(rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
  {
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
      e.local(i, j) = ks(rows.begin + i, cols.begin + j);
    }
  }

  // V_k u and V_k J u are constant on the cell's rows.
  const auto u = schur.boundary_weights();
  auto boundary = [&](Side side, std::size_t first, std::size_t second, CVector &out)
  {
    const double w = (cols.contains(first) ? u[0] : 0.0) + (cols.contains(second) ? u[1] : 0.0);
    if (!cols.contains(first) && !cols.contains(second))
    {
      return;
    }
    out.assign(nz, cplx{});
    for (std::size_t i = rows.begin; i < rows.end; ++i)
    {
      out[i] = w;
    }
    schur.boundary_correction(side, out, out);
  };
  boundary(Side::Minus, 0, 1, e.left);
  boundary(Side::Plus, nx - 1, nx - 2, e.right);
  return e;
}

SmwPreconditioner::SmwPreconditioner(Bare, const SchurAction &schur, CoarseGrid grid)
  : schur_(&schur), grid_(std::move(grid))
{
  const DiscreteProblem &pr = schur.problem();
  require(grid_.n_x() == pr.n_x() && grid_.n_z() == pr.n_z(), ErrorCode::DimensionMismatch,
          "coarse grid was built for a different fine grid");
}

SmwPreconditioner::SmwPreconditioner(const SchurAction &schur, CoarseGrid grid,
                                     std::size_t workers)
  : SmwPreconditioner(Bare{}, schur, std::move(grid))
{
  const auto t0 = std::chrono::steady_clock::now();
  build_structured();
  precompute(std::max<std::size_t>(1, workers));
  factorize();
  precompute_seconds_ =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SmwPreconditioner::~SmwPreconditioner() = default;
SmwPreconditioner::SmwPreconditioner(SmwPreconditioner &&) noexcept = default;
SmwPreconditioner &SmwPreconditioner::operator=(SmwPreconditioner &&) noexcept = default;

SmwPreconditioner SmwPreconditioner::from_coupling(const SchurAction &schur, CoarseGrid grid,
                                                   CMatrix coupling)
{
  SmwPreconditioner p(Bare{}, schur, std::move(grid));
  require(coupling.rows() == p.rank() && coupling.cols() == p.rank(),
          ErrorCode::DimensionMismatch, "coupling matrix must be N x N");
  const auto t0 = std::chrono::steady_clock::now();
  p.build_structured();
  p.w_ = std::move(coupling);
  p.factorize();
  p.precompute_seconds_ =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return p;
}

void SmwPreconditioner::build_structured()
{
  ek_.clear();
  ek_.reserve(rank());
  for (std::size_t k = 0; k < rank(); ++k)
  {
    ek_.push_back(build_ek(*schur_, grid_, k));
  }
}

void SmwPreconditioner::precompute(std::size_t workers)
{
  const std::size_t n = rank();
  const std::size_t nz = grid_.n_z(), nx = grid_.n_x(), ni = nz * nx;
  workers = std::min(workers, n);
  w_ = CMatrix(n, n);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto &kernel = schur_->sylvester();

  auto work = [&]
  {
    try
    {
      CVector f(ni);
      spectral::SylvesterWorkspace ws;
      for (std::size_t k = next++; k < n; k = next++)
      {
        ek_[k].materialize(nz, nx, f);
        kernel.solve(f, f, ws);
        auto col = w_.col(k);
        grid_.cell_means(f, col);
        col[k] += 1.0;
      }
    }
    catch (...)
    {
      std::lock_guard lock(failure_mutex);
      if (!failure)
      {
        failure = std::current_exception();
      }
      next = n;
    }
  };

  if (workers <= 1)
  {
    work();
  }
  else
  {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t)
    {
      pool.emplace_back(work);
    }
    for (auto &t : pool)
    {
      t.join();
    }
  }
  if (failure)
  {
    std::rethrow_exception(failure);
  }

  // One F buffer and one 2D-FFT extension per worker, plus W itself.
  const std::size_t per_worker = (ni + nz * 2 * (nx + 1)) * sizeof(cplx);
  peak_bytes_ = workers * per_worker + n * n * sizeof(cplx);
}

void SmwPreconditioner::factorize()
{
  const std::size_t n = rank();
  Eigen::Map<const Eigen::MatrixXcd> w(w_.data(), static_cast<Eigen::Index>(n),
                                       static_cast<Eigen::Index>(n));
  lu_ = std::make_unique<Factorization>();
  lu_->lu.compute(w);
  const auto &u = lu_->lu.matrixLU();
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (Eigen::Index i = 0; i < u.rows(); ++i)
  {
    const double d = std::abs(u(i, i));
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  if (!(hi > 0.0) || !std::isfinite(hi) || !(lo / hi >= kPivotTolerance))
  {
    std::ostringstream msg;
    msg << "coupling matrix W is numerically singular (pivot ratio " << lo / hi << ")";
    throw Error(ErrorCode::SingularCoupling, msg.str());
  }
}

void SmwPreconditioner::solve_coupling(std::span<const cplx> g, std::span<cplx> a) const
{
  const auto n = static_cast<Eigen::Index>(rank());
  require(g.size() == rank() && a.size() == rank(), ErrorCode::DimensionMismatch,
          "coupling solve expects N entries");
  Eigen::Map<const Eigen::VectorXcd> gv(g.data(), n);
  Eigen::Map<Eigen::VectorXcd> av(a.data(), n);
  av = lu_->lu.solve(gv);
}

void SmwPreconditioner::apply(std::span<const cplx> c, std::span<cplx> x) const
{
  const std::size_t ni = dimension(), n = rank();
  require(c.size() == ni && x.size() == ni, ErrorCode::DimensionMismatch,
          "preconditioner acts on vectors of length n_x n_z");
  const auto &kernel = schur_->sylvester();
  thread_local CVector g, alpha;
  g.resize(n);
  alpha.resize(n);

  kernel.solve(c, x);
  grid_.cell_means(x, g);
  solve_coupling(g, alpha);

  std::copy(c.begin(), c.end(), x.begin());
  for (std::size_t k = 0; k < n; ++k)
  {
    ek_[k].add_to(-alpha[k], grid_.n_z(), grid_.n_x(), x);
  }
  kernel.solve(x, x);
}

CVector SmwPreconditioner::apply(std::span<const cplx> c) const
{
  CVector x(dimension());
  apply(c, x);
  return x;
}

void SmwPreconditioner::apply_pi(std::span<const cplx> x, std::span<cplx> out) const
{
  const std::size_t ni = dimension();
  require(x.size() == ni && out.size() == ni, ErrorCode::DimensionMismatch,
          "Pi acts on vectors of length n_x n_z");
  CVector means(rank());
  grid_.cell_means(x, means);
  std::fill(out.begin(), out.end(), cplx{});
  for (std::size_t k = 0; k < rank(); ++k)
  {
    ek_[k].add_to(means[k], grid_.n_z(), grid_.n_x(), out);
  }
}

namespace
{

CacheHeader live_header(const SchurAction &schur, const CoarseGrid &grid)
{
  CacheHeader h;
  h.layout = grid.layout();
  h.n_x = grid.n_x();
  h.n_z = grid.n_z();
  h.cells_x = grid.cells_x();
  h.cells_z = grid.cells_z();
  h.sigma = schur.sigma();
  h.kbar = schur.kbar();
  h.geometry_hash = schur.problem().geometry_hash();
  return h;
}

}  // namespace

void SmwPreconditioner::save(const std::filesystem::path &path) const
{
  write_coupling(path, live_header(*schur_, grid_), w_);
}

SmwPreconditioner SmwPreconditioner::load(const SchurAction &schur, CoarseGrid grid,
                                          const std::filesystem::path &path)
{
  CacheHeader stored;
  CMatrix w = read_coupling(path, stored);
  const std::string diff = stored.mismatch(live_header(schur, grid));
  if (!diff.empty())
  {
    throw Error(ErrorCode::CacheMismatch, path.string() + ": " + diff);
  }
  spdlog::debug("loaded coupling matrix {}x{} from {}", w.rows(), w.cols(), path.string());
  return from_coupling(schur, std::move(grid), std::move(w));
}

}  // namespace wep
