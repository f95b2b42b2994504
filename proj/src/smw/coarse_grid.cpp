// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "wep/smw/coarse_grid.hpp"

#include <sstream>

namespace wep
{

namespace
{

// n split into m parts whose sizes differ by at most one.
std::vector<IndexRange> near_uniform(std::size_t begin, std::size_t n, std::size_t m)
{
  std::vector<IndexRange> out(m);
  const std::size_t base = n / m, extra = n % m;
  std::size_t at = begin;
  for (std::size_t i = 0; i < m; ++i)
  {
    const std::size_t len = base + (i < extra ? 1 : 0);
    out[i] = {at, at + len};
    at += len;
  }
  return out;
}

void require_nonempty(const std::vector<IndexRange> &ranges, const char *axis, std::size_t n,
                      std::size_t coarse_z)
{
  for (const IndexRange &r : ranges)
  {
    if (r.size() == 0)
    {
      std::ostringstream msg;
      msg << "coarse grid with N_z = " << coarse_z << " leaves an empty " << axis
          << "-cell on " << n << " fine nodes";
      throw Error(ErrorCode::GridTooCoarse, msg.str());
    }
  }
}

}  // namespace

const char *to_string(CoarseLayout layout) noexcept
{
  return layout == CoarseLayout::Refined ? "refined" : "uniform";
}

CoarseGrid CoarseGrid::build(std::size_t n_x, std::size_t n_z, std::size_t coarse_z,
                             CoarseLayout layout)
{
  require(coarse_z >= 1, ErrorCode::InvalidArgument, "N_z must be positive");
  CoarseGrid g;
  g.n_x_ = n_x;
  g.n_z_ = n_z;
  g.layout_ = layout;
  g.z_ = near_uniform(0, n_z, coarse_z);
  require_nonempty(g.z_, "z", n_z, coarse_z);

  if (layout == CoarseLayout::Uniform)
  {
    g.x_ = near_uniform(0, n_x, coarse_z);
  }
  else
  {
    const auto base = near_uniform(0, n_x, coarse_z + 2);
    // Outermost cells halved; the half nearer the boundary gets the smaller share.
    const IndexRange first = base.front(), last = base.back();
    const std::size_t f_outer = first.size() / 2, l_outer = last.size() / 2;
    g.x_.reserve(coarse_z + 4);
    g.x_.push_back({first.begin, first.begin + f_outer});
    g.x_.push_back({first.begin + f_outer, first.end});
    g.x_.insert(g.x_.end(), base.begin() + 1, base.end() - 1);
    g.x_.push_back({last.begin, last.end - l_outer});
    g.x_.push_back({last.end - l_outer, last.end});
  }
  require_nonempty(g.x_, "x", n_x, coarse_z);

  const std::size_t cells = g.size();
  if (4 * cells > n_x * n_z)
  {
    std::ostringstream msg;
    msg << "coarse space rank N = " << cells << " exceeds n_x n_z / 4 = " << n_x * n_z / 4;
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }

  g.row_cell_.resize(n_z);
  for (std::size_t l = 0; l < g.z_.size(); ++l)
  {
    for (std::size_t i = g.z_[l].begin; i < g.z_[l].end; ++i)
    {
      g.row_cell_[i] = l;
    }
  }
  g.col_cell_.resize(n_x);
  for (std::size_t m = 0; m < g.x_.size(); ++m)
  {
    for (std::size_t j = g.x_[m].begin; j < g.x_[m].end; ++j)
    {
      g.col_cell_[j] = m;
    }
  }
  return g;
}

std::size_t CoarseGrid::cell_of(std::size_t i, std::size_t j) const
{
  require(i < n_z_ && j < n_x_, ErrorCode::InvalidArgument, "fine index outside the grid");
  return row_cell_[i] + col_cell_[j] * z_.size();
}

cplx pairwise_sum(std::span<const cplx> x) noexcept
{
  constexpr std::size_t kBlock = 16;
  if (x.size() <= kBlock)
  {
    cplx s{};
    for (const cplx &v : x)
    {
      s += v;
    }
    return s;
  }
  const std::size_t half = x.size() / 2;
  return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

cplx CoarseGrid::cell_mean(std::span<const cplx> x, std::size_t k) const
{
  require(x.size() == n_x_ * n_z_, ErrorCode::DimensionMismatch,
          "cell_mean expects a fine-grid vector");
  require(k < size(), ErrorCode::InvalidArgument, "cell index out of range");
  const Cell c = cell(k);
  thread_local CVector partial;
  partial.resize(c.cols.size());
  for (std::size_t j = c.cols.begin; j < c.cols.end; ++j)
  {
    partial[j - c.cols.begin] = pairwise_sum(x.subspan(j * n_z_ + c.rows.begin, c.rows.size()));
  }
  return pairwise_sum(partial) / static_cast<double>(c.count());
}

void CoarseGrid::cell_means(std::span<const cplx> x, std::span<cplx> means) const
{
  require(means.size() == size(), ErrorCode::DimensionMismatch, "one mean per cell");
  for (std::size_t k = 0; k < size(); ++k)
  {
    means[k] = cell_mean(x, k);
  }
}

void CoarseGrid::project(std::span<const cplx> x, std::span<cplx> out) const
{
  require(out.size() == n_x_ * n_z_, ErrorCode::DimensionMismatch,
          "project expects a fine-grid output");
  CVector means(size());
  cell_means(x, means);
  std::fill(out.begin(), out.end(), cplx{});
  for (std::size_t k = 0; k < size(); ++k)
  {
    add_indicator(k, means[k], out);
  }
}

void CoarseGrid::add_indicator(std::size_t k, cplx a, std::span<cplx> out) const
{
  const Cell c = cell(k);
  for (std::size_t j = c.cols.begin; j < c.cols.end; ++j)
  {
    for (std::size_t i = c.rows.begin; i < c.rows.end; ++i)
    {
      out[j * n_z_ + i] += a;
    }
  }
}

}  // namespace wep
