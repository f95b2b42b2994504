// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef WEP_SMW_COARSE_GRID_HPP
#define WEP_SMW_COARSE_GRID_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wep/common.hpp"

namespace wep
{

enum class CoarseLayout : std::uint8_t
{
  // N_z + 2 near-uniform x-cells with the outermost two split in half: N_x = N_z + 4.
  Refined = 0,
  // N_x = N_z near-uniform x-cells.
  Uniform = 1
};

const char *to_string(CoarseLayout layout) noexcept;

/// Half-open index range [begin, end).
struct IndexRange
{
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const noexcept { return end - begin; }
  bool contains(std::size_t i) const noexcept { return i >= begin && i < end; }
};

struct Cell
{
  IndexRange rows;  // z
  IndexRange cols;  // x
  std::size_t count() const noexcept { return rows.size() * cols.size(); }
};

/// Partition of the n_z x n_x fine grid into N = N_x N_z rectangular cells.
/// Cell k = l + m N_z has z-range l and x-range m.
class CoarseGrid
{
public:
  CoarseGrid() = default;

  /// Throws GridTooCoarse if some cell would be empty, InvalidArgument if
  /// N > n_x n_z / 4.
  static CoarseGrid build(std::size_t n_x, std::size_t n_z, std::size_t coarse_z,
                          CoarseLayout layout = CoarseLayout::Refined);

  std::size_t n_x() const noexcept { return n_x_; }
  std::size_t n_z() const noexcept { return n_z_; }
  std::size_t cells_x() const noexcept { return x_.size(); }
  std::size_t cells_z() const noexcept { return z_.size(); }
  std::size_t size() const noexcept { return x_.size() * z_.size(); }
  CoarseLayout layout() const noexcept { return layout_; }

  std::span<const IndexRange> z_ranges() const noexcept { return z_; }
  std::span<const IndexRange> x_ranges() const noexcept { return x_; }

  Cell cell(std::size_t k) const noexcept
  {
    return {z_[k % z_.size()], x_[k / z_.size()]};
  }

  /// Index of the cell containing fine node (row i, column j).
  std::size_t cell_of(std::size_t i, std::size_t j) const;

  /// Arithmetic mean of X over cell k (pairwise summation).
  cplx cell_mean(std::span<const cplx> x, std::size_t k) const;

  /// All N cell means.
  void cell_means(std::span<const cplx> x, std::span<cplx> means) const;

  /// X~ = sum_k mean_k(X) V_k.
  void project(std::span<const cplx> x, std::span<cplx> out) const;

  /// vec(V_k) added with weight a.
  void add_indicator(std::size_t k, cplx a, std::span<cplx> out) const;

private:
  std::size_t n_x_ = 0, n_z_ = 0;
  CoarseLayout layout_ = CoarseLayout::Refined;
  std::vector<IndexRange> z_;
  std::vector<IndexRange> x_;
  std::vector<std::size_t> row_cell_;  // z-range index per fine row
  std::vector<std::size_t> col_cell_;  // x-range index per fine column
};

/// Pairwise (cascade) sum; the result depends only on the data, not on threading.
cplx pairwise_sum(std::span<const cplx> x) noexcept;

}  // namespace wep

#endif  // WEP_SMW_COARSE_GRID_HPP
