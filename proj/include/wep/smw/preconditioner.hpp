// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef WEP_SMW_PRECONDITIONER_HPP
#define WEP_SMW_PRECONDITIONER_HPP

#include <cstddef>
#include <filesystem>
#include <memory>
#include <span>
#include <vector>

#include "wep/common.hpp"
#include "wep/schur/schur_action.hpp"
#include "wep/smw/coarse_grid.hpp"

namespace wep
{

/// E_k = Phi(V_k) in compact form: the (K - kbar) block on the cell, plus at
/// most one dense column at each x-end coming from the DtN coupling.
struct StructuredEk
{
  std::size_t cell = 0;
  Cell range;
  RMatrix local;  // rows x cols of the cell
  CVector left;   // column 0, empty unless the cell meets columns {0, 1}
  CVector right;  // column n_x - 1, empty unless the cell meets columns {n_x - 2, n_x - 1}

  /// out = vec(E_k) on the full n_z x n_x grid.
  void materialize(std::size_t n_z, std::size_t n_x, std::span<cplx> out) const;
  /// out += a vec(E_k), touching only the support.
  void add_to(cplx a, std::size_t n_z, std::size_t n_x, std::span<cplx> out) const;
};

StructuredEk build_ek(const SchurAction &schur, const CoarseGrid &grid, std::size_t k);

/// Sherman-Morrison-Woodbury solve of (L + Pi)(X) = C, where Pi is the Galerkin
/// approximation Pi(X) = sum_k mean_k(X) E_k of the Schur remainder Phi.
///
///   W a = g,  W_jk = delta_jk + mean_j(L^{-1} E_k),  g_j = mean_j(L^{-1} C),
///   X = L^{-1}(C - sum_k a_k E_k).
///
/// Each application costs two Sylvester solves and one N x N LU solve. The
/// referenced SchurAction must outlive the preconditioner.
class SmwPreconditioner
{
public:
  /// Relative pivot threshold min|U_ii| / max|U_ii| for the coupling LU.
  static constexpr double kPivotTolerance = 1e-14;

  /// Builds all E_k and precomputes W column by column on `workers` threads.
  SmwPreconditioner(const SchurAction &schur, CoarseGrid grid, std::size_t workers = 1);

  ~SmwPreconditioner();
  SmwPreconditioner(SmwPreconditioner &&) noexcept;
  SmwPreconditioner &operator=(SmwPreconditioner &&) noexcept;

  /// Rebuilds the E_k and adopts a previously computed coupling matrix.
  static SmwPreconditioner from_coupling(const SchurAction &schur, CoarseGrid grid,
                                         CMatrix coupling);

  const SchurAction &schur() const noexcept { return *schur_; }
  const CoarseGrid &grid() const noexcept { return grid_; }
  std::size_t rank() const noexcept { return grid_.size(); }
  std::size_t dimension() const noexcept { return schur_->dimension(); }
  const std::vector<StructuredEk> &ek() const noexcept { return ek_; }

  /// Unfactorized W.
  const CMatrix &coupling() const noexcept { return w_; }

  /// Solves W a = g with the stored LU factors.
  void solve_coupling(std::span<const cplx> g, std::span<cplx> a) const;

  /// x = (L + Pi)^{-1} c. c and x must not alias.
  void apply(std::span<const cplx> c, std::span<cplx> x) const;
  CVector apply(std::span<const cplx> c) const;

  /// out = Pi(X).
  void apply_pi(std::span<const cplx> x, std::span<cplx> out) const;

  double precompute_seconds() const noexcept { return precompute_seconds_; }

  /// Transient bytes held at peak during precompute (F buffers, workspaces, W).
  std::size_t precompute_peak_bytes() const noexcept { return peak_bytes_; }

  void save(const std::filesystem::path &path) const;
  static SmwPreconditioner load(const SchurAction &schur, CoarseGrid grid,
                                const std::filesystem::path &path);

private:
  struct Factorization;
  struct Bare
  {
  };

  SmwPreconditioner(Bare, const SchurAction &schur, CoarseGrid grid);
  void build_structured();
  void precompute(std::size_t workers);
  void factorize();

  const SchurAction *schur_;
  CoarseGrid grid_;
  std::vector<StructuredEk> ek_;
  CMatrix w_;
  std::unique_ptr<Factorization> lu_;
  double precompute_seconds_ = 0.0;
  std::size_t peak_bytes_ = 0;
};

}  // namespace wep

#endif  // WEP_SMW_PRECONDITIONER_HPP
