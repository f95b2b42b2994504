// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef WEP_CORE_DTN_HPP
#define WEP_CORE_DTN_HPP

#include <cstddef>

#include "wep/common.hpp"

namespace wep
{

enum class Side
{
  Minus,
  Plus
};

/// Truncated DtN symbols for Fourier modes k = -p..p at one evaluation point.
/// Vectors are indexed by k + p.
struct DtnCoefficients
{
  cplx gamma;
  std::size_t p = 0;
  CVector beta_minus, beta_plus;
  CVector s_minus, s_plus;
  CVector s_prime_minus, s_prime_plus;
  // Modes where |Im beta| fell below kBranchTolerance and sign(0) := +1 was used.
  std::size_t branch_ambiguities = 0;

  static constexpr double kBranchTolerance = 1e-14;

  const CVector &s(Side side) const noexcept { return side == Side::Minus ? s_minus : s_plus; }
  const CVector &s_prime(Side side) const noexcept
  {
    return side == Side::Minus ? s_prime_minus : s_prime_plus;
  }
};

/// beta_k = (gamma + 2 pi i k)^2 + kappa^2,
/// s_k    = sign(Im beta_k) i sqrt(beta_k),
/// s'_k   = sign(Im beta_k) i (gamma + 2 pi i k) / sqrt(beta_k),
/// principal square root throughout. Logs a warning when any mode sits on the
/// branch cut.
DtnCoefficients dtn_coefficients(cplx gamma, std::size_t p, double kappa_minus,
                                 double kappa_plus);

}  // namespace wep

#endif  // WEP_CORE_DTN_HPP
