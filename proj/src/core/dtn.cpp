// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "wep/core/dtn.hpp"

#include <cmath>

#include <spdlog/spdlog.h>

namespace wep
{

DtnCoefficients dtn_coefficients(cplx gamma, std::size_t p, double kappa_minus,
                                 double kappa_plus)
{
  DtnCoefficients c;
  c.gamma = gamma;
  c.p = p;
  const std::size_t n = 2 * p + 1;
  c.beta_minus.resize(n);
  c.beta_plus.resize(n);
  c.s_minus.resize(n);
  c.s_plus.resize(n);
  c.s_prime_minus.resize(n);
  c.s_prime_plus.resize(n);

  auto fill = [&](double kappa, CVector &beta, CVector &s, CVector &sp)
  {
    for (std::size_t idx = 0; idx < n; ++idx)
    {
      const double k = static_cast<double>(idx) - static_cast<double>(p);
      const cplx shifted = gamma + cplx{0.0, 2.0 * pi * k};
      const cplx b = shifted * shifted + kappa * kappa;
      if (std::abs(b.imag()) < DtnCoefficients::kBranchTolerance)
      {
        ++c.branch_ambiguities;
      }
      const double sign = b.imag() < 0.0 ? -1.0 : 1.0;
      const cplx root = std::sqrt(b);
      beta[idx] = b;
      s[idx] = sign * imag_unit * root;
      sp[idx] = sign * imag_unit * shifted / root;
    }
  };
  fill(kappa_minus, c.beta_minus, c.s_minus, c.s_prime_minus);
  fill(kappa_plus, c.beta_plus, c.s_plus, c.s_prime_plus);

  if (c.branch_ambiguities > 0)
  {
    spdlog::warn("DtN: {} mode(s) with |Im beta| < {:g} at gamma = {}{:+}i; using sign(0) = +1",
                 c.branch_ambiguities, DtnCoefficients::kBranchTolerance, gamma.real(),
                 gamma.imag());
  }
  return c;
}

}  // namespace wep
