// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef WEP_RANDOM_HPP
#define WEP_RANDOM_HPP

#include <cstdint>
#include <random>

#include "wep/common.hpp"

namespace wep
{

/// mt19937_64 with a platform-independent double mapping: the distributions in
/// <random> are implementation-defined, this is not.
class Rng
{
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [-1, 1) for both parts.
  cplx symmetric_complex()
  {
    const double re = 2.0 * uniform() - 1.0;
    const double im = 2.0 * uniform() - 1.0;
    return {re, im};
  }

  CVector complex_vector(std::size_t n)
  {
    CVector v(n);
    for (cplx &x : v)
    {
      x = symmetric_complex();
    }
    return v;
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace wep

#endif  // WEP_RANDOM_HPP
