// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef WEP_TESTS_FIXTURES_HPP
#define WEP_TESTS_FIXTURES_HPP

#include <cmath>
#include <cstdint>

#include "wep/common.hpp"
#include "wep/core/discrete_problem.hpp"
#include "wep/core/geometry.hpp"
#include "wep/random.hpp"

namespace wep::fixture
{

inline constexpr cplx kSigma{-0.5, -0.4};

// Piecewise-random K on [0, 2] x [0, 1] with distinct exterior wavenumbers.
inline DiscreteProblem random_problem(std::size_t n_z, std::size_t n_x, std::uint64_t seed = 7)
{
  Rng rng(seed);
  RMatrix k(n_z, n_x);
  for (double &v : k.flat())
  {
    v = 1.0 + 30.0 * rng.uniform();
  }
  return DiscreteProblem(std::move(k), 0.0, 2.0, pi, std::sqrt(2.3) * pi);
}

// Two-region waveguide: background 2 pi^2 with an 8 pi^2 inset.
inline WaveguideGeometry two_region_geometry()
{
  WaveguideGeometry g;
  g.x_minus = 0.0;
  g.x_plus = 1.0;
  g.background_kappa2 = 2.0 * pi * pi;
  g.kappa_minus = std::sqrt(2.0) * pi;
  g.kappa_plus = std::sqrt(2.0) * pi;
  g.regions.push_back({0.3, 0.7, 0.25, 0.75, 8.0 * pi * pi, "inset"});
  return g;
}

inline CVector random_vector(std::size_t n, std::uint64_t seed)
{
  return Rng(seed).complex_vector(n);
}

}  // namespace wep::fixture

#endif  // WEP_TESTS_FIXTURES_HPP
