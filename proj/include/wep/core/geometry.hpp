// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef WEP_CORE_GEOMETRY_HPP
#define WEP_CORE_GEOMETRY_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "wep/common.hpp"

namespace wep
{

/// Axis-aligned rectangle [x0,x1] x [z0,z1] of constant squared wavenumber.
struct Region
{
  double x0 = 0.0, x1 = 0.0;
  double z0 = 0.0, z1 = 0.0;
  double kappa2 = 0.0;
  std::string label;

  bool contains(double x, double z) const noexcept;
};

/// Periodic waveguide cell [x_minus, x_plus] x [0, 1] with a piecewise
/// constant squared wavenumber and the exterior wavenumbers seen by the DtN maps.
struct WaveguideGeometry
{
  double x_minus = 0.0;
  double x_plus = 1.0;
  double background_kappa2 = 0.0;
  std::vector<Region> regions;
  double kappa_minus = 1.0;
  double kappa_plus = 1.0;

  /// Throws InvalidArgument on an empty domain, a region leaving it, or a
  /// non-positive exterior wavenumber.
  void validate() const;

  /// kappa^2 at (x, z). Later regions override earlier ones.
  double kappa2_at(double x, double z) const noexcept;
};

/// [K]_{k,l} = kappa^2(x_l, z_k) on the interior grid x_l = x_- + l h_x,
/// z_k = k h_z. Throws OddGridRequired for even n_z.
RMatrix sample_wavenumber(const WaveguideGeometry &geometry, std::size_t n_x, std::size_t n_z);

}  // namespace wep

#endif  // WEP_CORE_GEOMETRY_HPP
