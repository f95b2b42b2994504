// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "wep/core/geometry.hpp"

#include <cmath>

namespace wep
{

namespace
{

// Edge tolerance so grid nodes computed as x_- + k h_x land on region edges
// that are aligned with the grid.
constexpr double kEdgeTolerance = 1e-12;

}  // namespace

bool Region::contains(double x, double z) const noexcept
{
  return x >= x0 - kEdgeTolerance && x <= x1 + kEdgeTolerance && z >= z0 - kEdgeTolerance &&
         z <= z1 + kEdgeTolerance;
}

void WaveguideGeometry::validate() const
{
  require(std::isfinite(x_minus) && std::isfinite(x_plus) && x_minus < x_plus,
          ErrorCode::InvalidArgument, "domain needs x_minus < x_plus");
  require(kappa_minus > 0.0 && kappa_plus > 0.0, ErrorCode::InvalidArgument,
          "exterior wavenumbers must be real and positive");
  require(background_kappa2 >= 0.0, ErrorCode::InvalidArgument,
          "background kappa^2 must be nonnegative");
  for (std::size_t r = 0; r < regions.size(); ++r)
  {
    const Region &reg = regions[r];
    const std::string name = reg.label.empty() ? "region " + std::to_string(r) : reg.label;
    require(reg.x0 <= reg.x1 && reg.z0 <= reg.z1, ErrorCode::InvalidArgument,
            name + " has inverted bounds");
    require(reg.x0 >= x_minus - kEdgeTolerance && reg.x1 <= x_plus + kEdgeTolerance &&
                reg.z0 >= -kEdgeTolerance && reg.z1 <= 1.0 + kEdgeTolerance,
            ErrorCode::InvalidArgument, name + " leaves the domain");
    require(reg.kappa2 >= 0.0, ErrorCode::InvalidArgument, name + " has negative kappa^2");
  }
}

double WaveguideGeometry::kappa2_at(double x, double z) const noexcept
{
  double value = background_kappa2;
  for (const Region &reg : regions)
  {
    if (reg.contains(x, z))
    {
      value = reg.kappa2;
    }
  }
  return value;
}

RMatrix sample_wavenumber(const WaveguideGeometry &geometry, std::size_t n_x, std::size_t n_z)
{
  require(n_z % 2 == 1, ErrorCode::OddGridRequired,
          "n_z = " + std::to_string(n_z) + " must be odd (n_z = 2p + 1)");
  require(n_x >= 1, ErrorCode::InvalidArgument, "n_x must be positive");
  geometry.validate();
  const double h_x = (geometry.x_plus - geometry.x_minus) / static_cast<double>(n_x + 1);
  const double h_z = 1.0 / static_cast<double>(n_z);
  RMatrix k(n_z, n_x);
  for (std::size_t l = 0; l < n_x; ++l)
  {
    const double x = geometry.x_minus + static_cast<double>(l + 1) * h_x;
    for (std::size_t row = 0; row < n_z; ++row)
    {
      const double z = static_cast<double>(row + 1) * h_z;
      k(row, l) = geometry.kappa2_at(x, z);
    }
  }
  return k;
}

}  // namespace wep
