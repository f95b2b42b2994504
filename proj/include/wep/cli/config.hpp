// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef WEP_CLI_CONFIG_HPP
#define WEP_CLI_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wep/common.hpp"
#include "wep/core/geometry.hpp"
#include "wep/resinv/resinv.hpp"
#include "wep/resinv/wep_solver.hpp"
#include "wep/smw/coarse_grid.hpp"
#include "wep/spectral/fft_plan.hpp"

namespace wep::cli
{

enum class KbarMode
{
  Mean,
  Value
};

enum class StartVector
{
  Ones,
  Random
};

struct RunConfig
{
  std::string name = "run";
  WaveguideGeometry geometry;

  std::size_t n_z = 0;
  std::size_t n_x = 0;  // n_z + 4 unless given

  std::size_t coarse_z = 21;
  CoarseLayout layout = CoarseLayout::Refined;
  KbarMode kbar_mode = KbarMode::Mean;
  double kbar_value = 0.0;
  std::optional<std::filesystem::path> cache;

  KrylovMethod method = KrylovMethod::Gmres;
  double tol = 1e-10;
  std::size_t restart = 100;
  std::size_t max_iterations = 1000;

  cplx sigma{-0.5, -0.4};
  std::optional<cplx> gamma0;  // sigma unless given
  StartVector v0 = StartVector::Ones;
  ResinvOptions resinv;

  // precond-bench
  std::vector<std::size_t> bench_coarse_z{15, 21, 35};
  bool bench_uniform = true;
  double reference_tol = 1e-13;

  // scaling
  std::vector<std::size_t> scaling_n_z{315, 629, 1259};
  std::vector<std::size_t> scaling_coarse_z{15, 21, 35};
  std::size_t scaling_applications = 20;
  double max_seconds = 600.0;
  double max_gigabytes = 3.0;

  std::filesystem::path out_dir = "out";
  std::size_t workers = 1;
  std::uint64_t seed = 1;
  // Estimated FFT plans keep reruns bit-identical; measured plans are faster.
  spectral::PlanRigor fft_rigor = spectral::PlanRigor::Estimate;

  std::optional<double> kbar() const
  {
    return kbar_mode == KbarMode::Mean ? std::nullopt : std::optional<double>(kbar_value);
  }
  cplx start_gamma() const { return gamma0.value_or(sigma); }
};

/// Parses YAML text into a RunConfig. Each override is "section.key=value" with
/// a YAML value, applied before validation. Throws ConfigError (unknown keys,
/// bad values, even n_z, N_z > n_z, Re(sigma) >= 0).
RunConfig parse_config(const std::string &yaml, const std::vector<std::string> &overrides = {});

/// parse_config on a file; IoError if it cannot be read. Relative cache and
/// output paths are kept as given.
RunConfig load_config(const std::filesystem::path &path,
                      const std::vector<std::string> &overrides = {});

/// Throws ConfigError on the first violated invariant.
void validate(const RunConfig &config);

}  // namespace wep::cli

#endif  // WEP_CLI_CONFIG_HPP
