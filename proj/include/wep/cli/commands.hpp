// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef WEP_CLI_COMMANDS_HPP
#define WEP_CLI_COMMANDS_HPP

#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wep/cli/config.hpp"
#include "wep/core/discrete_problem.hpp"
#include "wep/resinv/wep_solver.hpp"
#include "wep/schur/schur_action.hpp"
#include "wep/smw/coupling_cache.hpp"
#include "wep/smw/preconditioner.hpp"

namespace wep::cli
{

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitConfig = 2;

/// 2 for configuration, IO and cache errors, 1 for numerical failures.
int exit_code_for(ErrorCode code) noexcept;

/// Problem, Schur operator at sigma and SMW preconditioner for one grid.
struct Setup
{
  std::unique_ptr<DiscreteProblem> problem;
  std::unique_ptr<SchurAction> schur;
  std::unique_ptr<SmwPreconditioner> precond;
  bool cache_hit = false;
};

/// Builds the setup for n_z (n_x from the config ratio) and the given coarse
/// grid. With a cache path: loads it if present, otherwise precomputes and saves.
Setup make_setup(const RunConfig &config, std::size_t n_z, std::size_t coarse_z,
                 CoarseLayout layout, const std::optional<std::filesystem::path> &cache = {});

/// n_x used for n_z: the configured offset n_x - n_z carried over.
std::size_t n_x_for(const RunConfig &config, std::size_t n_z);

krylov::KrylovOptions krylov_options(const RunConfig &config);

struct SolveOutcome
{
  EigResult result;
  double precompute_seconds = 0.0;
  double total_seconds = 0.0;
  bool cache_hit = false;
  std::filesystem::path eigenpair_csv, history_csv, summary;
};

/// Resinv end to end; writes <name>_eigenpair.csv, <name>_history.csv and
/// <name>_summary.txt under config.out_dir.
SolveOutcome run_solve(const RunConfig &config);

struct BenchCurve
{
  CoarseLayout layout = CoarseLayout::Refined;
  std::size_t coarse_z = 0;
  std::vector<double> error;     // relative error against the reference, per iteration
  std::vector<double> residual;  // relative residual, per iteration
  std::optional<std::size_t> iterations_to_tol;
  double precompute_seconds = 0.0;
  double solve_seconds = 0.0;
};

struct BenchOutcome
{
  std::vector<BenchCurve> curves;
  std::size_t reference_iterations = 0;
  double reference_residual = 0.0;
  std::filesystem::path curves_csv, summary_csv;
};

/// GMRES/BiCGStab on S(sigma) x = c for a seeded random c and every coarse_z in
/// config.bench_coarse_z (plus the uniform layout if enabled). The reference is
/// the same solver at reference_tol with the finest refined coarse grid.
BenchOutcome run_precond_bench(const RunConfig &config);

struct ScalingRow
{
  std::size_t n_z = 0, n_x = 0, coarse_z = 0, unknowns = 0;
  bool skipped = false;
  std::string note;
  double precompute_seconds = 0.0;
  double apply_seconds = 0.0;  // mean per preconditioner application
  double total_seconds = 0.0;  // precompute plus resinv
  double precompute_fraction = 0.0;
  std::size_t inner_iterations = 0;
  std::size_t outer_iterations = 0;
  bool converged = false;
};

struct ScalingOptions
{
  bool solve = true;  // run resinv per cell; otherwise time applications only
};

/// One row per (n_z, coarse_z); rows over the time or memory guard are skipped
/// with a note. Writes <name>_scaling.csv.
std::vector<ScalingRow> run_scaling(const RunConfig &config, const ScalingOptions &options = {});

/// cache build: precompute W for the configured grid and write it to path.
CacheHeader run_cache_build(const RunConfig &config, const std::filesystem::path &path);

int cmd_solve(const RunConfig &config, std::ostream &out);
int cmd_precond_bench(const RunConfig &config, std::ostream &out);
int cmd_scaling(const RunConfig &config, std::ostream &out, const ScalingOptions &options = {});
int cmd_cache_build(const RunConfig &config, const std::filesystem::path &path, std::ostream &out);
int cmd_cache_inspect(const std::filesystem::path &path, std::ostream &out);

/// Human-readable header dump used by cache inspect.
std::string describe(const CacheHeader &header);

}  // namespace wep::cli

#endif  // WEP_CLI_COMMANDS_HPP
