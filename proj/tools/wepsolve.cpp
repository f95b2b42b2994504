// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "wep/cli/commands.hpp"
#include "wep/cli/config.hpp"

namespace
{

struct RunFlags
{
  std::string config;
  std::vector<std::string> overrides;
  std::optional<std::size_t> workers;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
};

void add_run_flags(CLI::App *cmd, RunFlags &f, bool config_required = true)
{
  auto *c = cmd->add_option("--config", f.config, "YAML run configuration");
  if (config_required)
  {
    c->required()->check(CLI::ExistingFile);
  }
  cmd->add_option("--override", f.overrides, "section.key=value, repeatable")->take_all();
  cmd->add_option("--workers", f.workers, "worker threads (default: $WEP_WORKERS, then config)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--seed", f.seed, "seed for random right-hand sides and start vectors");
}

wep::cli::RunConfig resolve(const RunFlags &f)
{
  wep::cli::RunConfig c = wep::cli::load_config(f.config, f.overrides);
  if (f.workers)
  {
    c.workers = *f.workers;
  }
  else if (const char *env = std::getenv("WEP_WORKERS"); env && *env)
  {
    try
    {
      const long w = std::stol(env);
      if (w < 1)
      {
        throw std::invalid_argument(env);
      }
      c.workers = static_cast<std::size_t>(w);
    }
    catch (const std::exception &)
    {
      throw wep::Error(wep::ErrorCode::ConfigError,
                       std::string("WEP_WORKERS must be a positive integer, got \"") + env + "\"");
    }
  }
  if (f.out)
  {
    c.out_dir = *f.out;
  }
  if (f.seed)
  {
    c.seed = *f.seed;
  }
  wep::spectral::set_default_rigor(c.fft_rigor);
  return c;
}

}  // namespace

int main(int argc, char **argv)
{
  spdlog::set_default_logger(spdlog::stderr_color_mt("wepsolve"));
  spdlog::set_pattern("[%l] %v");

  CLI::App app{"Waveguide eigenvalue solver with SMW-preconditioned residual inverse iteration"};
  app.require_subcommand(1);
  std::string log_level = "info";
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error, off")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));

  RunFlags solve_f, bench_f, scaling_f, cache_f;
  bool no_solve = false;
  std::optional<std::string> cache_path;
  std::string inspect_path;

  auto *solve = app.add_subcommand("solve", "compute one eigenpair near sigma");
  add_run_flags(solve, solve_f);
  auto *bench = app.add_subcommand("precond-bench", "Schur GMRES error curves over coarse grids");
  add_run_flags(bench, bench_f);
  auto *scaling = app.add_subcommand("scaling", "timing table over grid sizes and coarse grids");
  add_run_flags(scaling, scaling_f);
  scaling->add_flag("--no-solve", no_solve, "time precompute and applications only");
  auto *cache = app.add_subcommand("cache", "coupling-matrix cache management");
  cache->require_subcommand(1);
  auto *build = cache->add_subcommand("build", "precompute and write the coupling matrix");
  add_run_flags(build, cache_f);
  build->add_option("--path", cache_path, "cache file (default: preconditioner.cache)");
  auto *inspect = cache->add_subcommand("inspect", "print a cache header");
  inspect->add_option("path", inspect_path, "cache file")->required();

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int code = app.exit(e);
    return code == 0 ? 0 : wep::cli::kExitConfig;
  }
  spdlog::set_level(spdlog::level::from_str(log_level));

  try
  {
    if (*solve)
    {
      return wep::cli::cmd_solve(resolve(solve_f), std::cout);
    }
    if (*bench)
    {
      return wep::cli::cmd_precond_bench(resolve(bench_f), std::cout);
    }
    if (*scaling)
    {
      wep::cli::ScalingOptions o;
      o.solve = !no_solve;
      return wep::cli::cmd_scaling(resolve(scaling_f), std::cout, o);
    }
    if (*build)
    {
      const wep::cli::RunConfig c = resolve(cache_f);
      std::filesystem::path p;
      if (cache_path)
      {
        p = *cache_path;
      }
      else if (c.cache)
      {
        p = *c.cache;
      }
      else
      {
        p = c.out_dir / (c.name + "_coupling.bin");
      }
      return wep::cli::cmd_cache_build(c, p, std::cout);
    }
    if (*inspect)
    {
      return wep::cli::cmd_cache_inspect(inspect_path, std::cout);
    }
  }
  catch (const wep::Error &e)
  {
    spdlog::error("{}", e.what());
    return wep::cli::exit_code_for(e.code());
  }
  catch (const std::exception &e)
  {
    spdlog::error("{}", e.what());
    return wep::cli::kExitConfig;
  }
  return wep::cli::kExitConfig;
}
