// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "wep/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "wep/cli/csv.hpp"
#include "wep/random.hpp"
#include "wep/simd/kernels.hpp"

namespace wep::cli
{

namespace
{

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0)
{
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string complex_text(cplx z)
{
  return fmt::format("{:.17g}{:+.17g}i", z.real(), z.imag());
}

Metadata base_metadata(const RunConfig &c, std::size_t n_z, std::size_t n_x)
{
  return {{"name", c.name},
          {"seed", std::to_string(c.seed)},
          {"n_z", std::to_string(n_z)},
          {"n_x", std::to_string(n_x)},
          {"sigma", complex_text(c.sigma)},
          {"method", to_string(c.method)}};
}

std::filesystem::path artifact(const RunConfig &c, const std::string &suffix)
{
  return c.out_dir / (c.name + "_" + suffix);
}

// Relative error of the current iterate against a reference solution.
double relative_distance(std::span<const cplx> x, std::span<const cplx> ref, double ref_norm)
{
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
  {
    s += std::norm(x[i] - ref[i]);
  }
  return std::sqrt(s) / ref_norm;
}

}  // namespace

int exit_code_for(ErrorCode code) noexcept
{
  switch (code)
  {
    case ErrorCode::SpectrumCollision:
    case ErrorCode::SingularDtnMode:
    case ErrorCode::RightHalfPlane:
    case ErrorCode::SingularCoupling:
    case ErrorCode::LeftHalfPlaneViolation:
    case ErrorCode::NewtonStall:
      return kExitNumerical;
    default:
      return kExitConfig;
  }
}

std::size_t n_x_for(const RunConfig &config, std::size_t n_z)
{
  const long offset = static_cast<long>(config.n_x) - static_cast<long>(config.n_z);
  const long nx = static_cast<long>(n_z) + offset;
  require(nx >= 3, ErrorCode::ConfigError, "n_x would drop below 3 for n_z = " + std::to_string(n_z));
  return static_cast<std::size_t>(nx);
}

krylov::KrylovOptions krylov_options(const RunConfig &config)
{
  krylov::KrylovOptions o;
  o.tol = config.tol;
  o.restart = config.restart;
  o.max_iterations = config.max_iterations;
  return o;
}

Setup make_setup(const RunConfig &config, std::size_t n_z, std::size_t coarse_z,
                 CoarseLayout layout, const std::optional<std::filesystem::path> &cache)
{
  Setup s;
  const std::size_t n_x = n_x_for(config, n_z);
  s.problem = std::make_unique<DiscreteProblem>(config.geometry, n_x, n_z);
  s.schur = std::make_unique<SchurAction>(*s.problem, config.sigma, config.kbar());
  CoarseGrid grid = CoarseGrid::build(n_x, n_z, coarse_z, layout);
  if (cache && std::filesystem::exists(*cache))
  {
    s.precond = std::make_unique<SmwPreconditioner>(
        SmwPreconditioner::load(*s.schur, std::move(grid), *cache));
    s.cache_hit = true;
    spdlog::info("coupling matrix loaded from {}", cache->string());
  }
  else
  {
    s.precond = std::make_unique<SmwPreconditioner>(*s.schur, std::move(grid), config.workers);
    spdlog::info("precomputed {}x{} coupling matrix in {:.2f} s", s.precond->rank(),
                 s.precond->rank(), s.precond->precompute_seconds());
    if (cache)
    {
      if (cache->has_parent_path())
      {
        std::filesystem::create_directories(cache->parent_path());
      }
      s.precond->save(*cache);
    }
  }
  return s;
}

SolveOutcome run_solve(const RunConfig &config)
{
  const auto t0 = Clock::now();
  SolveOutcome out;
  Setup s = make_setup(config, config.n_z, config.coarse_z, config.layout, config.cache);
  out.cache_hit = s.cache_hit;
  out.precompute_seconds = s.cache_hit ? 0.0 : s.precond->precompute_seconds();

  const SchurShiftSolver solver(*s.schur, s.precond.get(), config.method, krylov_options(config));
  const WaveguideNep op(*s.problem);
  const CVector v0 = config.v0 == StartVector::Ones ? default_start_vector(*s.schur)
                                                    : random_start_vector(*s.schur, config.seed);
  out.result = resinv(op, solver, config.start_gamma(), v0, config.resinv);
  out.total_seconds = since(t0);

  const std::size_t nz = s.problem->n_z(), nx = s.problem->n_x();
  Metadata meta = base_metadata(config, nz, nx);
  meta.emplace_back("coarse_z", std::to_string(config.coarse_z));
  meta.emplace_back("layout", to_string(config.layout));
  meta.emplace_back("v0", config.v0 == StartVector::Ones ? "ones" : "random");

  out.eigenpair_csv = artifact(config, "eigenpair.csv");
  {
    CsvWriter w(out.eigenpair_csv, meta, {"kind", "index", "re", "im"});
    w << "gamma" << std::size_t{0} << out.result.gamma.real() << out.result.gamma.imag();
    w.end_row();
    for (std::size_t i = 0; i < out.result.v.size(); ++i)
    {
      w << "v" << i << out.result.v[i].real() << out.result.v[i].imag();
      w.end_row();
    }
  }

  out.history_csv = artifact(config, "history.csv");
  {
    CsvWriter w(out.history_csv, meta,
                {"iteration", "gamma_re", "gamma_im", "residual", "gamma_error", "newton_iterations",
                 "inner_iterations", "inner_tolerance", "inner_residual", "seconds",
                 "inner_seconds"});
    for (const OuterRecord &h : out.result.history)
    {
      w << h.iteration << h.gamma.real() << h.gamma.imag() << h.residual << h.gamma_error
        << h.newton_iterations << h.inner_iterations << h.inner_tolerance << h.inner_residual
        << h.seconds << h.inner_seconds;
      w.end_row();
    }
  }

  out.summary = artifact(config, "summary.txt");
  std::ofstream sum(out.summary);
  if (!sum)
  {
    throw Error(ErrorCode::IoError, "cannot write " + out.summary.string());
  }
  const EigResult &r = out.result;
  sum << "run            " << config.name << '\n'
      << "seed           " << config.seed << '\n'
      << "grid           n_z = " << nz << ", n_x = " << nx << ", unknowns = " << s.problem->size()
      << '\n'
      << "coarse grid    N_z = " << s.precond->grid().cells_z()
      << ", N_x = " << s.precond->grid().cells_x() << " (" << to_string(config.layout) << ")\n"
      << "sigma          " << fmt::format("{:.6f}{:+.6f}i", config.sigma.real(), config.sigma.imag())
      << '\n'
      << "status         " << (r.converged ? "converged" : "no convergence") << '\n'
      << "gamma          " << fmt::format("{:.12f}{:+.12f}i", r.gamma.real(), r.gamma.imag()) << '\n'
      << "|gamma-sigma|  " << fmt::format("{:.6g}", std::abs(r.gamma - config.sigma)) << '\n'
      << "residual       " << fmt::format("{:.3e}", r.final_residual()) << '\n'
      << "outer          " << r.history.size() << " iterations, convergence factor "
      << fmt::format("{:.4f}", convergence_factor(r.history)) << '\n'
      << "inner          " << r.total_inner_iterations() << " iterations (" << r.warmup_inner_iterations
      << " in warm-up)\n"
      << "precompute     " << fmt::format("{:.3f}", out.precompute_seconds) << " s"
      << (out.cache_hit ? " (cache)" : "") << '\n'
      << "total          " << fmt::format("{:.3f}", out.total_seconds) << " s\n";
  return out;
}

BenchOutcome run_precond_bench(const RunConfig &config)
{
  BenchOutcome out;
  const std::size_t nz = config.n_z, nx = n_x_for(config, nz);
  const std::size_t ni = nz * nx;
  const CVector c = Rng(config.seed).complex_vector(ni);

  std::vector<std::size_t> sizes = config.bench_coarse_z;
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  if (sizes.empty())
  {
    return out;
  }

  auto options = krylov_options(config);
  options.tol = config.reference_tol;

  CVector ref;
  {
    Setup s = make_setup(config, nz, sizes.back(), CoarseLayout::Refined);
    const SchurShiftSolver solver(*s.schur, s.precond.get(), config.method, options);
    const auto rep = solver.solve_interior(c, config.reference_tol);
    ref = rep.solution;
    out.reference_iterations = rep.iterations;
    out.reference_residual = rep.residual_history.back();
    if (!rep.converged)
    {
      spdlog::warn("reference solve stopped ({}) at relative residual {:.3e}",
                   krylov::to_string(rep.status), out.reference_residual);
    }
  }
  const double ref_norm = simd::norm(ref);

  std::vector<CoarseLayout> layouts{CoarseLayout::Refined};
  if (config.bench_uniform)
  {
    layouts.push_back(CoarseLayout::Uniform);
  }
  for (CoarseLayout layout : layouts)
  {
    for (std::size_t cz : sizes)
    {
      BenchCurve curve;
      curve.layout = layout;
      curve.coarse_z = cz;
      Setup s = make_setup(config, nz, cz, layout);
      curve.precompute_seconds = s.precond->precompute_seconds();
      auto o = options;
      o.monitor = [&](std::size_t, std::span<const cplx> x)
      { curve.error.push_back(relative_distance(x, ref, ref_norm)); };
      const SchurShiftSolver solver(*s.schur, s.precond.get(), config.method, o);
      const auto rep = solver.solve_interior(c, config.reference_tol);
      curve.solve_seconds = rep.seconds;
      curve.residual.assign(rep.residual_history.begin() + 1, rep.residual_history.end());
      curve.residual.resize(curve.error.size(), curve.residual.empty() ? 0.0 : curve.residual.back());
      for (std::size_t k = 0; k < curve.error.size(); ++k)
      {
        if (curve.error[k] <= config.tol)
        {
          curve.iterations_to_tol = k + 1;
          break;
        }
      }
      spdlog::info("bench {} N_z = {}: {} iterations to {:g}", to_string(layout), cz,
                   curve.iterations_to_tol ? std::to_string(*curve.iterations_to_tol) : "-",
                   config.tol);
      out.curves.push_back(std::move(curve));
    }
  }

  Metadata meta = base_metadata(config, nz, nx);
  meta.emplace_back("reference_tol", format_double(config.reference_tol));
  meta.emplace_back("reference_iterations", std::to_string(out.reference_iterations));
  meta.emplace_back("tol", format_double(config.tol));
  out.curves_csv = artifact(config, "bench_curves.csv");
  {
    CsvWriter w(out.curves_csv, meta,
                {"layout", "coarse_z", "iteration", "relative_error", "relative_residual"});
    for (const BenchCurve &cv : out.curves)
    {
      for (std::size_t k = 0; k < cv.error.size(); ++k)
      {
        w << to_string(cv.layout) << cv.coarse_z << (k + 1) << cv.error[k] << cv.residual[k];
        w.end_row();
      }
    }
  }
  out.summary_csv = artifact(config, "bench_summary.csv");
  {
    CsvWriter w(out.summary_csv, meta,
                {"layout", "coarse_z", "iterations_to_tol", "final_error", "precompute_seconds",
                 "solve_seconds"});
    for (const BenchCurve &cv : out.curves)
    {
      w << to_string(cv.layout) << cv.coarse_z
        << (cv.iterations_to_tol ? std::to_string(*cv.iterations_to_tol) : std::string("none"))
        << (cv.error.empty() ? 0.0 : cv.error.back()) << cv.precompute_seconds << cv.solve_seconds;
      w.end_row();
    }
  }
  return out;
}

std::vector<ScalingRow> run_scaling(const RunConfig &config, const ScalingOptions &options)
{
  std::vector<ScalingRow> rows;
  for (std::size_t nz : config.scaling_n_z)
  {
    for (std::size_t cz : config.scaling_coarse_z)
    {
      ScalingRow row;
      row.n_z = nz;
      row.n_x = n_x_for(config, nz);
      row.coarse_z = cz;
      const std::size_t ni = row.n_x * nz;
      row.unknowns = ni + 2 * nz;

      const CoarseGrid probe = CoarseGrid::build(row.n_x, nz, cz, config.layout);
      const double n_cells = static_cast<double>(probe.size());
      const double bytes_precompute =
          static_cast<double>(config.workers) *
              (static_cast<double>(ni) + static_cast<double>(nz) * 2.0 * (row.n_x + 1.0)) * 16.0 +
          n_cells * n_cells * 16.0;
      const double bytes_krylov = (static_cast<double>(config.restart) + 6.0) * ni * 16.0;
      const double gib = (bytes_precompute + bytes_krylov) / (1024.0 * 1024.0 * 1024.0);
      if (gib > config.max_gigabytes)
      {
        row.skipped = true;
        row.note = fmt::format("memory estimate {:.2f} GiB over guard {:.2f}", gib, config.max_gigabytes);
        spdlog::warn("scaling n_z = {}, N_z = {}: skipped, {}", nz, cz, row.note);
        rows.push_back(row);
        continue;
      }

      DiscreteProblem problem(config.geometry, row.n_x, nz);
      SchurAction schur(problem, config.sigma, config.kbar());
      {
        // Time guard from a measured Sylvester solve.
        CVector x = Rng(config.seed).complex_vector(ni), y(ni);
        const auto t0 = Clock::now();
        schur.sylvester().solve(x, y);
        const double per_solve = since(t0);
        const double estimate = per_solve * n_cells / static_cast<double>(config.workers);
        if (estimate > config.max_seconds)
        {
          row.skipped = true;
          row.note = fmt::format("precompute estimate {:.0f} s over guard {:.0f} s", estimate,
                                 config.max_seconds);
          spdlog::warn("scaling n_z = {}, N_z = {}: skipped, {}", nz, cz, row.note);
          rows.push_back(row);
          continue;
        }
      }
      const auto t_total = Clock::now();
      SmwPreconditioner precond(schur, probe, config.workers);
      row.precompute_seconds = precond.precompute_seconds();

      {
        const CVector c = Rng(config.seed).complex_vector(ni);
        CVector x(ni);
        precond.apply(c, x);  // warm
        const std::size_t reps = std::max<std::size_t>(1, config.scaling_applications);
        const auto t0 = Clock::now();
        for (std::size_t k = 0; k < reps; ++k)
        {
          precond.apply(c, x);
        }
        row.apply_seconds = since(t0) / static_cast<double>(reps);
      }

      if (options.solve)
      {
        const SchurShiftSolver solver(schur, &precond, config.method, krylov_options(config));
        const WaveguideNep op(problem);
        const CVector v0 = config.v0 == StartVector::Ones ? default_start_vector(schur)
                                                          : random_start_vector(schur, config.seed);
        const EigResult r = resinv(op, solver, config.start_gamma(), v0, config.resinv);
        row.inner_iterations = r.total_inner_iterations() + r.warmup_inner_iterations;
        row.outer_iterations = r.history.size();
        row.converged = r.converged;
      }
      row.total_seconds = since(t_total);
      row.precompute_fraction = row.total_seconds > 0.0 ? row.precompute_seconds / row.total_seconds : 0.0;
      spdlog::info("scaling n_z = {}, N_z = {}: precompute {:.2f} s, apply {:.4f} s, total {:.2f} s",
                   nz, cz, row.precompute_seconds, row.apply_seconds, row.total_seconds);
      rows.push_back(row);
    }
  }

  Metadata meta = base_metadata(config, config.n_z, config.n_x);
  meta.emplace_back("workers", std::to_string(config.workers));
  meta.emplace_back("layout", to_string(config.layout));
  CsvWriter w(artifact(config, "scaling.csv"), meta,
              {"n_z", "n_x", "coarse_z", "unknowns", "skipped", "precompute_seconds",
               "apply_seconds", "total_seconds", "precompute_fraction", "outer_iterations",
               "inner_iterations", "converged", "note"});
  for (const ScalingRow &r : rows)
  {
    std::string note = r.note;
    std::replace(note.begin(), note.end(), ',', ';');
    w << r.n_z << r.n_x << r.coarse_z << r.unknowns << std::size_t{r.skipped ? 1u : 0u}
      << r.precompute_seconds << r.apply_seconds << r.total_seconds << r.precompute_fraction
      << r.outer_iterations << r.inner_iterations << std::size_t{r.converged ? 1u : 0u} << note;
    w.end_row();
  }
  return rows;
}

CacheHeader run_cache_build(const RunConfig &config, const std::filesystem::path &path)
{
  if (path.has_parent_path())
  {
    std::filesystem::create_directories(path.parent_path());
  }
  Setup s = make_setup(config, config.n_z, config.coarse_z, config.layout);
  s.precond->save(path);
  return inspect_coupling(path);
}

std::string describe(const CacheHeader &h)
{
  std::ostringstream o;
  o << "version        " << static_cast<int>(h.version) << '\n'
    << "layout         " << to_string(h.layout) << '\n'
    << "n_x            " << h.n_x << '\n'
    << "n_z            " << h.n_z << '\n'
    << "N_x            " << h.cells_x << '\n'
    << "N_z            " << h.cells_z << '\n'
    << "sigma          " << complex_text(h.sigma) << '\n'
    << "kbar           " << format_double(h.kbar) << '\n'
    << "geometry hash  " << fmt::format("{:016x}", h.geometry_hash) << '\n';
  return o.str();
}

int cmd_solve(const RunConfig &config, std::ostream &out)
{
  const SolveOutcome o = run_solve(config);
  std::ifstream in(o.summary);
  out << in.rdbuf();
  return o.result.converged ? kExitOk : kExitNumerical;
}

int cmd_precond_bench(const RunConfig &config, std::ostream &out)
{
  const BenchOutcome o = run_precond_bench(config);
  out << fmt::format("reference: {} iterations, relative residual {:.3e}\n", o.reference_iterations,
                     o.reference_residual);
  out << fmt::format("{:<8} {:>5} {:>10} {:>12} {:>12}\n", "layout", "N_z", "iters", "precomp s",
                     "solve s");
  bool all = true;
  for (const BenchCurve &c : o.curves)
  {
    all = all && c.iterations_to_tol.has_value();
    out << fmt::format("{:<8} {:>5} {:>10} {:>12.3f} {:>12.3f}\n", to_string(c.layout), c.coarse_z,
                       c.iterations_to_tol ? std::to_string(*c.iterations_to_tol) : "none",
                       c.precompute_seconds, c.solve_seconds);
  }
  return all ? kExitOk : kExitNumerical;
}

int cmd_scaling(const RunConfig &config, std::ostream &out, const ScalingOptions &options)
{
  const auto rows = run_scaling(config, options);
  out << fmt::format("{:>6} {:>5} {:>10} {:>10} {:>10} {:>10} {:>7} {:>7}\n", "n_z", "N_z",
                     "unknowns", "precomp s", "apply s", "total s", "frac", "inner");
  for (const ScalingRow &r : rows)
  {
    if (r.skipped)
    {
      out << fmt::format("{:>6} {:>5} {:>10}  skipped: {}\n", r.n_z, r.coarse_z, r.unknowns, r.note);
      continue;
    }
    out << fmt::format("{:>6} {:>5} {:>10} {:>10.2f} {:>10.4f} {:>10.2f} {:>7.3f} {:>7}\n", r.n_z,
                       r.coarse_z, r.unknowns, r.precompute_seconds, r.apply_seconds,
                       r.total_seconds, r.precompute_fraction, r.inner_iterations);
  }
  return kExitOk;
}

int cmd_cache_build(const RunConfig &config, const std::filesystem::path &path, std::ostream &out)
{
  out << describe(run_cache_build(config, path));
  return kExitOk;
}

int cmd_cache_inspect(const std::filesystem::path &path, std::ostream &out)
{
  out << describe(inspect_coupling(path));
  return kExitOk;
}

}  // namespace wep::cli
