// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "wep/cli/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "wep/cli/expression.hpp"

namespace wep::cli
{

namespace
{

[[noreturn]] void config_error(const std::string &what)
{
  throw Error(ErrorCode::ConfigError, what);
}

std::string scalar(const YAML::Node &n, const std::string &key)
{
  if (!n.IsScalar())
  {
    config_error(key + " must be a scalar");
  }
  return n.Scalar();
}

double real_value(const YAML::Node &n, const std::string &key)
{
  try
  {
    return evaluate_real(scalar(n, key));
  }
  catch (const Error &e)
  {
    config_error(key + ": " + e.what());
  }
}

cplx complex_value(const YAML::Node &n, const std::string &key)
{
  if (n.IsSequence())
  {
    if (n.size() != 2)
    {
      config_error(key + " as a list must be [re, im]");
    }
    return {real_value(n[0], key + "[0]"), real_value(n[1], key + "[1]")};
  }
  try
  {
    return evaluate_complex(scalar(n, key));
  }
  catch (const Error &e)
  {
    config_error(key + ": " + e.what());
  }
}

std::uint64_t unsigned_value(const YAML::Node &n, const std::string &key)
{
  const std::string s = scalar(n, key);
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size())
  {
    config_error(key + " must be a non-negative integer, got \"" + s + "\"");
  }
  return v;
}

bool bool_value(const YAML::Node &n, const std::string &key)
{
  const std::string s = scalar(n, key);
  if (s == "true" || s == "yes" || s == "on")
  {
    return true;
  }
  if (s == "false" || s == "no" || s == "off")
  {
    return false;
  }
  config_error(key + " must be true or false, got \"" + s + "\"");
}

std::vector<std::size_t> size_list(const YAML::Node &n, const std::string &key)
{
  std::vector<std::size_t> out;
  if (n.IsScalar())
  {
    out.push_back(unsigned_value(n, key));
    return out;
  }
  if (!n.IsSequence())
  {
    config_error(key + " must be a list of integers");
  }
  for (std::size_t i = 0; i < n.size(); ++i)
  {
    out.push_back(unsigned_value(n[i], key + "[" + std::to_string(i) + "]"));
  }
  return out;
}

// Visits every key of a mapping section, rejecting anything not listed.
template <class F>
void each_key(const YAML::Node &section, const std::string &name,
              const std::set<std::string> &allowed, F &&f)
{
  if (!section)
  {
    return;
  }
  if (!section.IsMap())
  {
    config_error("section '" + name + "' must be a mapping");
  }
  for (const auto &kv : section)
  {
    const std::string key = kv.first.as<std::string>();
    if (!allowed.count(key))
    {
      config_error("unknown key '" + name + "." + key + "'");
    }
    f(key, kv.second, name + "." + key);
  }
}

Region parse_region(const YAML::Node &n, const std::string &where)
{
  Region r;
  bool have_x = false, have_z = false, have_k = false;
  each_key(n, where, {"x", "z", "kappa2", "label"},
           [&](const std::string &key, const YAML::Node &v, const std::string &path)
           {
             if (key == "x" || key == "z")
             {
               if (!v.IsSequence() || v.size() != 2)
               {
                 config_error(path + " must be [lo, hi]");
               }
               const double lo = real_value(v[0], path), hi = real_value(v[1], path);
               (key == "x" ? r.x0 : r.z0) = lo;
               (key == "x" ? r.x1 : r.z1) = hi;
               (key == "x" ? have_x : have_z) = true;
             }
             else if (key == "kappa2")
             {
               r.kappa2 = real_value(v, path);
               have_k = true;
             }
             else
             {
               r.label = scalar(v, path);
             }
           });
  if (!have_x || !have_z || !have_k)
  {
    config_error(where + " needs x, z and kappa2");
  }
  return r;
}

void set_path(YAML::Node root, const std::string &assignment)
{
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
  {
    config_error("override \"" + assignment + "\" is not section.key=value");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string value = assignment.substr(eq + 1);
  std::vector<std::string> parts;
  std::stringstream ss(key);
  for (std::string p; std::getline(ss, p, '.');)
  {
    if (p.empty())
    {
      config_error("override key \"" + key + "\" has an empty component");
    }
    parts.push_back(p);
  }
  if (parts.size() < 2)
  {
    config_error("override key \"" + key + "\" must name section.key");
  }
  YAML::Node parsed;
  try
  {
    parsed = YAML::Load(value);
  }
  catch (const YAML::Exception &e)
  {
    config_error("override \"" + assignment + "\": " + e.what());
  }
  // yaml-cpp nodes are handles; walk with reset() so the root is not rebound.
  std::vector<YAML::Node> chain{root};
  for (std::size_t i = 0; i + 1 < parts.size(); ++i)
  {
    YAML::Node next = chain.back()[parts[i]];
    if (next && !next.IsMap())
    {
      config_error("override \"" + key + "\": '" + parts[i] + "' is not a section");
    }
    chain.push_back(next);
  }
  chain.back()[parts.back()] = parsed;
}

}  // namespace

void validate(const RunConfig &c)
{
  c.geometry.validate();
  if (c.n_z < 3 || c.n_z % 2 == 0)
  {
    config_error("discretization.n_z must be odd and >= 3, got " + std::to_string(c.n_z));
  }
  if (c.n_x < 3)
  {
    config_error("discretization.n_x must be >= 3, got " + std::to_string(c.n_x));
  }
  if (c.coarse_z < 1 || c.coarse_z > c.n_z)
  {
    config_error("preconditioner.coarse_z must lie in [1, n_z = " + std::to_string(c.n_z) +
                 "], got " + std::to_string(c.coarse_z));
  }
  for (std::size_t nz : c.bench_coarse_z)
  {
    if (nz < 1 || nz > c.n_z)
    {
      config_error("bench.coarse_z entry " + std::to_string(nz) + " is outside [1, n_z]");
    }
  }
  for (std::size_t nz : c.scaling_n_z)
  {
    if (nz < 3 || nz % 2 == 0)
    {
      config_error("scaling.n_z entry " + std::to_string(nz) + " must be odd and >= 3");
    }
  }
  if (!(c.sigma.real() < 0.0))
  {
    std::ostringstream m;
    m << "resinv.sigma must have Re < 0, got " << c.sigma.real() << (c.sigma.imag() < 0 ? "" : "+")
      << c.sigma.imag() << "i";
    config_error(m.str());
  }
  if (c.gamma0 && !(c.gamma0->real() < 0.0))
  {
    config_error("resinv.gamma0 must have Re < 0");
  }
  if (!(c.tol > 0.0) || !(c.reference_tol > 0.0) || !(c.resinv.outer_tol > 0.0))
  {
    config_error("tolerances must be positive");
  }
  if (c.restart < 1 || c.max_iterations < 1)
  {
    config_error("solver.restart and solver.max_iterations must be >= 1");
  }
  if (c.workers < 1)
  {
    config_error("run.workers must be >= 1");
  }
}

RunConfig parse_config(const std::string &yaml, const std::vector<std::string> &overrides)
{
  YAML::Node root;
  try
  {
    root = YAML::Load(yaml);
  }
  catch (const YAML::Exception &e)
  {
    config_error(std::string("YAML: ") + e.what());
  }
  if (!root.IsMap())
  {
    config_error("config must be a mapping of sections");
  }
  for (const std::string &o : overrides)
  {
    set_path(root, o);
  }

  RunConfig c;
  bool have_nx = false;
  const std::set<std::string> sections{"name",   "geometry", "discretization", "preconditioner",
                                       "solver", "resinv",   "bench",          "scaling",
                                       "output", "run"};
  for (const auto &kv : root)
  {
    const std::string s = kv.first.as<std::string>();
    if (!sections.count(s))
    {
      config_error("unknown section '" + s + "'");
    }
  }
  if (root["name"])
  {
    c.name = scalar(root["name"], "name");
  }

  each_key(root["geometry"], "geometry",
           {"x_minus", "x_plus", "background", "kappa_minus", "kappa_plus", "regions"},
           [&](const std::string &key, const YAML::Node &v, const std::string &path)
           {
             WaveguideGeometry &g = c.geometry;
             if (key == "regions")
             {
               if (!v.IsSequence())
               {
                 config_error(path + " must be a list");
               }
               for (std::size_t i = 0; i < v.size(); ++i)
               {
                 g.regions.push_back(parse_region(v[i], path + "[" + std::to_string(i) + "]"));
               }
               return;
             }
             const double x = real_value(v, path);
             if (key == "x_minus") g.x_minus = x;
             else if (key == "x_plus") g.x_plus = x;
             else if (key == "background") g.background_kappa2 = x;
             else if (key == "kappa_minus") g.kappa_minus = x;
             else g.kappa_plus = x;
           });
  if (!root["geometry"])
  {
    config_error("missing section 'geometry'");
  }

  each_key(root["discretization"], "discretization", {"n_z", "n_x"},
           [&](const std::string &key, const YAML::Node &v, const std::string &path)
           {
             if (key == "n_z")
             {
               c.n_z = unsigned_value(v, path);
             }
             else
             {
               c.n_x = unsigned_value(v, path);
               have_nx = true;
             }
           });
  if (!root["discretization"] || !root["discretization"]["n_z"])
  {
    config_error("missing discretization.n_z");
  }
  if (!have_nx)
  {
    c.n_x = c.n_z + 4;
  }

  each_key(root["preconditioner"], "preconditioner", {"coarse_z", "layout", "kbar", "cache"},
           [&](const std::string &key, const YAML::Node &v, const std::string &path)
           {
             if (key == "coarse_z")
             {
               c.coarse_z = unsigned_value(v, path);
             }
             else if (key == "layout")
             {
               const std::string s = scalar(v, path);
               if (s == "refined") c.layout = CoarseLayout::Refined;
               else if (s == "uniform") c.layout = CoarseLayout::Uniform;
               else config_error(path + " must be refined or uniform, got \"" + s + "\"");
             }
             else if (key == "kbar")
             {
               if (scalar(v, path) == "mean")
               {
                 c.kbar_mode = KbarMode::Mean;
               }
               else
               {
                 c.kbar_mode = KbarMode::Value;
                 c.kbar_value = real_value(v, path);
               }
             }
             else
             {
               c.cache = scalar(v, path);
             }
           });

  each_key(root["solver"], "solver", {"method", "tol", "restart", "max_iterations"},
           [&](const std::string &key, const YAML::Node &v, const std::string &path)
           {
             if (key == "method")
             {
               const std::string s = scalar(v, path);
               if (s == "gmres") c.method = KrylovMethod::Gmres;
               else if (s == "bicgstab") c.method = KrylovMethod::Bicgstab;
               else config_error(path + " must be gmres or bicgstab, got \"" + s + "\"");
             }
             else if (key == "tol") c.tol = real_value(v, path);
             else if (key == "restart") c.restart = unsigned_value(v, path);
             else c.max_iterations = unsigned_value(v, path);
           });

  each_key(root["resinv"], "resinv",
           {"sigma", "gamma0", "v0", "outer_tol", "max_outer", "inner", "inner_tol", "warmup"},
           [&](const std::string &key, const YAML::Node &v, const std::string &path)
           {
             if (key == "sigma") c.sigma = complex_value(v, path);
             else if (key == "gamma0") c.gamma0 = complex_value(v, path);
             else if (key == "v0")
             {
               const std::string s = scalar(v, path);
               if (s == "ones") c.v0 = StartVector::Ones;
               else if (s == "random") c.v0 = StartVector::Random;
               else config_error(path + " must be ones or random, got \"" + s + "\"");
             }
             else if (key == "outer_tol") c.resinv.outer_tol = real_value(v, path);
             else if (key == "max_outer") c.resinv.max_outer = unsigned_value(v, path);
             else if (key == "inner")
             {
               const std::string s = scalar(v, path);
               if (s == "fixed") c.resinv.inner.policy = InnerPolicy::Fixed;
               else if (s == "adaptive") c.resinv.inner.policy = InnerPolicy::Adaptive;
               else config_error(path + " must be fixed or adaptive, got \"" + s + "\"");
             }
             else if (key == "inner_tol") c.resinv.inner.fixed = real_value(v, path);
             else c.resinv.warmup = unsigned_value(v, path);
           });

  each_key(root["bench"], "bench", {"coarse_z", "uniform", "reference_tol"},
           [&](const std::string &key, const YAML::Node &v, const std::string &path)
           {
             if (key == "coarse_z") c.bench_coarse_z = size_list(v, path);
             else if (key == "uniform") c.bench_uniform = bool_value(v, path);
             else c.reference_tol = real_value(v, path);
           });

  each_key(root["scaling"], "scaling",
           {"n_z", "coarse_z", "applications", "max_seconds", "max_gigabytes"},
           [&](const std::string &key, const YAML::Node &v, const std::string &path)
           {
             if (key == "n_z") c.scaling_n_z = size_list(v, path);
             else if (key == "coarse_z") c.scaling_coarse_z = size_list(v, path);
             else if (key == "applications") c.scaling_applications = unsigned_value(v, path);
             else if (key == "max_seconds") c.max_seconds = real_value(v, path);
             else c.max_gigabytes = real_value(v, path);
           });

  each_key(root["output"], "output", {"dir"},
           [&](const std::string &, const YAML::Node &v, const std::string &path)
           { c.out_dir = scalar(v, path); });

  each_key(root["run"], "run", {"workers", "seed", "fft"},
           [&](const std::string &key, const YAML::Node &v, const std::string &path)
           {
             if (key == "workers") c.workers = unsigned_value(v, path);
             else if (key == "seed") c.seed = unsigned_value(v, path);
             else
             {
               const std::string s = scalar(v, path);
               if (s == "estimate") c.fft_rigor = spectral::PlanRigor::Estimate;
               else if (s == "measure") c.fft_rigor = spectral::PlanRigor::Measure;
               else config_error(path + " must be estimate or measure, got \"" + s + "\"");
             }
           });

  try
  {
    validate(c);
  }
  catch (const Error &e)
  {
    if (e.code() == ErrorCode::ConfigError)
    {
      throw;
    }
    config_error(e.what());
  }
  return c;
}

RunConfig load_config(const std::filesystem::path &path, const std::vector<std::string> &overrides)
{
  std::ifstream in(path);
  if (!in)
  {
    throw Error(ErrorCode::IoError, "cannot read config " + path.string());
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), overrides);
}

}  // namespace wep::cli
