// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "wep/spectral/fft_plan.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <mutex>
#include <utility>

#include <fftw3.h>

namespace wep::spectral
{

namespace
{

std::mutex &planner_mutex()
{
  static std::mutex m;
  return m;
}

unsigned flags_for(PlanRigor rigor)
{
  return rigor == PlanRigor::Measure ? FFTW_MEASURE : FFTW_ESTIMATE;
}

int sign_for(FftDirection dir)
{
  return dir == FftDirection::Forward ? FFTW_FORWARD : FFTW_BACKWARD;
}

fftw_complex *as_fftw(cplx *p)
{
  return reinterpret_cast<fftw_complex *>(p);
}

std::atomic<PlanRigor> &process_rigor()
{
  static std::atomic<PlanRigor> r{PlanRigor::Measure};
  return r;
}

}  // namespace

PlanRigor default_rigor() noexcept
{
  static const int from_env = []
  {
    const char *env = std::getenv("WEP_FFT_RIGOR");
    if (env && std::strcmp(env, "estimate") == 0)
    {
      return 0;
    }
    if (env && std::strcmp(env, "measure") == 0)
    {
      return 1;
    }
    return -1;
  }();
  if (from_env >= 0)
  {
    return from_env == 0 ? PlanRigor::Estimate : PlanRigor::Measure;
  }
  return process_rigor().load();
}

void set_default_rigor(PlanRigor rigor) noexcept
{
  process_rigor().store(rigor);
}

FftPlan::~FftPlan()
{
  if (plan_)
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  }
}

FftPlan::FftPlan(FftPlan &&other) noexcept
  : plan_(std::exchange(other.plan_, nullptr)), extent_(std::exchange(other.extent_, 0))
{
}

FftPlan &FftPlan::operator=(FftPlan &&other) noexcept
{
  if (this != &other)
  {
    FftPlan tmp(std::move(other));
    std::swap(plan_, tmp.plan_);
    std::swap(extent_, tmp.extent_);
  }
  return *this;
}

FftPlan FftPlan::batched(std::size_t n, std::size_t howmany, std::size_t stride,
                         std::size_t dist, FftDirection dir, PlanRigor rigor)
{
  require(n >= 1 && howmany >= 1 && stride >= 1, ErrorCode::InvalidArgument,
          "FFT plan needs positive length, batch and stride");
  FftPlan plan;
  plan.extent_ = (n - 1) * stride + (howmany - 1) * dist + 1;
  CVector scratch(plan.extent_);
  const int len = static_cast<int>(n);
  std::lock_guard lock(planner_mutex());
  plan.plan_ = fftw_plan_many_dft(1, &len, static_cast<int>(howmany), as_fftw(scratch.data()),
                                  nullptr, static_cast<int>(stride), static_cast<int>(dist),
                                  as_fftw(scratch.data()), nullptr, static_cast<int>(stride),
                                  static_cast<int>(dist), sign_for(dir), flags_for(rigor));
  require(plan.plan_ != nullptr, ErrorCode::InvalidArgument, "FFTW failed to create a plan");
  return plan;
}

FftPlan FftPlan::two_dimensional(std::size_t rows, std::size_t cols, FftDirection dir,
                                 PlanRigor rigor)
{
  require(rows >= 1 && cols >= 1, ErrorCode::InvalidArgument, "empty 2D FFT");
  FftPlan plan;
  plan.extent_ = rows * cols;
  CVector scratch(plan.extent_);
  std::lock_guard lock(planner_mutex());
  // FFTW is row-major: a column-major rows x cols array is cols x rows to it.
  plan.plan_ = fftw_plan_dft_2d(static_cast<int>(cols), static_cast<int>(rows),
                                as_fftw(scratch.data()), as_fftw(scratch.data()), sign_for(dir),
                                flags_for(rigor));
  require(plan.plan_ != nullptr, ErrorCode::InvalidArgument, "FFTW failed to create a plan");
  return plan;
}

void FftPlan::execute(cplx *inout) const
{
  fftw_execute_dft(static_cast<fftw_plan>(plan_), as_fftw(inout), as_fftw(inout));
}

}  // namespace wep::spectral
