// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef WEP_SPECTRAL_FFT_PLAN_HPP
#define WEP_SPECTRAL_FFT_PLAN_HPP

#include <cstddef>

#include "wep/common.hpp"

namespace wep::spectral
{

enum class PlanRigor
{
  Estimate,
  Measure
};

enum class FftDirection
{
  Forward,   // exp(-2 pi i jk / n)
  Backward   // exp(+2 pi i jk / n), unnormalized
};

// Default rigor for new plans: WEP_FFT_RIGOR (estimate|measure) if set, else the
// process default (measure unless changed with set_default_rigor). Measured plans
// are faster but may differ between processes in the last bits; estimated plans
// are reproducible.
PlanRigor default_rigor() noexcept;
void set_default_rigor(PlanRigor rigor) noexcept;

/// Owning, in-place complex FFTW plan. Plans are created under a global lock
/// since the FFTW planner is not reentrant; execute() is safe to call
/// concurrently on different buffers. Buffers passed to execute() must be
/// 64-byte aligned (every CVector is).
class FftPlan
{
public:
  FftPlan() = default;
  ~FftPlan();
  FftPlan(FftPlan &&other) noexcept;
  FftPlan &operator=(FftPlan &&other) noexcept;
  FftPlan(const FftPlan &) = delete;
  FftPlan &operator=(const FftPlan &) = delete;

  /// `howmany` transforms of length `n`, element stride `stride`, distance `dist`.
  static FftPlan batched(std::size_t n, std::size_t howmany, std::size_t stride,
                         std::size_t dist, FftDirection dir, PlanRigor rigor);

  /// 2D transform of a column-major `rows` x `cols` array (both dimensions).
  static FftPlan two_dimensional(std::size_t rows, std::size_t cols, FftDirection dir,
                                 PlanRigor rigor);

  void execute(cplx *inout) const;

  std::size_t extent() const noexcept { return extent_; }
  bool valid() const noexcept { return plan_ != nullptr; }

private:
  void *plan_ = nullptr;
  std::size_t extent_ = 0;
};

}  // namespace wep::spectral

#endif  // WEP_SPECTRAL_FFT_PLAN_HPP
