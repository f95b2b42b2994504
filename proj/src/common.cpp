// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "wep/common.hpp"

namespace wep
{

const char *to_string(ErrorCode code) noexcept
{
  switch (code)
  {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::OddGridRequired: return "OddGridRequired";
    case ErrorCode::SpectrumCollision: return "SpectrumCollision";
    case ErrorCode::SingularDtnMode: return "SingularDtnMode";
    case ErrorCode::RightHalfPlane: return "RightHalfPlane";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::SingularCoupling: return "SingularCoupling";
    case ErrorCode::CacheMismatch: return "CacheMismatch";
    case ErrorCode::LeftHalfPlaneViolation: return "LeftHalfPlaneViolation";
    case ErrorCode::NewtonStall: return "NewtonStall";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace wep
