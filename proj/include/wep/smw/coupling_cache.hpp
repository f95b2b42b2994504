// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef WEP_SMW_COUPLING_CACHE_HPP
#define WEP_SMW_COUPLING_CACHE_HPP

#include <cstdint>
#include <filesystem>
#include <string>

#include "wep/common.hpp"
#include "wep/smw/coarse_grid.hpp"

namespace wep
{

// File layout, little-endian:
//   "WEPSMW\0\0"  8 bytes
//   version       u8
//   layout        u8
//   n_x n_z N_x N_z      4 x u64
//   sigma.re sigma.im    2 x f64
//   kbar                 f64
//   geometry hash        u64
//   W                    N*N x (f64 re, f64 im), column-major
//   checksum             u64, FNV-1a over every preceding byte
struct CacheHeader
{
  static constexpr std::uint8_t kVersion = 1;

  std::uint8_t version = kVersion;
  CoarseLayout layout = CoarseLayout::Refined;
  std::uint64_t n_x = 0, n_z = 0, cells_x = 0, cells_z = 0;
  cplx sigma{};
  double kbar = 0.0;
  std::uint64_t geometry_hash = 0;

  /// Empty if equal; otherwise a description of the first differing field with both values.
  std::string mismatch(const CacheHeader &live) const;
};

void write_coupling(const std::filesystem::path &path, const CacheHeader &header,
                    const CMatrix &coupling);

/// Throws IoError if the file cannot be read, CacheMismatch on a bad magic,
/// version, truncated payload or checksum.
CMatrix read_coupling(const std::filesystem::path &path, CacheHeader &header);

/// Header only (checksum still verified).
CacheHeader inspect_coupling(const std::filesystem::path &path);

}  // namespace wep

#endif  // WEP_SMW_COUPLING_CACHE_HPP
