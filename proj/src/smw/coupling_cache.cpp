// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "wep/smw/coupling_cache.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <vector>

namespace wep
{

namespace
{

constexpr std::array<char, 8> kMagic{'W', 'E', 'P', 'S', 'M', 'W', '\0', '\0'};
constexpr std::size_t kHeaderBytes = 8 + 1 + 1 + 4 * 8 + 3 * 8 + 8;

std::uint64_t fnv1a(const std::uint8_t *p, std::size_t n) noexcept
{
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::size_t i = 0; i < n; ++i)
  {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

class Writer
{
public:
  void byte(std::uint8_t b) { buf_.push_back(b); }
  void u64(std::uint64_t v)
  {
    for (int i = 0; i < 8; ++i)
    {
      buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
  }
  void f64(double d) { u64(std::bit_cast<std::uint64_t>(d)); }
  std::vector<std::uint8_t> &bytes() { return buf_; }

private:
  std::vector<std::uint8_t> buf_;
};

class Reader
{
public:
  Reader(const std::vector<std::uint8_t> &b) : b_(b) {}
  std::uint8_t byte() { need(1); return b_[at_++]; }
  std::uint64_t u64()
  {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
    {
      v |= static_cast<std::uint64_t>(b_[at_++]) << (8 * i);
    }
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }

private:
  void need(std::size_t n) const
  {
    if (at_ + n > b_.size())
    {
      throw Error(ErrorCode::CacheMismatch, "coupling cache is truncated");
    }
  }
  const std::vector<std::uint8_t> &b_;
  std::size_t at_ = 0;
};

std::vector<std::uint8_t> slurp(const std::filesystem::path &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    throw Error(ErrorCode::IoError, "cannot open coupling cache " + path.string());
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Validates magic and checksum, parses the header and returns a reader positioned at W.
CacheHeader parse_header(const std::vector<std::uint8_t> &bytes, Reader &r)
{
  if (bytes.size() < kHeaderBytes + 8 ||
      std::memcmp(bytes.data(), kMagic.data(), kMagic.size()) != 0)
  {
    throw Error(ErrorCode::CacheMismatch, "not a coupling cache (bad magic)");
  }
  std::uint64_t stored = 0;
  for (int i = 0; i < 8; ++i)
  {
    stored |= static_cast<std::uint64_t>(bytes[bytes.size() - 8 + i]) << (8 * i);
  }
  if (fnv1a(bytes.data(), bytes.size() - 8) != stored)
  {
    throw Error(ErrorCode::CacheMismatch, "coupling cache checksum does not match");
  }
  for (std::size_t i = 0; i < kMagic.size(); ++i)
  {
    r.byte();
  }
  CacheHeader h;
  h.version = r.byte();
  if (h.version != CacheHeader::kVersion)
  {
    throw Error(ErrorCode::CacheMismatch,
                "coupling cache version " + std::to_string(h.version) + " is not supported");
  }
  const std::uint8_t layout = r.byte();
  if (layout > 1)
  {
    throw Error(ErrorCode::CacheMismatch, "coupling cache has an unknown coarse layout");
  }
  h.layout = static_cast<CoarseLayout>(layout);
  h.n_x = r.u64();
  h.n_z = r.u64();
  h.cells_x = r.u64();
  h.cells_z = r.u64();
  const double re = r.f64();
  const double im = r.f64();
  h.sigma = {re, im};
  h.kbar = r.f64();
  h.geometry_hash = r.u64();
  return h;
}

}  // namespace

std::string CacheHeader::mismatch(const CacheHeader &live) const
{
  std::ostringstream m;
  m.precision(17);
  if (layout != live.layout)
  {
    m << "layout: cache " << to_string(layout) << ", live " << to_string(live.layout);
  }
  else if (n_x != live.n_x)
  {
    m << "n_x: cache " << n_x << ", live " << live.n_x;
  }
  else if (n_z != live.n_z)
  {
    m << "n_z: cache " << n_z << ", live " << live.n_z;
  }
  else if (cells_x != live.cells_x)
  {
    m << "N_x: cache " << cells_x << ", live " << live.cells_x;
  }
  else if (cells_z != live.cells_z)
  {
    m << "N_z: cache " << cells_z << ", live " << live.cells_z;
  }
  else if (std::bit_cast<std::uint64_t>(sigma.real()) !=
               std::bit_cast<std::uint64_t>(live.sigma.real()) ||
           std::bit_cast<std::uint64_t>(sigma.imag()) !=
               std::bit_cast<std::uint64_t>(live.sigma.imag()))
  {
    m << "sigma: cache " << sigma << ", live " << live.sigma;
  }
  else if (std::bit_cast<std::uint64_t>(kbar) != std::bit_cast<std::uint64_t>(live.kbar))
  {
    m << "kbar: cache " << kbar << ", live " << live.kbar;
  }
  else if (geometry_hash != live.geometry_hash)
  {
    m << "geometry hash: cache " << std::hex << geometry_hash << ", live " << live.geometry_hash;
  }
  return m.str();
}

void write_coupling(const std::filesystem::path &path, const CacheHeader &header,
                    const CMatrix &coupling)
{
  require(coupling.rows() == header.cells_x * header.cells_z && coupling.cols() == coupling.rows(),
          ErrorCode::DimensionMismatch, "coupling matrix does not match the cache header");
  Writer w;
  for (char c : kMagic)
  {
    w.byte(static_cast<std::uint8_t>(c));
  }
  w.byte(header.version);
  w.byte(static_cast<std::uint8_t>(header.layout));
  w.u64(header.n_x);
  w.u64(header.n_z);
  w.u64(header.cells_x);
  w.u64(header.cells_z);
  w.f64(header.sigma.real());
  w.f64(header.sigma.imag());
  w.f64(header.kbar);
  w.u64(header.geometry_hash);
  for (const cplx &v : coupling.flat())
  {
    w.f64(v.real());
    w.f64(v.imag());
  }
  w.u64(fnv1a(w.bytes().data(), w.bytes().size()));

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
  {
    throw Error(ErrorCode::IoError, "cannot write coupling cache " + path.string());
  }
  out.write(reinterpret_cast<const char *>(w.bytes().data()),
            static_cast<std::streamsize>(w.bytes().size()));
  if (!out)
  {
    throw Error(ErrorCode::IoError, "short write on coupling cache " + path.string());
  }
}

CMatrix read_coupling(const std::filesystem::path &path, CacheHeader &header)
{
  const std::vector<std::uint8_t> bytes = slurp(path);
  Reader r(bytes);
  header = parse_header(bytes, r);
  const std::uint64_t n = header.cells_x * header.cells_z;
  if (bytes.size() != kHeaderBytes + n * n * 16 + 8)
  {
    throw Error(ErrorCode::CacheMismatch, "coupling cache payload size does not match its header");
  }
  CMatrix w(n, n);
  for (cplx &v : w.flat())
  {
    const double re = r.f64();
    const double im = r.f64();
    v = {re, im};
  }
  return w;
}

CacheHeader inspect_coupling(const std::filesystem::path &path)
{
  const std::vector<std::uint8_t> bytes = slurp(path);
  Reader r(bytes);
  return parse_header(bytes, r);
}

}  // namespace wep
