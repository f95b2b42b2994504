// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef WEP_COMMON_HPP
#define WEP_COMMON_HPP

#include <algorithm>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <new>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wep
{

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr cplx imag_unit{0.0, 1.0};

// 64-byte alignment satisfies every FFTW SIMD codelet and AVX-512 loads.
template <typename T, std::size_t Alignment = 64>
struct AlignedAllocator
{
  using value_type = T;

  template <typename U>
  struct rebind
  {
    using other = AlignedAllocator<U, Alignment>;
  };

  AlignedAllocator() noexcept = default;
  template <typename U>
  AlignedAllocator(const AlignedAllocator<U, Alignment> &) noexcept
  {
  }

  T *allocate(std::size_t n)
  {
    if (n > std::numeric_limits<std::size_t>::max() / sizeof(T))
    {
      throw std::bad_array_new_length();
    }
    return static_cast<T *>(::operator new(n * sizeof(T), std::align_val_t{Alignment}));
  }

  void deallocate(T *p, std::size_t) noexcept
  {
    ::operator delete(p, std::align_val_t{Alignment});
  }

  template <typename U>
  bool operator==(const AlignedAllocator<U, Alignment> &) const noexcept
  {
    return true;
  }
};

using CVector = std::vector<cplx, AlignedAllocator<cplx>>;
using RVector = std::vector<double, AlignedAllocator<double>>;

enum class ErrorCode
{
  InvalidArgument,
  DimensionMismatch,
  OddGridRequired,
  SpectrumCollision,
  SingularDtnMode,
  RightHalfPlane,
  GridTooCoarse,
  SingularCoupling,
  CacheMismatch,
  LeftHalfPlaneViolation,
  NewtonStall,
  ConfigError,
  IoError
};

const char *to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string &what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
  {
  }

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

inline void require(bool condition, ErrorCode code, const std::string &what)
{
  if (!condition)
  {
    throw Error(code, what);
  }
}

/// Dense column-major matrix; vec(X) is simply the storage vector.
template <typename T>
class Matrix
{
public:
  using Storage = std::vector<T, AlignedAllocator<T>>;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T value = T{})
    : rows_(rows), cols_(cols), data_(rows * cols, value)
  {
  }
  Matrix(std::size_t rows, std::size_t cols, Storage data)
    : rows_(rows), cols_(cols), data_(std::move(data))
  {
    require(data_.size() == rows * cols, ErrorCode::DimensionMismatch,
            "matrix storage does not match its shape");
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }

  T &operator()(std::size_t i, std::size_t j) noexcept { return data_[i + j * rows_]; }
  const T &operator()(std::size_t i, std::size_t j) const noexcept
  {
    return data_[i + j * rows_];
  }

  std::span<T> col(std::size_t j) noexcept { return {data_.data() + j * rows_, rows_}; }
  std::span<const T> col(std::size_t j) const noexcept
  {
    return {data_.data() + j * rows_, rows_};
  }

  T *data() noexcept { return data_.data(); }
  const T *data() const noexcept { return data_.data(); }
  Storage &storage() noexcept { return data_; }
  const Storage &storage() const noexcept { return data_; }
  std::span<T> flat() noexcept { return data_; }
  std::span<const T> flat() const noexcept { return data_; }

  void fill(T value) { std::fill(data_.begin(), data_.end(), value); }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Storage data_;
};

using CMatrix = Matrix<cplx>;
using RMatrix = Matrix<double>;

}  // namespace wep

#endif  // WEP_COMMON_HPP
