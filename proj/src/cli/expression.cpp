// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "wep/cli/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

namespace wep::cli
{

namespace
{

class Parser
{
public:
  explicit Parser(std::string_view s) : s_(s) {}

  cplx parse()
  {
    const cplx v = sum();
    skip();
    if (pos_ != s_.size())
    {
      fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    }
    return v;
  }

private:
  [[noreturn]] void fail(const std::string &what) const
  {
    throw Error(ErrorCode::ConfigError, "expression \"" + std::string(s_) + "\" at offset " +
                                            std::to_string(pos_) + ": " + what);
  }

  void skip()
  {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
    {
      ++pos_;
    }
  }

  bool eat(char c)
  {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c)
    {
      ++pos_;
      return true;
    }
    return false;
  }

  cplx sum()
  {
    cplx v = product();
    for (;;)
    {
      if (eat('+'))
      {
        v += product();
      }
      else if (eat('-'))
      {
        v -= product();
      }
      else
      {
        return v;
      }
    }
  }

  cplx product()
  {
    cplx v = unary();
    for (;;)
    {
      if (eat('*'))
      {
        v *= unary();
      }
      else if (eat('/'))
      {
        const cplx d = unary();
        if (d == cplx{})
        {
          fail("division by zero");
        }
        v /= d;
      }
      else
      {
        return v;
      }
    }
  }

  cplx unary()
  {
    if (eat('-'))
    {
      // Keep +0 imaginary parts so sqrt(-4) lands on +2i.
      const cplx v = unary();
      return {-v.real(), v.imag() == 0.0 ? 0.0 : -v.imag()};
    }
    if (eat('+'))
    {
      return unary();
    }
    return power();
  }

  cplx power()
  {
    const cplx base = atom();
    if (eat('^'))
    {
      const cplx e = unary();
      if (e.imag() == 0.0 && base.imag() == 0.0 && (base.real() >= 0.0 || std::trunc(e.real()) == e.real()))
      {
        return std::pow(base.real(), e.real());
      }
      return std::pow(base, e);
    }
    return base;
  }

  cplx atom()
  {
    skip();
    if (pos_ >= s_.size())
    {
      fail("unexpected end of input");
    }
    const char c = s_[pos_];
    if (c == '(')
    {
      ++pos_;
      const cplx v = sum();
      if (!eat(')'))
      {
        fail("missing ')'");
      }
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
    {
      double x = 0.0;
      const auto [end, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), x);
      if (ec != std::errc{})
      {
        fail("bad number");
      }
      pos_ = static_cast<std::size_t>(end - s_.data());
      if (pos_ < s_.size() && s_[pos_] == 'i' &&
          (pos_ + 1 == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 1]))))
      {
        ++pos_;
        return {0.0, x};
      }
      return x;
    }
    if (std::isalpha(static_cast<unsigned char>(c)))
    {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      {
        ++pos_;
      }
      const std::string_view name = s_.substr(start, pos_ - start);
      if (name == "pi")
      {
        return pi;
      }
      if (name == "i")
      {
        return imag_unit;
      }
      if (name == "sqrt" || name == "exp" || name == "abs")
      {
        if (!eat('('))
        {
          fail("expected '(' after " + std::string(name));
        }
        const cplx a = sum();
        if (!eat(')'))
        {
          fail("missing ')'");
        }
        if (name == "abs")
        {
          return std::abs(a);
        }
        if (name == "exp")
        {
          return std::exp(a);
        }
        return a.imag() == 0.0 && a.real() >= 0.0 ? cplx(std::sqrt(a.real())) : std::sqrt(a);
      }
      pos_ = start;
      fail("unknown name '" + std::string(name) + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

cplx evaluate_complex(std::string_view text)
{
  return Parser(text).parse();
}

double evaluate_real(std::string_view text)
{
  const cplx v = evaluate_complex(text);
  if (v.imag() != 0.0)
  {
    throw Error(ErrorCode::ConfigError,
                "expression \"" + std::string(text) + "\" is complex where a real value is required");
  }
  return v.real();
}

}  // namespace wep::cli
