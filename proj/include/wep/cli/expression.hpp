// Copyright wepsolve contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef WEP_CLI_EXPRESSION_HPP
#define WEP_CLI_EXPRESSION_HPP

#include <string_view>

#include "wep/common.hpp"

namespace wep::cli
{

/// Complex arithmetic expression: numbers, an imaginary suffix or the name i,
/// pi, sqrt/exp/abs, + - * / ^ and parentheses. ^ is right-associative and binds
/// tighter than a leading minus, so -2^2 = -4. Throws ConfigError with the
/// offending position on malformed input.
cplx evaluate_complex(std::string_view text);

/// As evaluate_complex but rejects a nonzero imaginary part.
double evaluate_real(std::string_view text);

}  // namespace wep::cli

#endif  // WEP_CLI_EXPRESSION_HPP
