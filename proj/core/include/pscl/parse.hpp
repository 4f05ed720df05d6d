#pragma once

#include <stdexcept>
#include <string>

#include "pscl/expr.hpp"

namespace pscl {

/// Syntax error with 0-based character position into the input.
struct ParseError : std::runtime_error {
    size_t position;
    ParseError(const std::string& what, size_t pos)
        : std::runtime_error(what + " at position " + std::to_string(pos)), position(pos) {}
};

/// Parse the expression DSL:
///   identifiers `q`, `r`, `u`, ...; `eta`; jets as trailing `_x`
///   repetitions (`q_xx`) or `D[q,k]`; `sin(u)`, `cos(u)`;
///   operators + - * / ^ and parentheses; integer literals
///   (rationals are written p/q).
/// The printer (Expression::str) emits the same grammar.
Expression parse(const std::string& text);

}  // namespace pscl
