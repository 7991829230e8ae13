#pragma once

#include <string>
#include <string_view>

#include "wcdp/core/program.hpp"

namespace wcdp::io {

/// Line-oriented program text, `#` starts a comment:
///
///     atom p1
///     constraint c1 { 1 <= 1*p1 + 2*~p2 <= 3 }
///     rule r1: c1 :- c2, c3.
///
/// Weights default to 1, `~` marks a negative literal, a missing lower bound is 0 and a missing upper
/// bound is unbounded. Atoms must be declared; rules may refer to constraints declared further down.
/// Syntax errors throw ParseError with a position, semantic errors ProgramError.
Program parse_program(std::string_view text);
Program parse_program_file(const std::string& path);

/// Inverse of parse_program (declaration order is preserved).
std::string print_program(const Program& p);

}  // namespace wcdp::io
