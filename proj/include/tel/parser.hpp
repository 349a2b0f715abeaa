#pragma once

#include <string_view>

#include "tel/syntax.hpp"

namespace tel::syntax {

/// Reads a program in the surface grammar:
///
///   program   := (directive | rule)* ;
///   directive := "static" NAME "/" INT ("," NAME "/" INT)* "." ;
///   rule      := ["init"] [head] [":-" body] "." ;
///   head      := ["o"] atom ("v" ["o"] atom)* ;
///   body      := blit ("," blit)* ;
///   blit      := ["not"] ["o"] atom | term "!=" term ;
///
/// `%` starts a comment. Throws ParseError with the offending position.
Program parse_program(std::string_view text);

} // namespace tel::syntax
