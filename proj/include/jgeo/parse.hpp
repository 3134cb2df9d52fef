#pragma once

#include <string_view>

#include "jgeo/chart.hpp"
#include "jgeo/expr.hpp"

namespace jgeo {

// Grammar (whitespace insignificant):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' integer)?          integer may carry a leading '-'
//   base   := number | ident | '(' expr ')' | '-' factor | func '(' expr ')'
//   func   := sin | cos | tan | exp | log | sqrt | sinh | cosh
//   number := digits ('.' digits?)? exponent?
//
// Every identifier must be a chart coordinate.
ScalarField parse_scalar(std::string_view src, const Chart& chart);

}  // namespace jgeo
