#pragma once

// Minimal s-expression reader shared by the integer and coefficient
// expression parsers.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace theta_idents::detail {

struct SExpr {
  bool is_atom = false;
  std::string atom;
  std::vector<SExpr> items;
  std::size_t column = 0;  // 1-based column of the first character
};

// Throws ParseError (line 1, column within `text`) on unbalanced input.
SExpr parse_sexpr(std::string_view text);

}  // namespace theta_idents::detail
