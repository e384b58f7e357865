#pragma once

#include <string>

#include "pfib/poly.hpp"

namespace pfib {

struct ParseError : error {
  ParseError(const std::string& what, std::size_t pos)
      : error(what + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

// Parse the documented polynomial grammar (see docs/polynomial-grammar.md):
// variables t0,t1,x0..x4, integer or integer/integer literals, + - * ^ and
// parentheses. Homogeneity is not enforced here.
Polynomial parse_polynomial(const std::string& src, const FieldSpec& field);

}  // namespace pfib
