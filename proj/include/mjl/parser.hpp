#pragma once

#include <string_view>

#include "mjl/ast.hpp"

namespace mjl {

struct ParseOptions {
  // First call-site id handed out; lets several programs share one id space.
  int first_site = 0;
};

// Grammar (newlines end statements outside brackets and after complete
// expressions; `#` starts a line comment):
//
//   stmt   := name '(' [param {',' param}] ')' '=' expr      method definition
//           | name '=' expr                                  global assignment
//           | expr
//   param  := name ['::' name] ['...']
//   expr   := sum [':' sum]
//   sum    := term {('+' | '-') term}
//   term   := unary {'*' unary}
//   unary  := '-' unary | postfix
//   postfix:= primary {'[' args ']'}
//   primary:= int | float | string | name | name '(' args ')' | op'(' args ')'
//           | '(' ')' | '(' expr ')' | '(' arg ',' [args] ')'
//   arg    := expr ['...']
//
// Throws SyntaxError with the offending line and column.
ast::Program parse(std::string_view source, ParseOptions options = {});

}  // namespace mjl
