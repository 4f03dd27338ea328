#ifndef CFSUB_SYNTAX_HPP
#define CFSUB_SYNTAX_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include "cfsub/types.hpp"

namespace cfsub {

// Concrete syntax:
//   type    ::= arrow
//   arrow   ::= seq (("->" | "-o") arrow)?            right-associative
//   seq     ::= prefix (";" seq)?                     right-associative
//   prefix  ::= ("?" | "!") atom | atom
//   atom    ::= "unit" | "skip" | "end" | ident
//             | "{" fields? "}" | "<" fields? ">"
//             | ("+" | "&") "{" fields "}"
//             | "rec" ident "." type | "(" type ")"
//   fields  ::= label ":" type ("," label ":" type)*
// An identifier bound by an enclosing `rec` is a reference; any other
// identifier denotes a base type. Duplicate binders are freshened so that
// binders are pairwise distinct in the resulting tree.

struct ParseError : std::runtime_error {
  int line, column;
  ParseError(std::string what, int line_, int col)
      : std::runtime_error(std::move(what)), line(line_), column(col) {}
};

TypePtr parse_type(std::string_view text);

// Inverse of parse_type: parse_type(print_type(t)) is structurally equal
// to t for closed types with pairwise-distinct binders.
std::string print_type(const TypePtr& t);

}  // namespace cfsub

#endif
