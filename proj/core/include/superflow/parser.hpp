#ifndef SUPERFLOW_PARSER_HPP
#define SUPERFLOW_PARSER_HPP

#include <string_view>

#include "superflow/ast.hpp"

namespace superflow {

// Hypothesis DSL. `;` separates clauses, `#` starts a comment.
//
//   hypothesis := clause+ require*
//   clause     := "forall" ident ("," ident)* "in" "F" ":" expr ";"
//               | "exists" ident "in" "F" ":" expr ";"
//   require    := "require" "count" "(" "distinct" attr "(" ident ")"
//                 ["where" expr] ")" cmpop integer ";"
//   expr       := orexpr ["implies" expr]            (implies: lowest, right)
//   orexpr     := andexpr ("or" andexpr)*
//   andexpr    := unary ("and" unary)*
//   unary      := "not" unary | "(" expr ")"
//               | ("exists"|"forall") ident ("," ident)* "in" "F" ":" expr
//               | term
//   term       := attr "(" ident ")" cmpop (attr "(" ident ")" | literal)
//               | attr "(" ident ")" "in" (cidr | "{" literal-list "}")
//               | attr "(" ident ")" "-" attr "(" ident ")" cmpop duration
//   duration   := integer ("ms" | "s")
//   cmpop      := "==" | "!=" | "<=" | ">=" | "<" | ">"
//
// "a implies b" is sugar for "not (a) or (b)" and never appears in the AST.
// Globs like 192.168.1.* are accepted and normalized to CIDR form.

/// Throws ParseError (with line/column) on syntax errors, unknown attributes,
/// unbound variables, unit-less time bounds, and type mismatches.
Hypothesis parse_hypothesis(std::string_view text);

} // namespace superflow

#endif // SUPERFLOW_PARSER_HPP
