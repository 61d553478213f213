#ifndef SUPERFLOW_PRINTER_HPP
#define SUPERFLOW_PRINTER_HPP

#include <string>

#include "superflow/ast.hpp"

namespace superflow {

/// Canonical DSL text, one clause per line. parse(to_dsl(h)) is structurally
/// equal to h for every parser-constructible AST.
std::string to_dsl(const Hypothesis& h);

std::string to_dsl(const ExprPtr& e);

} // namespace superflow

#endif // SUPERFLOW_PRINTER_HPP
