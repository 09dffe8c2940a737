#pragma once

#include <string>

#include "dpi/ast.hpp"

namespace dpi {

// Parse a package DSL document. Throws AnalysisError(SyntaxError /
// DuplicateName / UnknownType) on malformed input.
Package parse_package(const std::string& source_text);

// Inverse of parse_package on abstract syntax (parse(print(p)) == p up to
// positions). CFAs are printed from the structured statement forms they
// were built from, so only parser-produced packages round-trip.
std::string print_package(const Package& p);

// Assign package-wide disjoint control locations; called by the parser and
// again after synthesizing the client.
void assign_locations(Package& p);

// Structural equality on abstract syntax, ignoring source positions.
bool package_equal(const Package& a, const Package& b);

}  // namespace dpi
