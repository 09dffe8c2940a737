#pragma once

#include <vector>

#include "dpi/ast.hpp"

namespace dpi {

// Type/visibility/structure checks over a parsed package. Empty result iff
// the package is well-typed, the call graph is acyclic and havoc appears
// only in client main. Diagnostics are the return value; nothing throws.
std::vector<Diagnostic> check_well_formed(const Package& p);

// Synthesize the most general client: a class with a single `main` looping
// forever, each iteration either constructing a fresh instance via a public
// constructor or invoking a public method on a havoc-picked object.
// Reference arguments are havoc-picked allocated objects; scalar arguments
// are havoc'd over their domains. All client reference fields are reset to
// null before the loop head.
ClassDef most_general_client(const Package& p);

// Package extended with its MGC, locations reassigned.
OoProgram make_program(const Package& p);

// Program with a user-supplied client class (must satisfy the client
// restrictions; checked by check_well_formed on the extended package).
OoProgram make_program_with_client(const Package& p, const ClassDef& client);

// The client's loop head location (the cut point main_0).
int client_loop_head(const OoProgram& prog);

// Static bound on the call stack depth (call graph is acyclic).
int max_stack_depth(const OoProgram& prog);

}  // namespace dpi
