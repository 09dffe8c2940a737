#pragma once

// Concrete small-step semantics: the ground-truth oracle for the abstract
// analysis. Bounded exploration only.

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "dpi/progindex.hpp"

namespace dpi {

using ObjId = uint32_t;
constexpr ObjId kNullObj = 0;

// A field slot: scalar value or reference. Refs hold an ObjId.
struct CValue {
  int32_t v = 0;
  bool is_ref = false;
  bool operator==(const CValue& o) const = default;
  auto operator<=>(const CValue& o) const = default;
  static CValue scalar(int32_t x) { return {x, false}; }
  static CValue ref(ObjId o) { return {(int32_t)o, true}; }
};

struct ConcObject {
  int cls = -1;  // class index; -1 = the null object (class nil)
  std::vector<CValue> fields;
};

struct Frame {
  ObjId obj = 0;   // caller object
  int var = 0;     // field index in caller's class receiving the result
  int ret_loc = 0; // caller's continuation location
  bool operator==(const Frame&) const = default;
  auto operator<=>(const Frame&) const = default;
};

struct Configuration {
  std::vector<ConcObject> objects;  // [0] is the null object
  ObjId this_obj = 0;
  int loc = 0;
  std::vector<Frame> stack;

  bool operator==(const Configuration&) const = default;
};

Configuration initial_configuration(const ProgramIndex& px);

// All successors under the transition rules; empty iff terminated/stuck.
std::vector<Configuration> step(const ProgramIndex& px, const Configuration& u);

bool is_error(const ProgramIndex& px, const Configuration& u);

// Canonical form (objects renamed deterministically up to isomorphism).
Configuration canonical_configuration(const ProgramIndex& px,
                                      const Configuration& u);
std::string configuration_key(const ProgramIndex& px, const Configuration& u);

struct ReachResult {
  std::vector<Configuration> configs;              // canonical forms
  std::vector<std::pair<int, int>> transitions;    // indices into configs
  bool budget_hit = false;                         // max_steps frontier cut
};

// BFS of step up to max_steps, pruning branches that would exceed
// max_objects allocated objects (the null object does not count).
// Error configurations are recorded but not expanded (the analysis stops
// at the error boundary). Throws BudgetExceeded past node_cap.
ReachResult bounded_reach(const ProgramIndex& px, int max_steps,
                          int max_objects, size_t node_cap = 2'000'000);

// Concrete expression evaluation with total null semantics (dereferencing
// null yields the field's domain default / null).
CValue eval_expr(const ProgramIndex& px, const Configuration& u, ObjId self,
                 const ExprPtr& e);

}  // namespace dpi
