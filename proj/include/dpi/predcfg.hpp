#pragma once

// Predicate configuration: unary abstraction predicates (AP), the tracked
// reference fields (AR), and summary updates for predicates that read
// hidden fields.

#include <map>
#include <string>
#include <vector>

#include "dpi/progindex.hpp"

namespace dpi {

struct PredDef {
  std::string name;
  int cls = -1;        // class of the free variable
  ExprPtr body;        // free variable encoded as `this`
  bool reads_hidden = false;
  bool is_err = false; // auto-added x.err == true predicate
  // (class, field) pairs the body may read, including through one AR edge.
  std::vector<std::pair<int, int>> reads;
};

struct Summary {
  int cls = -1;            // keyed by (class, method) of the executing method
  std::string method;
  // Post-state value of each predicate, as a formula over the pre-state
  // (free variable of the predicate encoded as `this`).
  std::map<std::string, ExprPtr> post;
};

struct PredicateConfig {
  std::vector<PredDef> preds;
  std::vector<std::vector<int>> class_preds;  // per class: pred ids
  std::vector<std::vector<int>> class_ar;     // per class: AR field indices
  std::vector<Summary> summaries;

  const Summary* summary_for(int cls, const std::string& method) const {
    for (auto& s : summaries)
      if (s.cls == cls && s.method == method) return &s;
    return nullptr;
  }
  bool in_ar(int cls, int field) const {
    for (int f : class_ar[cls])
      if (f == field) return true;
    return false;
  }
};

// Parse the predicate-config DSL:
//   ar Class.field;
//   pred name(x: Class) := <expr over x>;
//   summary Class.method { pred_name := <expr over x>; ... }
// Client reference fields, reference parameters and `ret`/`__ignore` slots
// are added to AR implicitly; `err` predicates are added per class.
// Validates that no AR member is hidden and that predicates reading hidden
// fields come with a summary.
PredicateConfig parse_predicate_config(const std::string& text,
                                       const ProgramIndex& px);

// Config with no user predicates (err predicates and implicit AR only);
// used by tests that construct shapes directly.
PredicateConfig default_predicate_config(const ProgramIndex& px);

}  // namespace dpi
