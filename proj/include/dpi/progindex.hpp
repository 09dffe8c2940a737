#pragma once

// Dense indexing of a program for the interpreters: classes, fields and
// control locations resolved to integers once.

#include <map>
#include <string>
#include <vector>

#include "dpi/ast.hpp"

namespace dpi {

struct FieldInfo {
  std::string name;
  FieldType type;
  bool hidden = false;
  bool implicit = false;
};

struct ClassInfo {
  std::string name;
  bool is_client = false;
  std::vector<FieldInfo> fields;
  std::map<std::string, int> field_index;
};

struct LocInfo {
  const Method* method = nullptr;
  int state = 0;
  bool is_final = false;
};

class ProgramIndex {
 public:
  explicit ProgramIndex(const OoProgram& prog);

  const OoProgram& prog;
  std::vector<ClassInfo> classes;  // aligned with prog.package.classes
  int client_class = -1;
  int loop_head = -1;

  std::vector<LocInfo> locs;
  // Outgoing CFA edges per global location.
  std::vector<std::vector<const CfaEdge*>> out_edges;

  int class_of(const std::string& name) const {
    auto it = class_idx_.find(name);
    return it == class_idx_.end() ? -1 : it->second;
  }
  int field_of(int cls, const std::string& f) const {
    auto it = classes[cls].field_index.find(f);
    return it == classes[cls].field_index.end() ? -1 : it->second;
  }
  int global_loc(const Method& m, int state) const {
    return m.cfa.first_loc + state;
  }
  const Method* method_of(int cls, const std::string& name) const {
    return prog.package.classes[cls].method(name);
  }
  const std::string& loc_name(int loc) const {
    return prog.package.loc_names[loc];
  }

  // First value of the scalar domain / null: the initial field values.
  // Also the total-semantics result of dereferencing null.
  int default_scalar(const FieldType& t) const { return t.dom.lo; }

  // Field type lookup by name across classes (for null dereference).
  const FieldType* field_type_anywhere(const std::string& f) const {
    auto it = any_field_.find(f);
    return it == any_field_.end() ? nullptr : &it->second;
  }

 private:
  std::map<std::string, int> class_idx_;
  std::map<std::string, FieldType> any_field_;
};

}  // namespace dpi
