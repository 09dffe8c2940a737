#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "dpi/package_ops.hpp"
#include "dpi/parser.hpp"

namespace dpi {

namespace {

// One nondeterministic choice of the client loop.
struct Branch {
  std::string cls;     // receiver/constructed class
  std::string method;  // method name, or class name for construction
  bool is_ctor = false;
  const Method* m = nullptr;
  std::string body;  // statements, without trailing loop-head reset
};

std::string scalar_havoc_field(const Package& p, const FieldType& t,
                               std::map<std::string, FieldType>& aux) {
  // One auxiliary client field per distinct scalar domain.
  std::string name;
  if (t.dom.is_bool) {
    name = "hb";
  } else {
    name = "hi" + std::to_string(t.dom.lo) + "_" + std::to_string(t.dom.hi);
  }
  aux.emplace(name, t);
  (void)p;
  return name;
}

}  // namespace

ClassDef most_general_client(const Package& p) {
  // The client is synthesized as DSL text and parsed: it stays printable
  // and goes through the same desugaring as user code.
  std::map<std::string, FieldType> aux;  // scalar havoc fields
  std::vector<Branch> branches;

  for (auto& cd : p.classes) {
    if (cd.is_client) continue;
    if (cd.ctor_public) {
      Branch b;
      b.cls = cd.name;
      b.method = cd.name;
      b.is_ctor = true;
      b.m = &cd.ctor;
      branches.push_back(b);
    }
    for (auto& m : cd.public_methods) {
      Branch b;
      b.cls = cd.name;
      b.method = m.name;
      b.m = &m;
      branches.push_back(b);
    }
  }
  std::sort(branches.begin(), branches.end(), [](const Branch& a, const Branch& b) {
    if (a.cls != b.cls) return a.cls < b.cls;
    return a.method < b.method;
  });

  // Build each branch body.
  for (auto& b : branches) {
    std::ostringstream os;
    std::set<std::string> used_refs;
    std::vector<std::string> args;
    auto pick_ref = [&](const std::string& cls, bool allow_null) {
      std::string f = "r" + cls;
      os << "        havoc " << f << ";";
      if (!allow_null) os << " assume " << f << " != null;";
      os << "\n";
      used_refs.insert(f);
      return f;
    };
    if (!b.is_ctor) args.push_back(pick_ref(b.cls, false));  // receiver first
    for (auto& prm : b.m->params) {
      if (prm.type.kind == FieldType::Ref) {
        // Constructor reference arguments may be null; method arguments are
        // existing objects (the paper's choice table has no null-arg calls).
        args.push_back(pick_ref(prm.type.ref_class, b.is_ctor));
      } else {
        std::string f = scalar_havoc_field(p, prm.type, aux);
        os << "        havoc " << f << ";\n";
        args.push_back(f);
      }
    }
    auto arglist = [&](size_t from) {
      std::string s;
      for (size_t i = from; i < args.size(); i++)
        s += (i > from ? ", " : "") + args[i];
      return s;
    };
    if (b.is_ctor) {
      os << "        r" << b.cls << " := new " << b.cls << "(" << arglist(0)
         << ");\n";
      used_refs.insert("r" + b.cls);
    } else if (b.m->ret_type.kind == FieldType::Ref) {
      std::string dst = "r" + b.m->ret_type.ref_class;
      os << "        " << dst << " := " << args[0] << "." << b.method << "("
         << arglist(1) << ");\n";
      used_refs.insert(dst);
    } else {
      os << "        " << args[0] << "." << b.method << "(" << arglist(1)
         << ");\n";
    }
    // Loop-head invariant: no client reference pins an object.
    for (auto& f : used_refs) os << "        " << f << " := null;\n";
    b.body = os.str();
  }

  std::ostringstream src;
  src << "class __Client {\n";
  for (auto& cd : p.classes)
    if (!cd.is_client) src << "  field r" << cd.name << ": ref " << cd.name << ";\n";
  int n = (int)branches.size();
  src << "  field __choice: int(0.." << std::max(n - 1, 0) << ");\n";
  for (auto& [name, t] : aux) src << "  field " << name << ": " << t.str() << ";\n";
  src << "  ctor() { }\n";
  src << "  public main() {\n";
  src << "    while (true) {\n";
  src << "      havoc __choice;\n";
  for (int i = 0; i < n; i++) {
    src << "      if (__choice == " << i << ") {  # " << branches[i].cls << "."
        << branches[i].method << "\n"
        << branches[i].body << "      } else {\n";
  }
  src << "        assume false;\n";  // no branches (or choice exhausted)
  for (int i = 0; i < n; i++) src << "      }\n";
  src << "      __choice := 0;\n";
  src << "    }\n";
  src << "  }\n";
  src << "}\n";

  // Parse in the context of the package classes: concatenate and reparse.
  std::string full = print_package(p) + src.str();
  Package with_client = parse_package(full);
  ClassDef client = *with_client.cls("__Client");
  client.is_client = true;
  return client;
}

OoProgram make_program_with_client(const Package& p, const ClassDef& client) {
  OoProgram prog;
  prog.package = p;
  prog.package.classes.push_back(client);
  prog.package.classes.back().is_client = true;
  prog.client = client.name;
  assign_locations(prog.package);
  return prog;
}

OoProgram make_program(const Package& p) {
  return make_program_with_client(p, most_general_client(p));
}

int client_loop_head(const OoProgram& prog) {
  const ClassDef* cc = prog.client_class();
  DPI_CHECK(cc && !cc->public_methods.empty(), "program has no client main");
  const Method& main = cc->public_methods[0];
  // The loop head is the destination of the first edge out of the initial
  // state (main's body is a single while(true) loop).
  for (auto& e : main.cfa.edges)
    if (e.src == main.cfa.initial) return main.cfa.first_loc + e.dst;
  return main.cfa.first_loc + main.cfa.initial;
}

int max_stack_depth(const OoProgram& prog) {
  // Longest path in the acyclic call graph, counting frames.
  std::map<std::string, const Method*> methods;
  const Package& p = prog.package;
  for (auto& cd : p.classes)
    for (auto* m : cd.all_methods()) methods[m->qualified()] = m;
  std::map<std::string, int> depth;
  std::function<int(const Method*)> go = [&](const Method* m) -> int {
    auto it = depth.find(m->qualified());
    if (it != depth.end()) return it->second;
    depth[m->qualified()] = 1;  // provisional; acyclicity checked elsewhere
    int best = 1;
    for (auto& e : m->cfa.edges) {
      const Method* callee = nullptr;
      if (e.op.kind == Operation::New) {
        const ClassDef* tc = p.cls(e.op.cls);
        if (tc) callee = &tc->ctor;
      } else if (e.op.kind == Operation::Call) {
        // Receiver type from the declared field type chain.
        const ClassDef* owner = p.cls(m->owner);
        ExprPtr r = e.op.recv;
        const ClassDef* rc = nullptr;
        if (owner && r && r->kind == Expr::Field) {
          const FieldDecl* fd = owner->field(r->name);
          if (fd && fd->type.kind == FieldType::Ref) rc = p.cls(fd->type.ref_class);
        }
        if (rc) callee = rc->method(e.op.method);
      }
      if (callee) best = std::max(best, 1 + go(callee));
    }
    depth[m->qualified()] = best;
    return best;
  };
  const ClassDef* cc = prog.client_class();
  return cc ? go(&cc->public_methods[0]) : 1;
}

}  // namespace dpi
