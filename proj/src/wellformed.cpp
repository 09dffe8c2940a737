#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "dpi/package_ops.hpp"

namespace dpi {

namespace {

struct Checker {
  const Package& p;
  std::vector<Diagnostic>& out;

  void diag(const std::string& kind, SourcePos pos, const std::string& msg) {
    out.push_back({kind, msg, pos});
  }

  // Type of an expression, or nullopt when the expression is ill-formed
  // (a diagnostic has been emitted).
  std::optional<FieldType> type_of(const ClassDef& cd, const ExprPtr& e) {
    switch (e->kind) {
      case Expr::Null: {
        FieldType t = FieldType::ref("");  // ref to any class
        return t;
      }
      case Expr::This: return FieldType::ref(cd.name);
      case Expr::BoolLit: return FieldType::boolean();
      case Expr::IntLit: return FieldType::integer((int)e->ival, (int)e->ival);
      case Expr::Field: {
        auto bt = type_of(cd, e->a);
        if (!bt) return std::nullopt;
        if (bt->kind == FieldType::Any) return FieldType::any();
        if (bt->kind != FieldType::Ref) {
          diag("TypeDiagnostic", e->pos,
               "field access through non-reference in " + cd.name);
          return std::nullopt;
        }
        const ClassDef* bc = bt->ref_class == cd.name ? &cd : p.cls(bt->ref_class);
        if (!bc) {
          diag("TypeDiagnostic", e->pos, "unknown class " + bt->ref_class);
          return std::nullopt;
        }
        const FieldDecl* fd = bc->field(e->name);
        if (!fd) {
          diag("TypeDiagnostic", e->pos,
               "no field " + e->name + " in class " + bc->name);
          return std::nullopt;
        }
        return fd->type;
      }
      case Expr::Unary: {
        auto t = type_of(cd, e->a);
        if (t && !(t->kind == FieldType::Scalar && t->dom.is_bool))
          diag("TypeDiagnostic", e->pos, "'!' needs a boolean operand");
        return FieldType::boolean();
      }
      case Expr::Binary: {
        auto ta = type_of(cd, e->a);
        auto tb = type_of(cd, e->b);
        switch (e->op) {
          case BinOp::And:
          case BinOp::Or:
            return FieldType::boolean();
          case BinOp::Eq:
          case BinOp::Ne: {
            if (ta && tb) {
              bool ra = ta->kind == FieldType::Ref;
              bool rb = tb->kind == FieldType::Ref;
              if (ra != rb && ta->kind != FieldType::Any &&
                  tb->kind != FieldType::Any)
                diag("TypeDiagnostic", e->pos,
                     "equality between reference and scalar");
            }
            return FieldType::boolean();
          }
          case BinOp::Lt:
          case BinOp::Le:
          case BinOp::Gt:
          case BinOp::Ge:
            if (ta && ta->kind == FieldType::Ref)
              diag("TypeDiagnostic", e->pos, "ordering on references");
            return FieldType::boolean();
          case BinOp::Add:
          case BinOp::Sub: {
            if ((ta && ta->kind == FieldType::Ref) ||
                (tb && tb->kind == FieldType::Ref))
              diag("TypeDiagnostic", e->pos, "arithmetic on references");
            FieldType t = FieldType::integer(-1 << 20, 1 << 20);
            return t;
          }
        }
        return std::nullopt;
      }
      default:
        return std::nullopt;  // formula-only nodes never parse
    }
  }

  static bool assignable(const FieldType& dst, const FieldType& src) {
    if (dst.kind == FieldType::Any || src.kind == FieldType::Any) return true;
    if (dst.kind == FieldType::Ref)
      return src.kind == FieldType::Ref &&
             (src.ref_class.empty() || src.ref_class == dst.ref_class);
    if (src.kind == FieldType::Ref) return false;
    if (dst.dom.is_bool != src.dom.is_bool) return false;
    return true;  // integer ranges saturate on assignment
  }

  void check_method(const ClassDef& cd, const Method& m) {
    for (auto& edge : m.cfa.edges) {
      const Operation& op = edge.op;
      switch (op.kind) {
        case Operation::Assign: {
          const FieldDecl* fd = cd.field(op.x);
          if (!fd) {
            diag("TypeDiagnostic", op.pos,
                 "assignment to unknown field " + op.x + " in " + cd.name);
            break;
          }
          auto t = type_of(cd, op.expr);
          if (t && !assignable(fd->type, *t))
            diag("TypeDiagnostic", op.pos,
                 "cannot assign " + t->str() + " to " + op.x + ": " +
                     fd->type.str());
          break;
        }
        case Operation::Assume: {
          auto t = type_of(cd, op.expr);
          if (t && !(t->kind == FieldType::Scalar && t->dom.is_bool))
            diag("TypeDiagnostic", op.pos, "assume needs a boolean predicate");
          break;
        }
        case Operation::Havoc: {
          if (!cd.is_client)
            diag("HavocDiagnostic", op.pos,
                 "havoc outside the client: " + cd.name + "." + m.name);
          if (!cd.field(op.x))
            diag("TypeDiagnostic", op.pos, "havoc of unknown field " + op.x);
          break;
        }
        case Operation::New: {
          const ClassDef* tc = p.cls(op.cls);
          if (!tc) {
            diag("TypeDiagnostic", op.pos, "new of unknown class " + op.cls);
            break;
          }
          if (tc->is_client)
            diag("TypeDiagnostic", op.pos, "cannot construct the client");
          check_call_args(cd, op, tc->ctor);
          const FieldDecl* fd = cd.field(op.x);
          if (fd && !assignable(fd->type, FieldType::ref(op.cls)))
            diag("TypeDiagnostic", op.pos,
                 "cannot store new " + op.cls + " in " + op.x);
          if (cd.is_client && !tc->ctor_public)
            diag("VisibilityDiagnostic", op.pos,
                 "client constructs " + op.cls + " whose ctor is protected");
          break;
        }
        case Operation::Call: {
          auto rt = type_of(cd, op.recv);
          if (!rt) break;
          if (rt->kind != FieldType::Ref || rt->ref_class.empty()) {
            diag("TypeDiagnostic", op.pos, "call on non-reference receiver");
            break;
          }
          const ClassDef* rc = p.cls(rt->ref_class);
          if (!rc) {
            diag("TypeDiagnostic", op.pos, "unknown class " + rt->ref_class);
            break;
          }
          const Method* callee = rc->method(op.method);
          if (!callee) {
            diag("TypeDiagnostic", op.pos,
                 "no method " + op.method + " in class " + rc->name);
            break;
          }
          if (cd.is_client && !callee->is_public)
            diag("VisibilityDiagnostic", op.pos,
                 "client calls protected method " + callee->qualified());
          check_call_args(cd, op, *callee);
          break;
        }
      }
    }
  }

  void check_call_args(const ClassDef& cd, const Operation& op,
                       const Method& callee) {
    if (op.args.size() != callee.params.size()) {
      diag("TypeDiagnostic", op.pos,
           callee.qualified() + " expects " +
               std::to_string(callee.params.size()) + " arguments, got " +
               std::to_string(op.args.size()));
      return;
    }
    for (size_t i = 0; i < op.args.size(); i++) {
      auto t = type_of(cd, op.args[i]);
      if (t && !assignable(callee.params[i].type, *t))
        diag("TypeDiagnostic", op.pos,
             "argument " + std::to_string(i) + " of " + callee.qualified() +
                 ": cannot pass " + t->str() + " as " +
                 callee.params[i].type.str());
    }
  }

  // Static call graph over methods; report any cycle (no recursion).
  void check_acyclic() {
    std::map<std::string, std::vector<std::string>> succ;
    std::map<std::string, const Method*> methods;
    for (auto& cd : p.classes) {
      for (auto* m : cd.all_methods()) {
        methods[m->qualified()] = m;
        auto& edges = succ[m->qualified()];
        for (auto& e : m->cfa.edges) {
          if (e.op.kind == Operation::New) {
            const ClassDef* tc = p.cls(e.op.cls);
            if (tc) edges.push_back(tc->ctor.qualified());
          } else if (e.op.kind == Operation::Call) {
            std::vector<Diagnostic> scratch;  // no duplicate type diags here
            Checker self{p, scratch};
            auto rt = self.type_of(cd, e.op.recv);
            if (rt && rt->kind == FieldType::Ref) {
              const ClassDef* rc = p.cls(rt->ref_class);
              if (rc) {
                const Method* callee = rc->method(e.op.method);
                if (callee) edges.push_back(callee->qualified());
              }
            }
          }
        }
      }
    }
    std::map<std::string, int> state;  // 0 unseen, 1 on stack, 2 done
    std::function<void(const std::string&)> dfs = [&](const std::string& m) {
      state[m] = 1;
      for (auto& s : succ[m]) {
        if (state[s] == 1) {
          diag("RecursionDiagnostic", methods.count(s) ? methods[s]->pos
                                                       : SourcePos{},
               "recursive call cycle through " + s);
        } else if (state[s] == 0) {
          dfs(s);
        }
      }
      state[m] = 2;
    };
    for (auto& [name, m] : methods)
      if (state[name] == 0) dfs(name);
  }

  void run() {
    int clients = 0;
    for (auto& cd : p.classes) {
      if (cd.is_client) {
        clients++;
        if (cd.public_methods.size() != 1 ||
            cd.public_methods[0].name != "main" ||
            !cd.protected_methods.empty())
          diag("ClientDiagnostic", cd.pos,
               "client must have exactly one public method main");
        for (auto& fd : cd.fields) {
          if (fd.type.kind == FieldType::Ref && !fd.type.ref_class.empty() &&
              !p.cls(fd.type.ref_class))
            diag("TypeDiagnostic", fd.pos,
                 "client field of unknown class " + fd.type.ref_class);
        }
      }
      for (auto& fd : cd.fields) {
        if (fd.type.kind == FieldType::Ref && !fd.type.ref_class.empty() &&
            !p.cls(fd.type.ref_class))
          diag("UnknownType", fd.pos,
               "field " + cd.name + "." + fd.name + " of unknown class " +
                   fd.type.ref_class);
      }
      for (auto* m : cd.all_methods()) check_method(cd, *m);
    }
    (void)clients;
    check_acyclic();
  }
};

}  // namespace

std::vector<Diagnostic> check_well_formed(const Package& p) {
  std::vector<Diagnostic> out;
  Checker{p, out}.run();
  // Deterministic order independent of class order: sort by kind+message.
  std::sort(out.begin(), out.end(), [](const Diagnostic& a, const Diagnostic& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.message < b.message;
  });
  return out;
}

}  // namespace dpi
