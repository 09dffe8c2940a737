#pragma once

// Package model: classes with finite-domain scalar and reference fields,
// methods as control flow automata over the fields.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dpi/diag.hpp"

namespace dpi {

// ---------------------------------------------------------------- types

struct ScalarDomain {
  int lo = 0;
  int hi = 1;  // bool is 0..1
  bool is_bool = false;
  int size() const { return hi - lo + 1; }
  int clamp(long long v) const {
    if (v < lo) return lo;
    if (v > hi) return hi;
    return (int)v;
  }
  bool operator==(const ScalarDomain& o) const {
    return lo == o.lo && hi == o.hi && is_bool == o.is_bool;
  }
};

struct FieldType {
  enum Kind { Scalar, Ref, Any } kind = Scalar;  // Any: ret/__ignore slots
  ScalarDomain dom;      // Scalar
  std::string ref_class; // Ref
  bool operator==(const FieldType& o) const {
    return kind == o.kind && dom == o.dom && ref_class == o.ref_class;
  }
  static FieldType boolean() {
    FieldType t;
    t.dom.is_bool = true;
    return t;
  }
  static FieldType integer(int lo, int hi) {
    FieldType t;
    t.dom.lo = lo;
    t.dom.hi = hi;
    return t;
  }
  static FieldType ref(std::string c) {
    FieldType t;
    t.kind = Ref;
    t.ref_class = std::move(c);
    return t;
  }
  static FieldType any() {
    FieldType t;
    t.kind = Any;
    return t;
  }
  std::string str() const;
};

// ----------------------------------------------------------- expressions

enum class BinOp { Eq, Ne, Lt, Le, Gt, Ge, Add, Sub, And, Or };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Expressions double as formulas for the entailment engine: `Obj` nodes
// (explicit object constants) and `Sym` nodes (fresh havoc symbols) never
// appear in parsed programs, only in formulas built by wp/Gamma.
struct Expr {
  enum Kind {
    Null,
    This,
    BoolLit,
    IntLit,
    Field,    // base.field ; base == nullptr means `this`
    Unary,    // !a  (bool)
    Binary,   // a op b
    Obj,      // object constant (formula-only)
    Sym,      // free scalar symbol (formula-only)
    Ite,      // cond ? a : b (formula-only, from wp substitution)
    Clamp,    // saturate a into [lo, hi] (inserted at assignments)
  } kind;

  bool bval = false;
  long long ival = 0;       // IntLit
  std::string name;         // Field: field name; Sym: symbol name
  ExprPtr a, b, c;          // children (Field base in a; Ite cond in c)
  BinOp op = BinOp::Eq;
  uint32_t obj = 0;         // Obj: object id
  int lo = 0, hi = 0;       // Clamp
  SourcePos pos;

  static ExprPtr mk_null() { return mk(Null); }
  static ExprPtr mk_this() { return mk(This); }
  static ExprPtr mk_bool(bool v) {
    auto e = mk(BoolLit);
    const_cast<Expr*>(e.get())->bval = v;
    return e;
  }
  static ExprPtr mk_int(long long v) {
    auto e = mk(IntLit);
    const_cast<Expr*>(e.get())->ival = v;
    return e;
  }
  static ExprPtr mk_field(ExprPtr base, std::string f) {
    auto e = mk(Field);
    auto* w = const_cast<Expr*>(e.get());
    w->a = std::move(base);
    w->name = std::move(f);
    return e;
  }
  static ExprPtr mk_not(ExprPtr x) {
    auto e = mk(Unary);
    const_cast<Expr*>(e.get())->a = std::move(x);
    return e;
  }
  static ExprPtr mk_bin(BinOp o, ExprPtr x, ExprPtr y) {
    auto e = mk(Binary);
    auto* w = const_cast<Expr*>(e.get());
    w->op = o;
    w->a = std::move(x);
    w->b = std::move(y);
    return e;
  }
  static ExprPtr mk_obj(uint32_t id) {
    auto e = mk(Obj);
    const_cast<Expr*>(e.get())->obj = id;
    return e;
  }
  static ExprPtr mk_sym(std::string n) {
    auto e = mk(Sym);
    const_cast<Expr*>(e.get())->name = std::move(n);
    return e;
  }
  static ExprPtr mk_ite(ExprPtr cond, ExprPtr t, ExprPtr f) {
    auto e = mk(Ite);
    auto* w = const_cast<Expr*>(e.get());
    w->c = std::move(cond);
    w->a = std::move(t);
    w->b = std::move(f);
    return e;
  }
  static ExprPtr mk_clamp(ExprPtr x, int lo, int hi) {
    auto e = mk(Clamp);
    auto* w = const_cast<Expr*>(e.get());
    w->a = std::move(x);
    w->lo = lo;
    w->hi = hi;
    return e;
  }

 private:
  static ExprPtr mk(Kind k) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    return e;
  }
};

std::string expr_str(const ExprPtr& e);

// ------------------------------------------------------------ operations

struct Operation {
  enum Kind {
    Assign,   // this.x := e
    Assume,   // assume p
    New,      // this.x := new C(args)
    Call,     // this.x := this.y.m(args)   (y may be a 1-level path)
    Havoc,    // havoc this.x  (client only; x scalar or reference)
  } kind = Assume;

  std::string x;                 // target field (Assign/New/Call/Havoc)
  ExprPtr expr;                  // Assign rhs / Assume predicate
  std::string cls;               // New: class name
  std::string method;            // Call: method name (unqualified)
  ExprPtr recv;                  // Call: receiver expression (field path)
  std::vector<ExprPtr> args;     // New/Call
  SourcePos pos;

  std::string str() const;
};

struct CfaEdge {
  int src = 0;
  Operation op;
  int dst = 0;
};

// F = (X, Q, q0, qf, T). States are indices into a package-wide location
// table so all CFAs are over disjoint control locations.
struct Cfa {
  std::vector<std::string> vars;  // fields in scope (owning class fields)
  int n_states = 0;
  int initial = 0;
  int final = 0;
  std::vector<CfaEdge> edges;
  int first_loc = 0;  // global id of state 0; global loc = first_loc + state
};

struct Param {
  std::string name;
  FieldType type;
};

struct Method {
  std::string name;
  std::vector<Param> params;
  FieldType ret_type = FieldType::any();  // Any when no `return e`
  bool is_public = true;
  bool is_ctor = false;
  Cfa cfa;
  std::string owner;     // class name
  std::string body_src;  // verbatim body text, kept for the printer
  SourcePos pos;
  std::string qualified() const { return owner + "." + name; }
};

struct FieldDecl {
  std::string name;
  FieldType type;
  bool hidden = false;    // recursive reference field: excluded from AR
  bool implicit = false;  // err / ret / __ignore / params
  SourcePos pos;
};

struct ClassDef {
  std::string name;
  std::vector<FieldDecl> fields;  // declared + implicit
  Method ctor;
  std::vector<Method> public_methods;
  std::vector<Method> protected_methods;
  bool ctor_public = true;
  bool is_client = false;
  SourcePos pos;

  const FieldDecl* field(const std::string& f) const {
    for (auto& fd : fields)
      if (fd.name == f) return &fd;
    return nullptr;
  }
  const Method* method(const std::string& m) const {
    for (auto& mm : public_methods)
      if (mm.name == m) return &mm;
    for (auto& mm : protected_methods)
      if (mm.name == m) return &mm;
    return nullptr;
  }
  std::vector<const Method*> all_methods() const {
    std::vector<const Method*> v;
    v.push_back(&ctor);
    for (auto& m : public_methods) v.push_back(&m);
    for (auto& m : protected_methods) v.push_back(&m);
    return v;
  }
};

struct Package {
  std::string name = "package";
  std::vector<ClassDef> classes;
  int n_locs = 0;                         // global control locations
  std::vector<std::string> loc_names;     // "Viewer.set/3"
  std::vector<const Method*> loc_method;  // owning method per location

  const ClassDef* cls(const std::string& c) const {
    for (auto& cd : classes)
      if (cd.name == c) return &cd;
    return nullptr;
  }
  int class_index(const std::string& c) const {
    for (size_t i = 0; i < classes.size(); i++)
      if (classes[i].name == c) return (int)i;
    return -1;
  }
};

// An OO program: the package extended with a client (normally the MGC).
struct OoProgram {
  Package package;       // includes the client as the last class
  std::string client;    // client class name
  const ClassDef* client_class() const { return package.cls(client); }
};

}  // namespace dpi
