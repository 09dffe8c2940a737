#include "dpi/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace dpi {

namespace {

// ------------------------------------------------------------------ lexer

struct Token {
  enum Kind { Ident, Int, Punct, End } kind = End;
  std::string text;
  long long ival = 0;
  SourcePos pos;
  size_t off = 0;  // byte offset of the token start
};

struct Lexer {
  const std::string& src;
  size_t i = 0;
  int line = 1, col = 1;
  size_t prev_end = 0;  // offset just past the previously consumed token
  Token cur;

  explicit Lexer(const std::string& s) : src(s) { next(); }

  SourcePos pos() const { return {line, col}; }

  void advance(size_t n = 1) {
    for (size_t k = 0; k < n && i < src.size(); k++, i++) {
      if (src[i] == '\n') {
        line++;
        col = 1;
      } else {
        col++;
      }
    }
  }

  void skip_ws() {
    for (;;) {
      while (i < src.size() && std::isspace((unsigned char)src[i])) advance();
      if (i < src.size() && src[i] == '#') {
        while (i < src.size() && src[i] != '\n') advance();
        continue;
      }
      if (i + 1 < src.size() && src[i] == '/' && src[i + 1] == '/') {
        while (i < src.size() && src[i] != '\n') advance();
        continue;
      }
      break;
    }
  }

  void next() {
    prev_end = i;
    skip_ws();
    cur = Token{};
    cur.pos = pos();
    cur.off = i;
    if (i >= src.size()) {
      cur.kind = Token::End;
      return;
    }
    char c = src[i];
    if (std::isalpha((unsigned char)c) || c == '_') {
      size_t j = i;
      while (j < src.size() &&
             (std::isalnum((unsigned char)src[j]) || src[j] == '_'))
        j++;
      cur.kind = Token::Ident;
      cur.text = src.substr(i, j - i);
      advance(j - i);
      return;
    }
    if (std::isdigit((unsigned char)c)) {
      size_t j = i;
      while (j < src.size() && std::isdigit((unsigned char)src[j])) j++;
      cur.kind = Token::Int;
      cur.text = src.substr(i, j - i);
      cur.ival = std::stoll(cur.text);
      advance(j - i);
      return;
    }
    static const char* two[] = {":=", "==", "!=", "<=", ">=", "&&", "||", ".."};
    for (auto* t : two) {
      if (src.compare(i, 2, t) == 0) {
        cur.kind = Token::Punct;
        cur.text = t;
        advance(2);
        return;
      }
    }
    cur.kind = Token::Punct;
    cur.text = std::string(1, c);
    advance();
  }
};

// ------------------------------------------------------------ CFA builder

struct CfaBuilder {
  Cfa cfa;
  int fresh() { return cfa.n_states++; }
  void wire(int a, Operation op, int b) {
    cfa.edges.push_back({a, std::move(op), b});
  }
};

struct Parser {
  Lexer lx;
  Package pkg;

  explicit Parser(const std::string& s) : lx(s) {}

  [[noreturn]] void fail(const std::string& msg) {
    throw syntax_error(lx.cur.pos, msg + " (got '" +
                       (lx.cur.kind == Token::End ? "<eof>" : lx.cur.text) + "')");
  }

  bool at(const char* p) {
    return lx.cur.kind == Token::Punct && lx.cur.text == p;
  }
  bool at_kw(const char* k) {
    return lx.cur.kind == Token::Ident && lx.cur.text == k;
  }
  void expect(const char* p) {
    if (!at(p)) fail(std::string("expected '") + p + "'");
    lx.next();
  }
  void expect_kw(const char* k) {
    if (!at_kw(k)) fail(std::string("expected '") + k + "'");
    lx.next();
  }
  bool eat(const char* p) {
    if (at(p)) {
      lx.next();
      return true;
    }
    return false;
  }
  bool eat_kw(const char* k) {
    if (at_kw(k)) {
      lx.next();
      return true;
    }
    return false;
  }
  std::string ident(const char* what) {
    if (lx.cur.kind != Token::Ident) fail(std::string("expected ") + what);
    std::string s = lx.cur.text;
    lx.next();
    return s;
  }

  // ------------------------------------------------------------- types

  FieldType parse_type() {
    if (eat_kw("bool")) return FieldType::boolean();
    if (eat_kw("int")) {
      expect("(");
      if (lx.cur.kind != Token::Int) fail("expected range lower bound");
      int lo = (int)lx.cur.ival;
      lx.next();
      expect("..");
      if (lx.cur.kind != Token::Int) fail("expected range upper bound");
      int hi = (int)lx.cur.ival;
      lx.next();
      expect(")");
      if (hi < lo) fail("empty integer range");
      return FieldType::integer(lo, hi);
    }
    if (eat_kw("ref")) return FieldType::ref(ident("class name"));
    fail("expected type (bool, int(lo..hi) or ref C)");
  }

  // ------------------------------------------------- expression parsing
  // Identifiers resolve against the enclosing method scope: parameters
  // shadow class fields and are stored as method-qualified fields.

  struct Scope {
    const ClassDef* cls = nullptr;
    const Method* meth = nullptr;  // for param resolution
    std::string method_name;
  };

  ExprPtr resolve_ident(const Scope& sc, const std::string& name, SourcePos p) {
    if (sc.meth) {
      for (auto& prm : sc.meth->params) {
        if (prm.name == name) {
          auto e = Expr::mk_field(Expr::mk_this(), sc.method_name + "." + name);
          const_cast<Expr*>(e.get())->pos = p;
          return e;
        }
      }
    }
    auto e = Expr::mk_field(Expr::mk_this(), name);
    const_cast<Expr*>(e.get())->pos = p;
    return e;
  }

  ExprPtr parse_primary(const Scope& sc) {
    SourcePos p = lx.cur.pos;
    if (eat("(")) {
      auto e = parse_expr(sc);
      expect(")");
      return e;
    }
    if (eat("!")) return Expr::mk_not(parse_primary(sc));
    if (lx.cur.kind == Token::Int) {
      long long v = lx.cur.ival;
      lx.next();
      return Expr::mk_int(v);
    }
    if (lx.cur.kind != Token::Ident) fail("expected expression");
    std::string name = lx.cur.text;
    lx.next();
    if (name == "null") return Expr::mk_null();
    if (name == "true") return Expr::mk_bool(true);
    if (name == "false") return Expr::mk_bool(false);
    ExprPtr base;
    if (name == "this") {
      base = Expr::mk_this();
      if (!eat(".")) return base;
      name = ident("field name");
      base = Expr::mk_field(base, name);
    } else {
      base = resolve_ident(sc, name, p);
    }
    while (eat(".")) base = Expr::mk_field(base, ident("field name"));
    return base;
  }

  ExprPtr parse_add(const Scope& sc) {
    auto e = parse_primary(sc);
    for (;;) {
      if (eat("+")) e = Expr::mk_bin(BinOp::Add, e, parse_primary(sc));
      else if (eat("-")) e = Expr::mk_bin(BinOp::Sub, e, parse_primary(sc));
      else return e;
    }
  }

  ExprPtr parse_cmp(const Scope& sc) {
    auto e = parse_add(sc);
    if (eat("==")) return Expr::mk_bin(BinOp::Eq, e, parse_add(sc));
    if (eat("!=")) return Expr::mk_bin(BinOp::Ne, e, parse_add(sc));
    if (eat("<=")) return Expr::mk_bin(BinOp::Le, e, parse_add(sc));
    if (eat(">=")) return Expr::mk_bin(BinOp::Ge, e, parse_add(sc));
    if (eat("<")) return Expr::mk_bin(BinOp::Lt, e, parse_add(sc));
    if (eat(">")) return Expr::mk_bin(BinOp::Gt, e, parse_add(sc));
    return e;
  }

  ExprPtr parse_and(const Scope& sc) {
    auto e = parse_cmp(sc);
    while (eat("&&")) e = Expr::mk_bin(BinOp::And, e, parse_cmp(sc));
    return e;
  }

  ExprPtr parse_expr(const Scope& sc) {
    auto e = parse_and(sc);
    while (eat("||")) e = Expr::mk_bin(BinOp::Or, e, parse_and(sc));
    return e;
  }

  // -------------------------------------------------------- statements

  // Wires statements from state `q`; returns the fall-through state.
  int parse_block(const Scope& sc, CfaBuilder& b, int q, bool in_client) {
    expect("{");
    while (!at("}")) q = parse_stmt(sc, b, q, in_client);
    expect("}");
    return q;
  }

  // Call statements in package methods get implicit exception propagation:
  // the callee/constructed object's err bit aborts the caller.
  int add_err_propagation(CfaBuilder& b, int q, ExprPtr obj_expr,
                          SourcePos pos) {
    Operation to_final;
    to_final.kind = Operation::Assume;
    to_final.expr = Expr::mk_bin(BinOp::Eq, Expr::mk_field(obj_expr, "err"),
                                 Expr::mk_bool(true));
    to_final.pos = pos;
    b.wire(q, to_final, b.cfa.final);
    Operation cont;
    cont.kind = Operation::Assume;
    cont.expr = Expr::mk_bin(BinOp::Eq, Expr::mk_field(obj_expr, "err"),
                             Expr::mk_bool(false));
    cont.pos = pos;
    int q2 = b.fresh();
    b.wire(q, cont, q2);
    return q2;
  }

  int parse_stmt(const Scope& sc, CfaBuilder& b, int q, bool in_client) {
    SourcePos p = lx.cur.pos;
    if (eat_kw("if")) {
      expect("(");
      auto cond = parse_expr(sc);
      expect(")");
      Operation then_op{Operation::Assume, "", cond, "", "", nullptr, {}, p};
      Operation else_op{Operation::Assume, "", Expr::mk_not(cond), "", "",
                        nullptr, {}, p};
      int qt = b.fresh();
      b.wire(q, then_op, qt);
      int t_end = parse_block(sc, b, qt, in_client);
      int join = b.fresh();
      Operation nop{Operation::Assume, "", Expr::mk_bool(true), "", "",
                    nullptr, {}, p};
      b.wire(t_end, nop, join);
      if (eat_kw("else")) {
        int qe = b.fresh();
        b.wire(q, else_op, qe);
        int e_end = parse_block(sc, b, qe, in_client);
        b.wire(e_end, nop, join);
      } else {
        b.wire(q, else_op, join);
      }
      return join;
    }
    if (eat_kw("while")) {
      expect("(");
      auto cond = parse_expr(sc);
      expect(")");
      // `q` is the loop head (the cut point for the client's main loop).
      Operation body_op{Operation::Assume, "", cond, "", "", nullptr, {}, p};
      Operation exit_op{Operation::Assume, "", Expr::mk_not(cond), "", "",
                        nullptr, {}, p};
      int qb = b.fresh();
      b.wire(q, body_op, qb);
      int b_end = parse_block(sc, b, qb, in_client);
      Operation back{Operation::Assume, "", Expr::mk_bool(true), "", "",
                     nullptr, {}, p};
      b.wire(b_end, back, q);
      int after = b.fresh();
      b.wire(q, exit_op, after);
      return after;
    }
    if (eat_kw("assume")) {
      auto cond = parse_expr(sc);
      expect(";");
      Operation op{Operation::Assume, "", cond, "", "", nullptr, {}, p};
      int q2 = b.fresh();
      b.wire(q, op, q2);
      return q2;
    }
    if (eat_kw("havoc")) {
      std::string x = ident("field name");
      expect(";");
      Operation op{Operation::Havoc, x, nullptr, "", "", nullptr, {}, p};
      auto resolved = resolve_ident(sc, x, p);
      op.x = resolved->name;  // method-qualified if a parameter
      int q2 = b.fresh();
      b.wire(q, op, q2);
      return q2;
    }
    if (eat_kw("throw")) {
      expect(";");
      Operation op{Operation::Assign, "err", Expr::mk_bool(true), "", "",
                   nullptr, {}, p};
      b.wire(q, op, b.cfa.final);
      return b.fresh();  // dead state for anything that follows
    }
    if (eat_kw("return")) {
      if (eat(";")) {
        Operation nop{Operation::Assume, "", Expr::mk_bool(true), "", "",
                      nullptr, {}, p};
        b.wire(q, nop, b.cfa.final);
        return b.fresh();
      }
      auto e = parse_expr(sc);
      expect(";");
      Operation op{Operation::Assign, "ret", e, "", "", nullptr, {}, p};
      b.wire(q, op, b.cfa.final);
      return b.fresh();
    }

    // Assignment / call / construction. Forms:
    //   x := e;   x := new C(args);   x := y.m(args);   y.m(args);
    if (lx.cur.kind != Token::Ident) fail("expected statement");
    std::string first = ident("identifier");
    auto first_ref = resolve_ident(sc, first, p);

    if (eat(":=")) {
      if (eat_kw("new")) {
        std::string cname = ident("class name");
        auto args = parse_args(sc);
        expect(";");
        Operation op{Operation::New, first_ref->name, nullptr, cname, "",
                     nullptr, std::move(args), p};
        int q2 = b.fresh();
        b.wire(q, op, q2);
        return in_client ? q2 : add_err_propagation(b, q2, first_ref, p);
      }
      // Lookahead: `y.m(` is a call, everything else an expression.
      size_t save_i = lx.i;
      Token save_tok = lx.cur;
      int save_line = lx.line, save_col = lx.col;
      size_t save_prev = lx.prev_end;
      if (lx.cur.kind == Token::Ident) {
        std::string y = lx.cur.text;
        lx.next();
        if (at(".")) {
          lx.next();
          std::string m = ident("method name");
          if (at("(")) {
            auto recv = resolve_ident(sc, y, p);
            auto args = parse_args(sc);
            expect(";");
            Operation op{Operation::Call, first_ref->name, nullptr, "", m,
                         recv, std::move(args), p};
            int q2 = b.fresh();
            b.wire(q, op, q2);
            return in_client ? q2 : add_err_propagation(b, q2, recv, p);
          }
        }
      }
      lx.i = save_i;
      lx.cur = save_tok;
      lx.line = save_line;
      lx.col = save_col;
      lx.prev_end = save_prev;
      auto e = parse_expr(sc);
      expect(";");
      Operation op{Operation::Assign, first_ref->name, e, "", "", nullptr, {}, p};
      int q2 = b.fresh();
      b.wire(q, op, q2);
      return q2;
    }

    if (eat(".")) {
      std::string m = ident("method name");
      if (!at("(")) fail("expected '(' after method name");
      auto args = parse_args(sc);
      expect(";");
      Operation op{Operation::Call, "__ignore", nullptr, "", m, first_ref,
                   std::move(args), p};
      int q2 = b.fresh();
      b.wire(q, op, q2);
      return in_client ? q2 : add_err_propagation(b, q2, first_ref, p);
    }
    fail("expected ':=' or '.' in statement");
  }

  std::vector<ExprPtr> parse_args(const Scope& sc) {
    expect("(");
    std::vector<ExprPtr> args;
    if (!at(")")) {
      args.push_back(parse_expr(sc));
      while (eat(",")) args.push_back(parse_expr(sc));
    }
    expect(")");
    return args;
  }

  // ------------------------------------------------------------ methods

  Method parse_method(ClassDef& cd, const std::string& name, bool is_public,
                      bool is_ctor, SourcePos pos) {
    Method m;
    m.name = name;
    m.owner = cd.name;
    m.is_public = is_public;
    m.is_ctor = is_ctor;
    m.pos = pos;
    expect("(");
    if (!at(")")) {
      for (;;) {
        Param prm;
        prm.name = ident("parameter name");
        expect(":");
        prm.type = parse_type();
        m.params.push_back(prm);
        if (!eat(",")) break;
      }
    }
    expect(")");
    if (eat(":")) m.ret_type = parse_type();

    // Capture the body text verbatim for the printer.
    if (!at("{")) fail("expected method body");
    size_t open_off = lx.cur.off;

    CfaBuilder b;
    b.cfa.initial = b.fresh();
    b.cfa.final = b.fresh();
    Scope sc{&cd, &m, m.name};
    int end = parse_block(sc, b, b.cfa.initial, cd.is_client);
    m.body_src = lx.src.substr(open_off, lx.prev_end - open_off);

    Operation nop{Operation::Assume, "", Expr::mk_bool(true), "", "", nullptr,
                  {}, pos};
    b.wire(end, nop, b.cfa.final);
    for (auto& f : cd.fields) b.cfa.vars.push_back(f.name);
    m.cfa = std::move(b.cfa);
    return m;
  }

  // ------------------------------------------------------------ classes

  void add_implicit_fields(ClassDef& cd) {
    auto add = [&](const std::string& n, FieldType t) {
      if (cd.field(n)) return;
      FieldDecl fd;
      fd.name = n;
      fd.type = std::move(t);
      fd.implicit = true;
      cd.fields.push_back(fd);
    };
    add("err", FieldType::boolean());
    add("ret", FieldType::any());
    add("__ignore", FieldType::any());
    for (auto* m : cd.all_methods()) {
      for (auto& prm : m->params) {
        std::string qn = m->name + "." + prm.name;
        if (cd.field(qn))
          throw AnalysisError("DuplicateName",
                              "duplicate parameter field " + qn);
        FieldDecl fd;
        fd.name = qn;
        fd.type = prm.type;
        fd.implicit = true;
        cd.fields.push_back(fd);
      }
    }
  }

  ClassDef parse_class() {
    SourcePos p = lx.cur.pos;
    expect_kw("class");
    ClassDef cd;
    cd.pos = p;
    cd.name = ident("class name");
    if (cd.name == "nil" || cd.name == "null")
      throw AnalysisError("DuplicateName", "reserved class name " + cd.name);
    expect("{");
    bool have_ctor = false;
    std::set<std::string> member_names;
    auto check_dup = [&](const std::string& n, SourcePos dp) {
      if (!member_names.insert(n).second)
        throw AnalysisError("DuplicateName", dp.str() + ": duplicate member '" +
                                                 n + "' in class " + cd.name);
    };
    while (!at("}")) {
      SourcePos mp = lx.cur.pos;
      if (eat_kw("field")) {
        FieldDecl fd;
        fd.pos = mp;
        fd.name = ident("field name");
        check_dup(fd.name, mp);
        expect(":");
        fd.type = parse_type();
        if (eat_kw("hidden")) fd.hidden = true;
        expect(";");
        cd.fields.push_back(fd);
        continue;
      }
      bool prot = false;
      if (at_kw("protected")) {
        prot = true;
        lx.next();
      } else if (at_kw("public")) {
        lx.next();
      } else if (at_kw("ctor")) {
        // plain `ctor` is public
      } else {
        fail("expected field, ctor, public or protected member");
      }
      if (eat_kw("ctor")) {
        if (have_ctor)
          throw AnalysisError("DuplicateName",
                              mp.str() + ": duplicate constructor in " + cd.name);
        have_ctor = true;
        cd.ctor_public = !prot;
        cd.ctor = parse_method(cd, cd.name, !prot, true, mp);
        continue;
      }
      std::string mname = ident("method name");
      check_dup(mname, mp);
      Method m = parse_method(cd, mname, !prot, false, mp);
      if (prot) cd.protected_methods.push_back(std::move(m));
      else cd.public_methods.push_back(std::move(m));
    }
    expect("}");
    if (!have_ctor)
      throw syntax_error(p, "class " + cd.name + " has no constructor");
    return cd;
  }

  Package parse() {
    if (eat_kw("package")) {
      pkg.name = ident("package name");
      expect(";");
    }
    if (lx.cur.kind == Token::End)
      throw syntax_error(lx.cur.pos, "empty document");
    while (lx.cur.kind != Token::End) {
      ClassDef cd = parse_class();
      if (pkg.cls(cd.name))
        throw AnalysisError("DuplicateName", "duplicate class " + cd.name);
      pkg.classes.push_back(std::move(cd));
    }
    // Implicit fields are added after parsing all classes so reference
    // types can be validated later against the full class list.
    for (auto& cd : pkg.classes) {
      add_implicit_fields(cd);
      for (auto* m : cd.all_methods())
        const_cast<Method*>(m)->cfa.vars.clear();
      for (auto* m : cd.all_methods())
        for (auto& f : cd.fields)
          const_cast<Method*>(m)->cfa.vars.push_back(f.name);
    }
    assign_locations(pkg);
    return pkg;
  }
};

}  // namespace

void assign_locations(Package& p) {
  p.n_locs = 0;
  p.loc_names.clear();
  p.loc_method.clear();
  for (auto& cd : p.classes) {
    for (auto* mc : cd.all_methods()) {
      auto* m = const_cast<Method*>(mc);
      m->cfa.first_loc = p.n_locs;
      p.n_locs += m->cfa.n_states;
      for (int s = 0; s < m->cfa.n_states; s++) {
        p.loc_names.push_back(m->qualified() + "/" + std::to_string(s));
        p.loc_method.push_back(m);
      }
    }
  }
}

Package parse_package(const std::string& source_text) {
  Parser ps(source_text);
  return ps.parse();
}

std::string print_package(const Package& p) {
  std::string out;
  if (p.name != "package") out += "package " + p.name + ";\n\n";
  for (auto& cd : p.classes) {
    out += "class " + cd.name + " {\n";
    for (auto& fd : cd.fields) {
      if (fd.implicit) continue;
      out += "  field " + fd.name + ": " + fd.type.str() +
             (fd.hidden ? " hidden" : "") + ";\n";
    }
    auto emit = [&](const Method& m, const char* kw, bool named) {
      out += std::string("  ") + kw + (named ? " " + m.name : std::string());
      out += "(";
      for (size_t i = 0; i < m.params.size(); i++) {
        if (i) out += ", ";
        out += m.params[i].name + ": " + m.params[i].type.str();
      }
      out += ")";
      if (m.ret_type.kind != FieldType::Any) out += ": " + m.ret_type.str();
      out += " " + m.body_src + "\n";
    };
    emit(cd.ctor, cd.ctor_public ? "ctor" : "protected ctor", false);
    for (auto& m : cd.public_methods) emit(m, "public", true);
    for (auto& m : cd.protected_methods) emit(m, "protected", true);
    out += "}\n\n";
  }
  return out;
}

// --------------------------------------------------- structural equality

static bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Expr::Null:
    case Expr::This: return true;
    case Expr::BoolLit: return a->bval == b->bval;
    case Expr::IntLit: return a->ival == b->ival;
    case Expr::Field: return a->name == b->name && expr_equal(a->a, b->a);
    case Expr::Unary: return expr_equal(a->a, b->a);
    case Expr::Binary:
      return a->op == b->op && expr_equal(a->a, b->a) && expr_equal(a->b, b->b);
    case Expr::Obj: return a->obj == b->obj;
    case Expr::Sym: return a->name == b->name;
    case Expr::Ite:
      return expr_equal(a->c, b->c) && expr_equal(a->a, b->a) &&
             expr_equal(a->b, b->b);
    case Expr::Clamp:
      return a->lo == b->lo && a->hi == b->hi && expr_equal(a->a, b->a);
  }
  return false;
}

static bool op_equal(const Operation& a, const Operation& b) {
  if (a.kind != b.kind || a.x != b.x || a.cls != b.cls || a.method != b.method)
    return false;
  if (!expr_equal(a.expr, b.expr) || !expr_equal(a.recv, b.recv)) return false;
  if (a.args.size() != b.args.size()) return false;
  for (size_t i = 0; i < a.args.size(); i++)
    if (!expr_equal(a.args[i], b.args[i])) return false;
  return true;
}

static bool cfa_equal(const Cfa& a, const Cfa& b) {
  if (a.n_states != b.n_states || a.initial != b.initial || a.final != b.final)
    return false;
  if (a.edges.size() != b.edges.size()) return false;
  for (size_t i = 0; i < a.edges.size(); i++) {
    if (a.edges[i].src != b.edges[i].src || a.edges[i].dst != b.edges[i].dst ||
        !op_equal(a.edges[i].op, b.edges[i].op))
      return false;
  }
  return true;
}

static bool method_equal(const Method& a, const Method& b) {
  if (a.name != b.name || a.owner != b.owner || a.is_public != b.is_public ||
      a.is_ctor != b.is_ctor)
    return false;
  if (a.params.size() != b.params.size()) return false;
  for (size_t i = 0; i < a.params.size(); i++)
    if (a.params[i].name != b.params[i].name ||
        !(a.params[i].type == b.params[i].type))
      return false;
  return a.ret_type == b.ret_type && cfa_equal(a.cfa, b.cfa);
}

bool package_equal(const Package& a, const Package& b) {
  if (a.name != b.name || a.classes.size() != b.classes.size()) return false;
  for (size_t i = 0; i < a.classes.size(); i++) {
    const auto& ca = a.classes[i];
    const auto& cb = b.classes[i];
    if (ca.name != cb.name || ca.ctor_public != cb.ctor_public) return false;
    if (ca.fields.size() != cb.fields.size()) return false;
    for (size_t j = 0; j < ca.fields.size(); j++)
      if (ca.fields[j].name != cb.fields[j].name ||
          !(ca.fields[j].type == cb.fields[j].type) ||
          ca.fields[j].hidden != cb.fields[j].hidden)
        return false;
    if (!method_equal(ca.ctor, cb.ctor)) return false;
    if (ca.public_methods.size() != cb.public_methods.size() ||
        ca.protected_methods.size() != cb.protected_methods.size())
      return false;
    for (size_t j = 0; j < ca.public_methods.size(); j++)
      if (!method_equal(ca.public_methods[j], cb.public_methods[j]))
        return false;
    for (size_t j = 0; j < ca.protected_methods.size(); j++)
      if (!method_equal(ca.protected_methods[j], cb.protected_methods[j]))
        return false;
  }
  return true;
}

}  // namespace dpi
