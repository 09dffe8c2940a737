#include "dpi/predcfg.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <functional>
#include <set>

#include "dpi/parser.hpp"

namespace dpi {

namespace {

// Tiny recursive-descent expression parser sharing the package DSL's
// grammar; the free variable name maps to `this`.
struct PExpr {
  const std::string& s;
  size_t i = 0;
  std::string freevar;

  void ws() {
    while (i < s.size() && std::isspace((unsigned char)s[i])) i++;
  }
  bool lit(const char* t) {
    ws();
    size_t n = strlen(t);
    if (s.compare(i, n, t) == 0) {
      i += n;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& m) {
    throw AnalysisError("PredicateSyntaxError",
                        m + " near '" + s.substr(i, 16) + "'");
  }
  std::string ident() {
    ws();
    size_t j = i;
    while (j < s.size() && (std::isalnum((unsigned char)s[j]) || s[j] == '_'))
      j++;
    if (j == i) fail("expected identifier");
    std::string r = s.substr(i, j - i);
    i = j;
    return r;
  }

  ExprPtr primary() {
    ws();
    if (lit("(")) {
      auto e = expr();
      if (!lit(")")) fail("expected ')'");
      return e;
    }
    if (lit("!")) return Expr::mk_not(primary());
    if (i < s.size() && std::isdigit((unsigned char)s[i])) {
      size_t j = i;
      while (j < s.size() && std::isdigit((unsigned char)s[j])) j++;
      long long v = std::stoll(s.substr(i, j - i));
      i = j;
      return Expr::mk_int(v);
    }
    std::string n = ident();
    if (n == "true") return Expr::mk_bool(true);
    if (n == "false") return Expr::mk_bool(false);
    if (n == "null") return Expr::mk_null();
    ExprPtr base;
    if (n == freevar) {
      base = Expr::mk_this();
    } else {
      base = Expr::mk_field(Expr::mk_this(), n);  // bare field of the var
    }
    while (lit(".")) base = Expr::mk_field(base, ident());
    return base;
  }
  ExprPtr add() {
    auto e = primary();
    for (;;) {
      if (lit("+")) e = Expr::mk_bin(BinOp::Add, e, primary());
      else if (lit("-")) e = Expr::mk_bin(BinOp::Sub, e, primary());
      else return e;
    }
  }
  ExprPtr cmp() {
    auto e = add();
    if (lit("==")) return Expr::mk_bin(BinOp::Eq, e, add());
    if (lit("!=")) return Expr::mk_bin(BinOp::Ne, e, add());
    if (lit("<=")) return Expr::mk_bin(BinOp::Le, e, add());
    if (lit(">=")) return Expr::mk_bin(BinOp::Ge, e, add());
    if (lit("<")) return Expr::mk_bin(BinOp::Lt, e, add());
    if (lit(">")) return Expr::mk_bin(BinOp::Gt, e, add());
    return e;
  }
  ExprPtr conj() {
    auto e = cmp();
    while (lit("&&")) e = Expr::mk_bin(BinOp::And, e, cmp());
    return e;
  }
  ExprPtr expr() {
    auto e = conj();
    while (lit("||")) e = Expr::mk_bin(BinOp::Or, e, conj());
    return e;
  }
};

ExprPtr parse_pred_expr(const std::string& text, const std::string& freevar) {
  PExpr p{text, 0, freevar};
  auto e = p.expr();
  p.ws();
  if (p.i != text.size()) p.fail("trailing input");
  return e;
}

// Collect (class, field) reads of a predicate body over class `cls`,
// resolving dereference chains through declared reference fields.
void collect_reads(const ProgramIndex& px, int cls, const ExprPtr& e,
                   std::vector<std::pair<int, int>>& out, bool& hidden) {
  std::function<int(const ExprPtr&)> cls_of = [&](const ExprPtr& x) -> int {
    if (x->kind == Expr::This) return cls;
    if (x->kind == Expr::Field) {
      int bc = cls_of(x->a);
      if (bc < 0) return -1;
      int fi = px.field_of(bc, x->name);
      if (fi < 0) return -1;
      const FieldInfo& f = px.classes[bc].fields[fi];
      if (f.type.kind == FieldType::Ref) return px.class_of(f.type.ref_class);
      return -1;
    }
    return -1;
  };
  std::function<void(const ExprPtr&)> walk = [&](const ExprPtr& x) {
    if (!x) return;
    if (x->kind == Expr::Field) {
      int bc = cls_of(x->a);
      if (bc < 0)
        throw AnalysisError("PredicateSyntaxError",
                            "cannot resolve predicate read of " + x->name);
      int fi = px.field_of(bc, x->name);
      if (fi < 0)
        throw AnalysisError("PredicateSyntaxError",
                            "predicate reads unknown field " + x->name);
      out.push_back({bc, fi});
      if (px.classes[bc].fields[fi].hidden) hidden = true;
      walk(x->a);
      return;
    }
    walk(x->a);
    walk(x->b);
    walk(x->c);
  };
  walk(e);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
}

void add_implicit(PredicateConfig& pc, const ProgramIndex& px) {
  size_t ncls = px.classes.size();
  pc.class_preds.assign(ncls, {});
  pc.class_ar.assign(ncls, {});

  for (size_t c = 0; c < ncls; c++) {
    PredDef pd;
    pd.name = "err";
    pd.cls = (int)c;
    pd.is_err = true;
    pd.body = Expr::mk_bin(BinOp::Eq, Expr::mk_field(Expr::mk_this(), "err"),
                           Expr::mk_bool(true));
    pd.reads = {{(int)c, px.field_of((int)c, "err")}};
    pc.preds.push_back(pd);
  }

  // Implicit AR: client reference fields, reference parameters, ret and
  // __ignore of every class. Hidden fields never enter AR.
  for (size_t c = 0; c < ncls; c++) {
    const ClassInfo& ci = px.classes[c];
    for (size_t fi = 0; fi < ci.fields.size(); fi++) {
      const FieldInfo& f = ci.fields[fi];
      if (f.hidden) continue;
      bool take = false;
      if (ci.is_client && f.type.kind == FieldType::Ref) take = true;
      if (f.type.kind == FieldType::Any) take = true;  // ret / __ignore
      if (f.implicit && f.type.kind == FieldType::Ref) take = true;  // params
      if (take) pc.class_ar[c].push_back((int)fi);
    }
  }
}

void finalize(PredicateConfig& pc) {
  for (auto& cp : pc.class_preds) cp.clear();
  for (size_t i = 0; i < pc.preds.size(); i++)
    pc.class_preds[pc.preds[i].cls].push_back((int)i);
  for (auto& ar : pc.class_ar) {
    std::sort(ar.begin(), ar.end());
    ar.erase(std::unique(ar.begin(), ar.end()), ar.end());
  }
}

}  // namespace

PredicateConfig default_predicate_config(const ProgramIndex& px) {
  PredicateConfig pc;
  add_implicit(pc, px);
  finalize(pc);
  return pc;
}

PredicateConfig parse_predicate_config(const std::string& text,
                                       const ProgramIndex& px) {
  PredicateConfig pc;
  add_implicit(pc, px);

  size_t i = 0;
  auto ws = [&] {
    for (;;) {
      while (i < text.size() && std::isspace((unsigned char)text[i])) i++;
      if (i < text.size() && text[i] == '#') {
        while (i < text.size() && text[i] != '\n') i++;
        continue;
      }
      break;
    }
  };
  auto ident = [&]() -> std::string {
    ws();
    size_t j = i;
    while (j < text.size() &&
           (std::isalnum((unsigned char)text[j]) || text[j] == '_'))
      j++;
    if (j == i)
      throw AnalysisError("PredicateSyntaxError",
                          "expected identifier near '" + text.substr(i, 16) + "'");
    std::string r = text.substr(i, j - i);
    i = j;
    return r;
  };
  auto expect = [&](char c) {
    ws();
    if (i >= text.size() || text[i] != c)
      throw AnalysisError("PredicateSyntaxError",
                          std::string("expected '") + c + "' near '" +
                              text.substr(i, 16) + "'");
    i++;
  };

  for (;;) {
    ws();
    if (i >= text.size()) break;
    std::string kw = ident();
    if (kw == "ar") {
      std::string cls = ident();
      expect('.');
      std::string field = ident();
      expect(';');
      int c = px.class_of(cls);
      if (c < 0) throw AnalysisError("UnknownType", "ar: unknown class " + cls);
      int fi = px.field_of(c, field);
      if (fi < 0)
        throw AnalysisError("UnknownType",
                            "ar: unknown field " + cls + "." + field);
      const FieldInfo& f = px.classes[c].fields[fi];
      if (f.hidden)
        throw AnalysisError("HiddenFieldInAr",
                            "hidden field in AR: " + cls + "." + field);
      if (f.type.kind != FieldType::Ref)
        throw AnalysisError(
            "UnknownType", "ar member is not a reference: " + cls + "." + field);
      pc.class_ar[c].push_back(fi);
    } else if (kw == "pred") {
      PredDef pd;
      pd.name = ident();
      expect('(');
      std::string var = ident();
      expect(':');
      std::string cls = ident();
      expect(')');
      ws();
      if (text.compare(i, 2, ":=") != 0)
        throw AnalysisError("PredicateSyntaxError", "expected ':=' in pred");
      i += 2;
      size_t j = text.find(';', i);
      if (j == std::string::npos)
        throw AnalysisError("PredicateSyntaxError", "missing ';' after pred");
      std::string body = text.substr(i, j - i);
      i = j + 1;
      pd.cls = px.class_of(cls);
      if (pd.cls < 0)
        throw AnalysisError("UnknownType", "pred: unknown class " + cls);
      pd.body = parse_pred_expr(body, var);
      collect_reads(px, pd.cls, pd.body, pd.reads, pd.reads_hidden);
      for (auto& p : pc.preds)
        if (p.name == pd.name)
          throw AnalysisError("DuplicateName", "duplicate predicate " + pd.name);
      pc.preds.push_back(std::move(pd));
    } else if (kw == "summary") {
      Summary sm;
      std::string cls = ident();
      expect('.');
      sm.method = ident();
      sm.cls = px.class_of(cls);
      if (sm.cls < 0)
        throw AnalysisError("UnknownType", "summary: unknown class " + cls);
      expect('{');
      for (;;) {
        ws();
        if (i < text.size() && text[i] == '}') {
          i++;
          break;
        }
        std::string pred = ident();
        ws();
        if (text.compare(i, 2, ":=") != 0)
          throw AnalysisError("PredicateSyntaxError",
                              "expected ':=' in summary");
        i += 2;
        size_t j = text.find(';', i);
        if (j == std::string::npos)
          throw AnalysisError("PredicateSyntaxError", "missing ';' in summary");
        sm.post[pred] = parse_pred_expr(text.substr(i, j - i), "x");
        i = j + 1;
      }
      pc.summaries.push_back(std::move(sm));
    } else {
      throw AnalysisError("PredicateSyntaxError", "unknown declaration " + kw);
    }
  }

  for (auto& pd : pc.preds) {
    if (!pd.reads_hidden) continue;
    bool found = false;
    for (auto& sm : pc.summaries) found |= sm.post.count(pd.name) > 0;
    if (!found)
      throw AnalysisError(
          "PredicateEvaluationError",
          "predicate " + pd.name +
              " reads hidden fields but no summary update is declared");
  }
  finalize(pc);
  return pc;
}

}  // namespace dpi
