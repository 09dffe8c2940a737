#include "dpi/ast.hpp"

#include <cstring>
#include <mutex>

namespace dpi {

static LogLevel g_level = [] {
  const char* v = std::getenv("DPI_FORGE_LOG");
  if (!v) return LogLevel::Warn;
  if (!std::strcmp(v, "debug")) return LogLevel::Debug;
  if (!std::strcmp(v, "info")) return LogLevel::Info;
  if (!std::strcmp(v, "warn")) return LogLevel::Warn;
  if (!std::strcmp(v, "error")) return LogLevel::Error;
  if (!std::strcmp(v, "off")) return LogLevel::Off;
  return LogLevel::Warn;
}();

LogLevel log_level() { return g_level; }
void set_log_level(LogLevel lv) { g_level = lv; }

void log_msg(LogLevel lv, const std::string& msg) {
  static std::mutex mu;
  static const char* tag[] = {"debug", "info", "warn", "error"};
  std::lock_guard<std::mutex> lock(mu);
  std::fprintf(stderr, "dpi-forge: %s: %s\n", tag[(int)lv], msg.c_str());
}

std::string FieldType::str() const {
  switch (kind) {
    case Scalar:
      if (dom.is_bool) return "bool";
      return "int(" + std::to_string(dom.lo) + ".." + std::to_string(dom.hi) + ")";
    case Ref:
      return "ref " + ref_class;
    case Any:
      return "any";
  }
  return "?";
}

static const char* binop_str(BinOp o) {
  switch (o) {
    case BinOp::Eq: return "==";
    case BinOp::Ne: return "!=";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::And: return "&&";
    case BinOp::Or: return "||";
  }
  return "?";
}

std::string expr_str(const ExprPtr& e) {
  if (!e) return "<null-expr>";
  switch (e->kind) {
    case Expr::Null: return "null";
    case Expr::This: return "this";
    case Expr::BoolLit: return e->bval ? "true" : "false";
    case Expr::IntLit: return std::to_string(e->ival);
    case Expr::Field: {
      std::string b = e->a && e->a->kind != Expr::This ? expr_str(e->a) + "." : "";
      return b + e->name;
    }
    case Expr::Unary: return "!(" + expr_str(e->a) + ")";
    case Expr::Binary:
      return "(" + expr_str(e->a) + " " + binop_str(e->op) + " " + expr_str(e->b) + ")";
    case Expr::Obj: return "#" + std::to_string(e->obj);
    case Expr::Sym: return "$" + e->name;
    case Expr::Ite:
      return "ite(" + expr_str(e->c) + ", " + expr_str(e->a) + ", " + expr_str(e->b) + ")";
    case Expr::Clamp:
      return "clamp(" + expr_str(e->a) + ", " + std::to_string(e->lo) + ".." +
             std::to_string(e->hi) + ")";
  }
  return "?";
}

std::string Operation::str() const {
  switch (kind) {
    case Assign: return x + " := " + expr_str(expr);
    case Assume: return "assume " + expr_str(expr);
    case New: {
      std::string s = x + " := new " + cls + "(";
      for (size_t i = 0; i < args.size(); i++)
        s += (i ? ", " : "") + expr_str(args[i]);
      return s + ")";
    }
    case Call: {
      std::string s = x + " := " + expr_str(recv) + "." + method + "(";
      for (size_t i = 0; i < args.size(); i++)
        s += (i ? ", " : "") + expr_str(args[i]);
      return s + ")";
    }
    case Havoc: return "havoc " + x;
  }
  return "?";
}

}  // namespace dpi
