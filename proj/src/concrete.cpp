#include "dpi/concrete.hpp"

#include <algorithm>
#include <deque>

#include "dpi/canonical.hpp"

namespace dpi {

namespace {

CValue default_value(const FieldInfo& f) {
  if (f.type.kind == FieldType::Ref || f.type.kind == FieldType::Any)
    return CValue::ref(kNullObj);
  return CValue::scalar(f.type.dom.lo);
}

ConcObject make_object(const ProgramIndex& px, int cls) {
  ConcObject o;
  o.cls = cls;
  o.fields.reserve(px.classes[cls].fields.size());
  for (auto& f : px.classes[cls].fields) o.fields.push_back(default_value(f));
  return o;
}

}  // namespace

Configuration initial_configuration(const ProgramIndex& px) {
  DPI_CHECK(px.client_class >= 0, "program has no client");
  Configuration u;
  u.objects.push_back({-1, {}});  // null
  u.objects.push_back(make_object(px, px.client_class));
  u.this_obj = 1;
  const Method& main = px.prog.client_class()->public_methods[0];
  u.loc = main.cfa.first_loc + main.cfa.initial;
  return u;
}

CValue eval_expr(const ProgramIndex& px, const Configuration& u, ObjId self,
                 const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Null: return CValue::ref(kNullObj);
    case Expr::This: return CValue::ref(self);
    case Expr::BoolLit: return CValue::scalar(e->bval ? 1 : 0);
    case Expr::IntLit: return CValue::scalar((int32_t)e->ival);
    case Expr::Field: {
      CValue base = eval_expr(px, u, self, e->a);
      DPI_CHECK(base.is_ref, "field access on scalar: " << expr_str(e));
      ObjId o = (ObjId)base.v;
      if (o == kNullObj) {
        // Total semantics: null.f is the domain default / null.
        const FieldType* t = px.field_type_anywhere(e->name);
        if (!t || t->kind != FieldType::Scalar) return CValue::ref(kNullObj);
        return CValue::scalar(t->dom.lo);
      }
      const ConcObject& ob = u.objects[o];
      int fi = px.field_of(ob.cls, e->name);
      DPI_CHECK(fi >= 0, "no field " << e->name << " in "
                                     << px.classes[ob.cls].name);
      return ob.fields[fi];
    }
    case Expr::Unary: {
      CValue a = eval_expr(px, u, self, e->a);
      return CValue::scalar(a.v == 0 ? 1 : 0);
    }
    case Expr::Binary: {
      if (e->op == BinOp::And) {
        CValue a = eval_expr(px, u, self, e->a);
        if (a.v == 0) return CValue::scalar(0);
        return CValue::scalar(eval_expr(px, u, self, e->b).v != 0);
      }
      if (e->op == BinOp::Or) {
        CValue a = eval_expr(px, u, self, e->a);
        if (a.v != 0) return CValue::scalar(1);
        return CValue::scalar(eval_expr(px, u, self, e->b).v != 0);
      }
      CValue a = eval_expr(px, u, self, e->a);
      CValue b = eval_expr(px, u, self, e->b);
      switch (e->op) {
        case BinOp::Eq: return CValue::scalar(a == b);
        case BinOp::Ne: return CValue::scalar(!(a == b));
        case BinOp::Lt: return CValue::scalar(a.v < b.v);
        case BinOp::Le: return CValue::scalar(a.v <= b.v);
        case BinOp::Gt: return CValue::scalar(a.v > b.v);
        case BinOp::Ge: return CValue::scalar(a.v >= b.v);
        case BinOp::Add: return CValue::scalar(a.v + b.v);
        case BinOp::Sub: return CValue::scalar(a.v - b.v);
        default: break;
      }
      DPI_CHECK(false, "unreachable");
    }
    case Expr::Clamp: {
      CValue a = eval_expr(px, u, self, e->a);
      return CValue::scalar(std::clamp(a.v, (int32_t)e->lo, (int32_t)e->hi));
    }
    default:
      DPI_CHECK(false, "formula-only node in program expression");
  }
}

namespace {

// Saturate a scalar into the target field's domain.
CValue store_value(const FieldInfo& f, CValue v) {
  if (f.type.kind == FieldType::Scalar && !v.is_ref)
    return CValue::scalar(f.type.dom.clamp(v.v));
  return v;
}

void bind_params(const ProgramIndex& px, Configuration& v, ObjId caller,
                 ObjId callee, const Method& m,
                 const std::vector<ExprPtr>& args) {
  // Evaluate every argument in the caller's state before writing any
  // parameter field (the receiver may alias the caller).
  std::vector<CValue> vals;
  vals.reserve(args.size());
  for (auto& a : args) vals.push_back(eval_expr(px, v, caller, a));
  for (size_t i = 0; i < m.params.size(); i++) {
    int fi = px.field_of(v.objects[callee].cls, m.name + "." + m.params[i].name);
    DPI_CHECK(fi >= 0, "missing parameter field");
    auto& f = px.classes[v.objects[callee].cls].fields[fi];
    v.objects[callee].fields[fi] = store_value(f, vals[i]);
  }
}

// On return: clear the callee's parameter fields, ret and __ignore so no
// transient state survives at the loop head.
void clear_method_locals(const ProgramIndex& px, Configuration& v, ObjId obj,
                         const Method& m) {
  ConcObject& ob = v.objects[obj];
  const ClassInfo& ci = px.classes[ob.cls];
  for (size_t i = 0; i < m.params.size(); i++) {
    int fi = px.field_of(ob.cls, m.name + "." + m.params[i].name);
    if (fi >= 0) ob.fields[fi] = default_value(ci.fields[fi]);
  }
  for (const char* f : {"ret", "__ignore"}) {
    int fi = px.field_of(ob.cls, f);
    if (fi >= 0) ob.fields[fi] = default_value(ci.fields[fi]);
  }
}

}  // namespace

std::vector<Configuration> step(const ProgramIndex& px, const Configuration& u) {
  std::vector<Configuration> succs;
  const LocInfo& li = px.locs[u.loc];

  if (li.is_final) {
    if (u.stack.empty()) return {};  // program terminated
    Configuration v = u;
    Frame fr = v.stack.back();
    v.stack.pop_back();
    int ret_fi = px.field_of(v.objects[v.this_obj].cls, "ret");
    CValue ret = v.objects[v.this_obj].fields[ret_fi];
    clear_method_locals(px, v, v.this_obj, *li.method);
    auto& dst_cls = px.classes[v.objects[fr.obj].cls];
    v.objects[fr.obj].fields[fr.var] = store_value(dst_cls.fields[fr.var], ret);
    v.this_obj = fr.obj;
    v.loc = fr.ret_loc;
    return {v};
  }

  for (const CfaEdge* e : px.out_edges[u.loc]) {
    const Operation& op = e->op;
    int dst = px.global_loc(*li.method, e->dst);
    switch (op.kind) {
      case Operation::Assign: {
        Configuration v = u;
        CValue val = eval_expr(px, v, v.this_obj, op.expr);
        ConcObject& self = v.objects[v.this_obj];
        int fi = px.field_of(self.cls, op.x);
        self.fields[fi] = store_value(px.classes[self.cls].fields[fi], val);
        v.loc = dst;
        succs.push_back(std::move(v));
        break;
      }
      case Operation::Assume: {
        if (eval_expr(px, u, u.this_obj, op.expr).v != 0) {
          Configuration v = u;
          v.loc = dst;
          succs.push_back(std::move(v));
        }
        break;
      }
      case Operation::Havoc: {
        const ConcObject& self = u.objects[u.this_obj];
        int fi = px.field_of(self.cls, op.x);
        const FieldInfo& f = px.classes[self.cls].fields[fi];
        if (f.type.kind == FieldType::Scalar) {
          for (int val = f.type.dom.lo; val <= f.type.dom.hi; val++) {
            Configuration v = u;
            v.objects[v.this_obj].fields[fi] = CValue::scalar(val);
            v.loc = dst;
            succs.push_back(std::move(v));
          }
        } else {
          int want = px.class_of(f.type.ref_class);
          for (ObjId o = 0; o < u.objects.size(); o++) {
            if (o != kNullObj && u.objects[o].cls != want) continue;
            Configuration v = u;
            v.objects[v.this_obj].fields[fi] = CValue::ref(o);
            v.loc = dst;
            succs.push_back(std::move(v));
          }
        }
        break;
      }
      case Operation::Call: {
        CValue recv = eval_expr(px, u, u.this_obj, op.recv);
        DPI_CHECK(recv.is_ref, "call receiver is scalar");
        if ((ObjId)recv.v == kNullObj) break;  // stuck branch
        Configuration v = u;
        ObjId callee = (ObjId)recv.v;
        const Method* m =
            px.method_of(v.objects[callee].cls, op.method);
        DPI_CHECK(m, "no method " << op.method);
        bind_params(px, v, v.this_obj, callee, *m, op.args);
        int xfi = px.field_of(v.objects[v.this_obj].cls, op.x);
        v.stack.push_back({v.this_obj, xfi, dst});
        v.this_obj = callee;
        v.loc = m->cfa.first_loc + m->cfa.initial;
        succs.push_back(std::move(v));
        break;
      }
      case Operation::New: {
        Configuration v = u;
        int cls = px.class_of(op.cls);
        ObjId fresh = (ObjId)v.objects.size();
        v.objects.push_back(make_object(px, cls));
        const Method& ctor = px.prog.package.classes[cls].ctor;
        bind_params(px, v, v.this_obj, fresh, ctor, op.args);
        // Constructors return the fresh object (implicit ret = this).
        int rfi = px.field_of(cls, "ret");
        v.objects[fresh].fields[rfi] = CValue::ref(fresh);
        int xfi = px.field_of(v.objects[v.this_obj].cls, op.x);
        v.stack.push_back({v.this_obj, xfi, dst});
        v.this_obj = fresh;
        v.loc = ctor.cfa.first_loc + ctor.cfa.initial;
        succs.push_back(std::move(v));
        break;
      }
    }
  }
  return succs;
}

bool is_error(const ProgramIndex& px, const Configuration& u) {
  for (ObjId o = 1; o < u.objects.size(); o++) {
    int fi = px.field_of(u.objects[o].cls, "err");
    if (fi >= 0 && u.objects[o].fields[fi].v != 0) return true;
  }
  return false;
}

namespace {

// Concrete configuration as a colored graph: node colors encode class and
// all scalar fields; labeled edges are the reference fields, plus marker
// edges for this and the stack frames.
CanonGraph config_graph(const ProgramIndex& px, const Configuration& u) {
  CanonGraph g;
  g.n = (int)u.objects.size();
  g.color.resize(g.n);
  g.out.resize(g.n);
  std::vector<uint64_t> scalar_sig(g.n, 0);
  for (int o = 0; o < g.n; o++) {
    const ConcObject& ob = u.objects[o];
    uint64_t h = 1469598103934665603ull;
    auto mix = [&h](uint64_t x) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    mix((uint64_t)(ob.cls + 2));
    if (ob.cls >= 0) {
      for (size_t fi = 0; fi < ob.fields.size(); fi++) {
        const FieldInfo& f = px.classes[ob.cls].fields[fi];
        if (f.type.kind == FieldType::Scalar) {
          mix((uint64_t)(ob.fields[fi].v + 7));
        } else {
          g.out[o].push_back({(uint32_t)fi + 16, (int)(ObjId)ob.fields[fi].v});
        }
      }
    }
    mix(o == (int)u.this_obj ? 3 : 5);
    scalar_sig[o] = h;
  }
  // Stack: unique marker labels per frame position pin the frame objects.
  for (size_t k = 0; k < u.stack.size(); k++) {
    uint32_t lbl = 1000000u + (uint32_t)k * 4096u + (uint32_t)u.stack[k].var;
    g.out[(int)u.stack[k].obj].push_back({lbl, (int)u.stack[k].obj});
  }
  for (int o = 0; o < g.n; o++) g.color[o] = scalar_sig[o];
  return g;
}

}  // namespace

Configuration canonical_configuration(const ProgramIndex& px,
                                      const Configuration& u) {
  CanonGraph g = config_graph(px, u);
  CanonResult cr = canonicalize(g);
  // Null must stay at index 0: force by rotating it to front.
  std::vector<int> order = cr.order;
  auto it = std::find(order.begin(), order.end(), 0);
  order.erase(it);
  order.insert(order.begin(), 0);
  std::vector<int> posn(order.size());
  for (size_t i = 0; i < order.size(); i++) posn[order[i]] = (int)i;

  Configuration v;
  v.objects.reserve(u.objects.size());
  for (int old : order) {
    ConcObject ob = u.objects[old];
    if (ob.cls >= 0) {
      for (size_t fi = 0; fi < ob.fields.size(); fi++) {
        if (ob.fields[fi].is_ref)
          ob.fields[fi] = CValue::ref((ObjId)posn[(ObjId)ob.fields[fi].v]);
      }
    }
    v.objects.push_back(std::move(ob));
  }
  v.this_obj = (ObjId)posn[u.this_obj];
  v.loc = u.loc;
  v.stack = u.stack;
  for (auto& fr : v.stack) fr.obj = (ObjId)posn[fr.obj];
  return v;
}

std::string configuration_key(const ProgramIndex& px, const Configuration& u) {
  Configuration c = canonical_configuration(px, u);
  std::string key;
  auto put = [&key](int64_t x) {
    for (int k = 0; k < 8; k++) key.push_back((char)((x >> (8 * k)) & 0xff));
  };
  put(c.loc);
  put(c.this_obj);
  put((int64_t)c.stack.size());
  for (auto& fr : c.stack) {
    put(fr.obj);
    put(fr.var);
    put(fr.ret_loc);
  }
  for (auto& ob : c.objects) {
    put(ob.cls);
    for (auto& f : ob.fields) {
      put(f.is_ref ? 1 : 0);
      put(f.v);
    }
  }
  return key;
}

ReachResult bounded_reach(const ProgramIndex& px, int max_steps,
                          int max_objects, size_t node_cap) {
  DPI_CHECK(max_steps >= 0 && max_objects >= 2, "bad reach budget");
  ReachResult res;
  std::map<std::string, int> seen;
  std::deque<std::pair<int, int>> frontier;  // (config index, depth)

  Configuration init = canonical_configuration(px, initial_configuration(px));
  seen[configuration_key(px, init)] = 0;
  res.configs.push_back(init);
  frontier.push_back({0, 0});

  while (!frontier.empty()) {
    auto [idx, depth] = frontier.front();
    frontier.pop_front();
    if (depth >= max_steps) {
      res.budget_hit = true;
      continue;
    }
    Configuration u = res.configs[idx];  // copy: configs vector grows
    if (is_error(px, u)) continue;       // error boundary
    for (Configuration& v : step(px, u)) {
      // Count allocated objects (null excluded).
      if ((int)v.objects.size() - 1 > max_objects) continue;
      Configuration cv = canonical_configuration(px, v);
      std::string key = configuration_key(px, cv);
      auto [it, inserted] = seen.emplace(key, (int)res.configs.size());
      if (inserted) {
        if (res.configs.size() >= node_cap)
          throw AnalysisError("BudgetExceeded",
                              "bounded_reach exceeded node cap");
        res.configs.push_back(std::move(cv));
        frontier.push_back({it->second, depth + 1});
      }
      res.transitions.push_back({idx, it->second});
    }
  }
  return res;
}

}  // namespace dpi
