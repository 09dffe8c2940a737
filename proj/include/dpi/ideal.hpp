#pragma once

// Abstract, quasi-ideal and ideal configurations share one representation:
// a shape graph of class-tagged objects carrying three-valued predicate
// rows, nesting levels, and determinate AR edges, plus the control context
// (current object, location, stack). Abstract configurations are shapes
// with two-valued rows and all-zero nesting; nested object graphs are
// shapes without context.

#include <optional>
#include <string>
#include <vector>

#include "dpi/concrete.hpp"
#include "dpi/predcfg.hpp"

namespace dpi {

using Tri = int8_t;
constexpr Tri kFalse = 0, kTrue = 1, kBot = 2;

struct ShapeObj {
  int cls = -1;  // -1 only for the null sentinel at index 0
  int nl = 0;
  std::vector<Tri> preds;   // aligned with pc.class_preds[cls]
  std::vector<ObjId> refs;  // aligned with pc.class_ar[cls]; 0 = null
};

struct Shape {
  std::vector<ShapeObj> objs;  // [0] is the null sentinel
  ObjId this_obj = 0;          // 0 when the context is dropped
  int loc = -1;
  std::vector<Frame> stack;

  size_t n_objects() const { return objs.size() - 1; }  // null excluded
  bool has_context() const { return this_obj != 0; }
};

struct AbsCtx {
  const ProgramIndex& px;
  const PredicateConfig& pc;
};

// Object-level relation with {constant, *} multiplicities.
struct Mult {
  int k = 1;
  bool star = false;
  static Mult one() { return {1, false}; }
  static Mult many() { return {0, true}; }
  std::string str() const { return star ? "*" : std::to_string(k); }
};

struct RelPair {
  ObjId src = 0, dst = 0;
  Mult m;
};

// Provenance between two shapes: which objects of the source feed which
// objects of the destination, with multiplicities.
struct ObjRel {
  std::vector<RelPair> pairs;
  static ObjRel identity(const Shape& s);
  ObjRel then(const ObjRel& next) const;  // relational composition
  void add(ObjId s, ObjId d, Mult m);
  Mult get(ObjId s, ObjId d) const;  // zero constant when absent
};

// ------------------------------------------------------------- predicates

Tri pred_value(const Shape& s, ObjId o, int pred_id, const AbsCtx& ctx);
void set_pred(Shape& s, ObjId o, int pred_id, Tri v, const AbsCtx& ctx);
ObjId ref_value(const Shape& s, ObjId o, int field, const AbsCtx& ctx);
void set_ref(Shape& s, ObjId o, int field, ObjId target, const AbsCtx& ctx);
bool eta_total(const Shape& s);
bool is_ideal(const Shape& s, const AbsCtx& ctx);  // eta total + nl edges ok
bool is_error_shape(const Shape& s, const AbsCtx& ctx);

// ------------------------------------------------------------ abstraction

// Heap predicate abstraction of a concrete configuration (nl all zero).
Shape alpha_h(const AbsCtx& ctx, const Configuration& u);

// Plain embedding between abstract configurations: injective, class/this/
// stack/eta/astore-preserving, same location. eta must be two-valued.
std::optional<std::vector<ObjId>> embeds(const AbsCtx& ctx, const Shape& u,
                                         const Shape& v);

// Length (node count) of the longest simple path in the undirected
// AR-graph.
int lsp(const AbsCtx& ctx, const Shape& u);

// --------------------------------------------------------------- ideals

// Inclusion mapping src -> dst (h[o] for every object of src; h[0] = 0).
using InclusionMap = std::vector<ObjId>;

struct IncludedOptions {
  uint64_t node_budget = 4'000'000;
  bool strict_check = false;  // re-verify via denotation sampling (debug)
};

std::optional<InclusionMap> included(const AbsCtx& ctx, const Shape& src,
                                     const Shape& dst,
                                     const IncludedOptions& opt = {});

// All finitary configurations included in `i` with per-abstract-object
// multiplicity at most `bound`, as canonical shapes.
std::vector<Shape> denotation_sample(const AbsCtx& ctx, const Shape& i,
                                     int bound);

// Folding: remove objects with no effect on the denotation. Returns the
// folded shape and the provenance (merged objects map to their images).
std::pair<Shape, ObjRel> fold(const AbsCtx& ctx, const Shape& q);

// Copy/unfold the layer {o : nl(o) >= level}. Returned InclusionMap h is
// the witness result <=_h input.
struct LayerOp {
  Shape result;
  InclusionMap to_input;     // result object -> input object
  std::vector<ObjId> copy_of;  // input object -> its copy (0 if none)
  ObjRel rel;                // input -> result provenance
};
LayerOp copy_layer(const AbsCtx& ctx, const Shape& i, int level);
LayerOp unfold_layer(const AbsCtx& ctx, const Shape& i, int level);

// Reduce a quasi-ideal configuration to ideal configurations (fixpoint of
// the three rewrite steps), folding along the way. Each result carries the
// provenance from the input.
std::vector<std::pair<Shape, ObjRel>> reduce(const AbsCtx& ctx, const Shape& q);

// Extrapolation: bump the nesting level of every object of j not covered
// by h(i); i <= j <= result.
Shape extrapolate(const AbsCtx& ctx, const Shape& i, const Shape& j,
                  const InclusionMap& h);

// Sequence widening: right-fold of extrapolate; every element of the chain
// must be included in the last one. Covering condition asserted.
Shape widen(const AbsCtx& ctx, const std::vector<Shape>& chain);

// ---------------------------------------------------------- canonical form

struct CanonicalShape {
  Shape shape;                 // renumbered
  std::vector<ObjId> to_old;   // new id -> old id
  std::vector<ObjId> to_new;   // old id -> new id
  std::string key;             // exact serialization of `shape`
};
CanonicalShape canonical_shape(const AbsCtx& ctx, const Shape& s);
std::string shape_key(const AbsCtx& ctx, const Shape& s);

// Human-readable dump for debugging and golden tests.
std::string shape_str(const AbsCtx& ctx, const Shape& s);

// Nesting-level normalization: collapse redundant levels (an isolated
// object at nl 2 means no more than at nl 1). Used by test generators.
Shape normalize_levels(const AbsCtx& ctx, const Shape& s);

}  // namespace dpi
