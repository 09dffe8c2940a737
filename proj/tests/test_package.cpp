#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "doctest.h"
#include "dpi/package_ops.hpp"
#include "dpi/parser.hpp"
#include "testutil.hpp"

using namespace dpi;
using namespace dpi::testing;

TEST_CASE("viewer/label parses with the expected members") {
  Package p = parse_package(viewer_label_src());
  REQUIRE(p.classes.size() == 2);
  const ClassDef* v = p.cls("Viewer");
  const ClassDef* l = p.cls("Label");
  REQUIRE(v);
  REQUIRE(l);
  CHECK(v->ctor_public);
  std::set<std::string> vp;
  for (auto& m : v->public_methods) vp.insert(m.name);
  CHECK(vp == std::set<std::string>{"run", "done", "set"});
  CHECK(v->protected_methods.empty());
  std::set<std::string> lp;
  for (auto& m : l->protected_methods) lp.insert(m.name);
  CHECK(lp == std::set<std::string>{"run", "dispose"});
  CHECK(l->public_methods.empty());
  CHECK(l->ctor_public);
  // Every class carries the implicit err/ret fields.
  CHECK(v->field("err"));
  CHECK(v->field("ret"));
  CHECK(l->field("err"));
}

TEST_CASE("empty document is a syntax error") {
  CHECK_THROWS_WITH_AS(parse_package(""), doctest::Contains("SyntaxError"),
                       AnalysisError);
  CHECK_THROWS_AS(parse_package("   # just a comment\n"), AnalysisError);
}

TEST_CASE("duplicate members are rejected") {
  const char* dup_field = R"(
class A { field x: bool; field x: bool; ctor() { } }
)";
  CHECK_THROWS_WITH_AS(parse_package(dup_field),
                       doctest::Contains("DuplicateName"), AnalysisError);
  const char* dup_method = R"(
class A { ctor() { } public m() { } public m() { } }
)";
  CHECK_THROWS_WITH_AS(parse_package(dup_method),
                       doctest::Contains("DuplicateName"), AnalysisError);
  const char* dup_class = "class A { ctor() { } } class A { ctor() { } }";
  CHECK_THROWS_WITH_AS(parse_package(dup_class),
                       doctest::Contains("DuplicateName"), AnalysisError);
  // Two classes may both declare `run`: names are class-qualified.
  const char* two_runs = R"(
class A { ctor() { } public run() { } }
class B { ctor() { } public run() { } }
)";
  CHECK_NOTHROW(parse_package(two_runs));
}

TEST_CASE("parse/print round-trips on abstract syntax") {
  for (auto src : {viewer_label_src(), set_iterator_src(), jdbc_src()}) {
    Package p = parse_package(src);
    Package q = parse_package(print_package(p));
    CHECK(package_equal(p, q));
  }
}

TEST_CASE("well-formedness: clean packages have no diagnostics") {
  for (auto src : {viewer_label_src(), set_iterator_src(), jdbc_src()}) {
    Package p = parse_package(src);
    auto diags = check_well_formed(p);
    for (auto& d : diags) MESSAGE(d.str());
    CHECK(diags.empty());
  }
}

TEST_CASE("well-formedness: recursion is reported") {
  const char* rec = R"(
class A {
  field me: ref A;
  ctor() { me := null; }
  public m() { if (me != null) { me.m(); } }
}
)";
  Package p = parse_package(rec);
  auto diags = check_well_formed(p);
  bool found = false;
  for (auto& d : diags) found |= d.kind == "RecursionDiagnostic";
  CHECK(found);
}

TEST_CASE("well-formedness: calling through a scalar field is a type error") {
  const char* bad = R"(
class A {
  field f: bool;
  ctor() { }
  public m() { f.dispose(); }
}
)";
  Package p = parse_package(bad);
  auto diags = check_well_formed(p);
  bool found = false;
  for (auto& d : diags) found |= d.kind == "TypeDiagnostic";
  CHECK(found);
}

TEST_CASE("well-formedness is order-independent") {
  // Permuting class order yields the same diagnostic multiset.
  const char* ab = R"(
class A { field f: bool; ctor() { } public m() { f.dispose(); } }
class B { field g: ref A; ctor() { } public n() { g := true; } }
)";
  const char* ba = R"(
class B { field g: ref A; ctor() { } public n() { g := true; } }
class A { field f: bool; ctor() { } public m() { f.dispose(); } }
)";
  auto da = check_well_formed(parse_package(ab));
  auto db = check_well_formed(parse_package(ba));
  REQUIRE(da.size() == db.size());
  for (size_t i = 0; i < da.size(); i++) {
    CHECK(da[i].kind == db[i].kind);
    CHECK(da[i].message == db[i].message);
  }
}

TEST_CASE("MGC offers exactly the public constructors and methods") {
  Package p = parse_package(viewer_label_src());
  ClassDef client = most_general_client(p);
  CHECK(client.is_client);
  REQUIRE(client.public_methods.size() == 1);
  CHECK(client.public_methods[0].name == "main");

  // Collect the choice set from the synthesized branches.
  std::set<std::string> choices;
  for (auto& e : client.public_methods[0].cfa.edges) {
    if (e.op.kind == Operation::New) choices.insert("new " + e.op.cls);
    if (e.op.kind == Operation::Call)
      choices.insert(expr_str(e.op.recv) + "." + e.op.method);
  }
  CHECK(choices == std::set<std::string>{"new Viewer", "new Label",
                                         "rViewer.run", "rViewer.done",
                                         "rViewer.set"});

  // The extended program is well-formed and havoc stays client-only.
  OoProgram prog = make_program(p);
  auto diags = check_well_formed(prog.package);
  for (auto& d : diags) MESSAGE(d.str());
  CHECK(diags.empty());
}

TEST_CASE("MGC for set/iterator includes the public API only") {
  Package p = parse_package(set_iterator_src());
  ClassDef client = most_general_client(p);
  std::set<std::string> choices;
  for (auto& e : client.public_methods[0].cfa.edges) {
    if (e.op.kind == Operation::New) choices.insert("new " + e.op.cls);
    if (e.op.kind == Operation::Call) choices.insert(e.op.method);
  }
  // Iterator's constructor is protected: no `new Iterator` branch.
  CHECK(choices == std::set<std::string>{"new Set", "new Elem", "iterator",
                                         "add", "next", "has_next", "remove"});
}

TEST_CASE("MGC with no public methods still offers construction") {
  const char* only_ctor = "class A { ctor() { } }";
  Package p = parse_package(only_ctor);
  ClassDef client = most_general_client(p);
  std::set<std::string> choices;
  for (auto& e : client.public_methods[0].cfa.edges) {
    if (e.op.kind == Operation::New) choices.insert("new " + e.op.cls);
    if (e.op.kind == Operation::Call) choices.insert(e.op.method);
  }
  CHECK(choices == std::set<std::string>{"new A"});
}

TEST_CASE("client loop head is inside main") {
  OoProgram prog = make_program(parse_package(viewer_label_src()));
  int head = client_loop_head(prog);
  const Method* m = prog.package.loc_method[head];
  REQUIRE(m);
  CHECK(m->name == "main");
  CHECK(max_stack_depth(prog) <= 16);
}
