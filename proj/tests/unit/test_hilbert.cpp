#include "doctest.h"

#include "dm/bench.hpp"
#include "dm/hilbert.hpp"
#include "dm/syntax.hpp"

using namespace dm;

namespace {

const Sort N = Sort::arith(0);
Expr P(const char* text, int order = 1) { return parse_prop(zi_signature(order), text); }

}  // namespace

TEST_CASE("schema catalogue") {
  HilbertConfig c1{1, false}, c2{2, false};
  auto cat = schema_catalogue(c1);
  CHECK(axiom_schema_count(c1) + rule_count(c1) == cat.size());
  // 15 propositional + UI, EI + 10 theory at order 1, no Comp
  CHECK(axiom_schema_count(c1) == 27);
  // order 2 adds UI, EI for sort 1 and Comp for sort 0
  CHECK(axiom_schema_count(c2) == 30);
  CHECK(rule_count(c1) == 3);
  CHECK(rule_count(c2) == 5);
  CHECK(axiom_schema_count({1, true}) < axiom_schema_count(c1));
  CHECK(is_theory_schema("Ind"));
  CHECK_FALSE(is_theory_schema("K"));
  CHECK(is_sorted_schema("UI"));
}

TEST_CASE("schema lines: K and Refl") {
  HilbertBuilder b({1, false});
  Expr A = P("(= 0 0)"), B = P("(= x 0)");
  int k = b.schema(schema0("K", {{"A", A}, {"B", B}}));
  CHECK(alpha_equal(b.prop(k), mk_imp(A, mk_imp(B, A))));
  int a = b.schema(schema0("Refl"));
  (void)a;
  HilbertProof p = b.take();
  HVerdict v = check_hilbert(p);
  CHECK_MESSAGE(v.ok, v.error);
  CHECK(v.length == 2);
}

TEST_CASE("a tampered line is reported with its number") {
  HilbertBuilder b({1, false});
  Expr A = P("(= 0 0)");
  b.schema(schema0("I", {{"A", A}}));
  b.schema(schema0("I", {{"A", A}}));
  HilbertProof p = b.take();
  p.lines[1].prop = P("(imp (= 0 0) (= (s 0) 0))");
  HVerdict v = check_hilbert(p);
  CHECK_FALSE(v.ok);
  CHECK(v.line == 2);
}

TEST_CASE("MP needs matching premises") {
  HilbertBuilder b({1, false});
  Expr A = P("(= 0 0)"), B = P("(= x 0)");
  int l1 = b.schema(schema0("I", {{"A", A}}));
  int l2 = b.schema(schema0("K", {{"A", A}, {"B", B}}));
  CHECK_THROWS_AS(b.mp(l2, l1), KernelError);
  HilbertProof p = b.take();
  HLine bad;
  bad.kind = HKind::MP;
  bad.ref1 = 1;
  bad.ref2 = 3;  // forward reference
  bad.prop = A;
  p.lines.push_back(bad);
  HVerdict v = check_hilbert(p);
  CHECK_FALSE(v.ok);
  CHECK(v.line == 3);
}

TEST_CASE("Gen with the eigenvariable free in the antecedent is rejected") {
  Var beta = mkvar("b", N);
  Expr A = P("(= b 0)");
  HilbertBuilder b({1, false});
  int l1 = b.schema(schema0("I", {{"A", A}}));  // b = 0 => b = 0
  b.gen(l1, beta);                              // b = 0 => forall b. b = 0
  HVerdict v = check_hilbert(b.take());
  CHECK_FALSE(v.ok);
  CHECK(v.line == 2);
}

TEST_CASE("Gen and Part on valid premises") {
  Var beta = mkvar("b", N);
  Expr Ab = P("(= b b)");
  HilbertBuilder b({1, false});
  int ui = b.schema(schema_ui(0, Template::unary(mkvar("x", N), P("(= x x)")), mk_var(beta)));
  CHECK(alpha_equal(b.prop(ui), mk_imp(P("(forall (x 0) (= x x))"), Ab)));
  int g = b.gen(ui, beta);
  CHECK(alpha_equal(b.prop(g), mk_imp(P("(forall (x 0) (= x x))"), P("(forall (b 0) (= b b))"))));
  int ei = b.schema(schema_ei(0, Template::unary(mkvar("x", N), P("(= x x)")), mk_var(beta)));
  int p = b.part(ei, beta);
  CHECK(alpha_equal(b.prop(p), mk_imp(P("(exists (b 0) (= b b))"), P("(exists (x 0) (= x x))"))));
  HVerdict v = check_hilbert(b.take());
  CHECK_MESSAGE(v.ok, v.error << " line " << v.line);
}

TEST_CASE("UI with a term that is not freely substitutable is rejected") {
  Var x = mkvar("x", N), y = mkvar("y", N);
  Template A = Template::unary(x, P("(exists (y 0) (= x (s y)))"));
  HilbertBuilder b({1, false});
  CHECK_THROWS_AS(b.schema(schema_ui(0, A, mk_var(y))), SideConditionError);
  CHECK_NOTHROW(b.schema(schema_ui(0, A, succ(zero()))));

  // a line claiming the captured instance fails in the checker as well
  HilbertProof p;
  p.cfg = {1, false};
  HLine l;
  l.kind = HKind::Schema;
  l.inst = schema_ui(0, A, mk_var(y));
  l.prop = mk_imp(forall_(x, A.body), P("(exists (y 0) (= y (s y)))"));
  p.lines.push_back(l);
  HVerdict v = check_hilbert(p);
  CHECK_FALSE(v.ok);
  CHECK(v.line == 1);
}

TEST_CASE("intuitionistic configuration has no TND") {
  HilbertBuilder b({1, true});
  CHECK_THROWS(b.schema(schema0("TND", {{"A", P("(= 0 0)")}})));
}

TEST_CASE("theory schemata instantiate") {
  HilbertConfig c{2, false};
  Var x = mkvar("x", N);
  Template t = Template::unary(x, P("(= x 0)", 2));
  for (const char* s : {"Leibniz", "Ind"}) {
    SchemaInstance in = schema0(s);
    in.props["A"] = t;
    CHECK_NOTHROW(instantiate_schema(in, c));
  }
  SchemaInstance comp = schema0("Comp");
  comp.j = 0;
  comp.props["A"] = t;
  Expr e = instantiate_schema(comp, c);
  CHECK(e->kind == Kind::Exists);
  CHECK(alpha_equal(instantiate_schema(schema0("Refl"), c), refl_axiom()));
}

TEST_CASE("hilbert files round trip and report line numbers") {
  RandomGen g(2);
  HilbertProof p = random_hilbert_proof(g, 2, 12, true);
  REQUIRE(check_hilbert(p).ok);
  std::string text = write_sexp_pretty(hilbert_to_sexp(p));
  HilbertProof q = parse_hilbert(read_sexp(text));
  CHECK(write_sexp_pretty(hilbert_to_sexp(q)) == text);
  CHECK(check_hilbert(q).ok);
  CHECK(recheck_serialized(p).ok);
  try {
    parse_hilbert(read_sexp("(hilbert-proof (order 1)\n (line 1 (schema I :A (= 0 0)) (imp (= 0 0) (= 0 0)))\n (line 3 (mp 1 1) (= 0 0)))"));
    FAIL("accepted");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("property: random schematic proofs check") {
  RandomGen g(41);
  for (int k = 0; k < 100; ++k) {
    HilbertProof p = random_hilbert_proof(g, 1 + k % 3, 5 + k % 20, k % 2 == 0);
    HVerdict v = check_hilbert(p);
    REQUIRE_MESSAGE(v.ok, v.error << " line " << v.line);
  }
}
