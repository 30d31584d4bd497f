#include "doctest.h"

#include "dm/bench.hpp"
#include "dm/encodings.hpp"
#include "dm/files.hpp"
#include "dm/syntax.hpp"

using namespace dm;

namespace {

const Sort N = Sort::arith(0);

Expr decode(const Expr& p, const RewriteSystem& R, std::size_t* steps = nullptr) {
  std::set<Var> fvs = free_vars(p);
  std::vector<Var> fv(fvs.begin(), fvs.end());
  std::vector<Expr> ts;
  for (Var v : fv) ts.push_back(mk_var(v));
  Normalized n = normalize(member(ts, encode_prop(p, fv).cls), R);
  if (steps) *steps = n.trace.steps.size();
  return n.nf;
}

}  // namespace

TEST_CASE("the worked decoding example takes 10 steps") {
  Var x = mkvar("x", N);
  Expr P = parse_prop(zi_signature(2), "(or (= x 0) (exists (y 1) (in0 x y)))");
  EncodedClass e = encode_prop(P, {x});
  CHECK(print(e.cls) == "(union (eqc one0 (S0 0)) (ex1 (inc0 (S0 one0) one1)))");
  Normalized n = normalize(member(v0("t"), e.cls), ho_system(1));
  Expr want = parse_prop(classes_signature(1), "(or (= t 0) (exists (x 1) (in0 t x)))");
  CHECK(alpha_equal(n.nf, want));
  CHECK(n.trace.steps.size() == 10);
}

TEST_CASE("system shapes") {
  CHECK(add_system().rules().size() == 2);
  RewriteSystem ho = ho_system(1), ws = ws_system(1), hha = hha_system(1);
  CHECK(ho.rules().size() == ws.rules().size() + 1);
  CHECK_FALSE(ws.rule("comp0"));
  CHECK(ho.rule("comp0"));
  CHECK(ho.terminating);
  CHECK(ho.confluent);
  CHECK_FALSE(hha.terminating);
  REQUIRE(hha.auto_subsystem);
  CHECK_FALSE(hha.auto_subsystem->rule("ind"));
}

TEST_CASE("FZ has ten axioms") {
  Presentation fz = fz_axioms(1);
  CHECK(fz.axioms.size() == 10);
  CHECK(fz.find("Leibniz_ax"));
  CHECK(fz.find("Ind_ax"));
  CHECK(robinson_names().size() == 7);
}

TEST_CASE("Add presentations") {
  Presentation p1 = add_presentation1(), p2 = add_presentation2();
  CHECK(p1.axioms.size() == 2);
  CHECK(p2.axioms.size() == 2);
  CHECK(print(p1.find("add0")->prop) == "(forall (y 0) (Add 0 y y))");
}

TEST_CASE("HHA: Null(s(0)) reduces to bot in one step") {
  RewriteSystem R = hha_system(1);
  Normalized n = normalize(null_atom(succ(zero())), *R.auto_subsystem);
  CHECK(n.nf->kind == Kind::Bot);
  CHECK(n.trace.steps.size() == 1);
}

TEST_CASE("HHA: equality unfolds to the Leibniz form") {
  RewriteSystem R = hha_system(1);
  auto rd = first_redex(eq(v0("x"), v0("y")), R);
  REQUIRE(rd);
  CHECK(rd->rule->name == "eq");
  Expr r = contract(eq(v0("x"), v0("y")), *rd);
  CHECK(alpha_equal(r, parse_prop(classes_signature(1, true),
                                  "(forall (z c) (imp (eps (cons0 x nil) z) (eps (cons0 y nil) z)))")));
}

TEST_CASE("HHA: the induction rule embeds its own left side") {
  RewriteSystem R = hha_system(1);
  const Rule* ind = R.rule("ind");
  REQUIRE(ind);
  bool embedded = false;
  for (const auto& p : positions(ind->rhs)) {
    Expr sub = subterm_at(ind->rhs, p);
    if (sub->kind == ind->lhs->kind && match(ind->lhs, sub)) embedded = true;
  }
  CHECK(embedded);
  NormalizeOptions o;
  o.fuel = 50;
  CHECK_THROWS_AS(normalize(member(v0("x"), vc("p")), R, o), FuelExhausted);
}

TEST_CASE("HHA: multiplication base case is 0 x y -> 0") {
  RewriteSystem R = hha_system(1);
  Expr t = normal_form(times(zero(), numeral(3)), *R.auto_subsystem);
  CHECK(alpha_equal(t, zero()));
  CHECK(alpha_equal(normal_form(times(numeral(2), numeral(3)), *R.auto_subsystem), numeral(6)));
  CHECK(alpha_equal(normal_form(plus(numeral(2), numeral(3)), *R.auto_subsystem), numeral(5)));
}

TEST_CASE("encoder covers pred and Null in the HHA signature") {
  Var x = mkvar("x", N);
  Expr p = mk_imp(null_atom(predf(mk_var(x))), mk_bot());
  EncodedClass e = encode_prop(p, {x});
  Normalized n = normalize(member(v0("t"), e.cls), *hha_system(1).auto_subsystem);
  CHECK(alpha_equal(n.nf, mk_imp(null_atom(predf(v0("t"))), mk_bot())));
}

TEST_CASE("encoder: top becomes empty =>. empty, foreign predicates are refused") {
  Var x = mkvar("x", N);
  Expr withtop = mk_and(mk_top(), eq(mk_var(x), zero()));
  EncodedClass e = encode_prop(withtop, {x});
  Expr d = normalize(member(v0("t"), e.cls), ho_system(0)).nf;
  CHECK(alpha_equal(d, mk_and(mk_imp(mk_bot(), mk_bot()), eq(v0("t"), zero()))));
  CHECK_THROWS_AS(encode_prop(add_atom(mk_var(x), zero(), zero()), {x}), KernelError);
}

TEST_CASE("comprehension axioms are closed universal statements") {
  Expr a = comp_sk(0);
  CHECK(a->kind == Kind::Forall);
  CHECK(comp_ax(0)->kind == Kind::Forall);
}

TEST_CASE("property: decoding an encoded proposition gives it back (HO and WS)") {
  RandomGen g(8);
  for (int k = 0; k < 200; ++k) {
    PropGenOptions o;
    o.order = 1 + k % 3;
    o.allow_top = false;
    o.max_size = 20;
    Expr p = g.prop(o);
    int i = o.order - 1;
    std::size_t s1 = 0, s2 = 0;
    Expr d1 = decode(p, ho_system(i), &s1);
    Expr d2 = decode(p, ws_system(i), &s2);
    REQUIRE_MESSAGE(alpha_equal(d1, p), print(p) << " decoded to " << print(d1));
    CHECK(alpha_equal(d2, p));
    CHECK(s1 == s2);
  }
}

TEST_CASE("property: WS derivations are no longer than the start object") {
  RandomGen g(13);
  RewriteSystem R = ws_system(1);
  DerivationOracle oracle(R, 10000);
  for (int k = 0; k < 150; ++k) {
    PropGenOptions o;
    o.order = 2;
    o.allow_top = false;
    o.max_size = 8;
    Expr p = g.prop(o);
    std::set<Var> fvs = free_vars(p);
    std::vector<Var> fv(fvs.begin(), fvs.end());
    std::vector<Expr> ts;
    for (Var v : fv) ts.push_back(mk_var(v));
    Expr x = member(ts, encode_prop(p, fv).cls);
    if (x->size > 14) continue;
    CHECK(oracle.longest(x) <= x->size);
  }
}

TEST_CASE("signature files") {
  Signature s = parse_signature(read_sexp("(signature (base zi 1) (sort 3) (fun f (0 3) 3) (pred Q (3)))"));
  CHECK(s.fun("f"));
  CHECK(s.pred("Q"));
  CHECK(s.pred("="));
  Signature t = parse_signature(read_sexp(write_sexp(signature_to_sexp(s))));
  CHECK(t.funs().size() == s.funs().size());
  CHECK(t.preds().size() == s.preds().size());
  CHECK_THROWS_AS(parse_signature(read_sexp("(signature (base nope))")), ParseError);
}
