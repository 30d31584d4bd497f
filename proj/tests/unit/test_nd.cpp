#include "doctest.h"

#include "dm/bench.hpp"
#include "dm/files.hpp"
#include "dm/nd.hpp"
#include "dm/syntax.hpp"

using namespace dm;

namespace {

const Sort N = Sort::arith(0);
Expr P(const char* text) { return parse_prop(zi_signature(2), text); }
RewriteSystem pure() { return empty_system(zi_signature(2)); }

Verdict chk(const NDPtr& p, const std::vector<Axiom>& ax = {}) { return check_nd(p, ax, pure()); }

std::string data(const char* f) { return std::string(DM_TEST_DATA) + "/" + f; }

}  // namespace

TEST_CASE("identity and its length") {
  Expr A = P("(= x 0)");
  NDPtr p = nd::imp_i("h", A, nd::hyp("h", A));
  Verdict v = chk(p);
  CHECK(v.ok);
  CHECK(v.length == 1);
  CHECK(alpha_equal(v.conclusion, mk_imp(A, A)));
}

TEST_CASE("an open hypothesis is not a proof") {
  Expr A = P("(= x 0)");
  Verdict v = chk(nd::hyp("h", A));
  CHECK_FALSE(v.ok);
  CHECK(v.length == 0);
  CHECK(v.error.find("undischarged") != std::string::npos);
}

TEST_CASE("discharging the wrong proposition is rejected") {
  Expr A = P("(= x 0)"), B = P("(= 0 x)");
  NDPtr p = nd::imp_i(mk_imp(B, A), "h", B, nd::hyp("h", A));
  CHECK_FALSE(chk(p).ok);
}

TEST_CASE("conjunction and disjunction") {
  Expr A = P("(= x 0)"), B = P("(= y 0)");
  NDPtr hab = nd::hyp("h", mk_and(A, B));
  NDPtr swap = nd::and_i(nd::and_e(Side::Right, hab), nd::and_e(Side::Left, hab));
  NDPtr p = nd::imp_i("h", mk_and(A, B), swap);
  Verdict v = chk(p);
  CHECK_MESSAGE(v.ok, v.error);
  CHECK(v.length == 4);

  NDPtr comm = nd::or_e(mk_or(B, A), nd::hyp("d", mk_or(A, B)), "l", A, nd::or_i(Side::Right, B, nd::hyp("l", A)),
                        "r", B, nd::or_i(Side::Left, A, nd::hyp("r", B)));
  Verdict w = chk(nd::imp_i("d", mk_or(A, B), comm));
  CHECK_MESSAGE(w.ok, w.error);
  CHECK(w.length == 4);
}

TEST_CASE("quantifier rules") {
  Var x = mkvar("x", N), y = mkvar("y", N);
  Expr Ax = P("(= x x)");
  Expr all = forall_(x, Ax);
  // forall x. x = x  =>  exists y. y = y
  NDPtr inst = nd::all_e(mk_var(y), nd::hyp("h", all));
  NDPtr ex = nd::ex_i(exists_(y, subst1(Ax, x, mk_var(y))), exists_(y, subst1(Ax, x, mk_var(y))), mk_var(y), inst);
  Verdict v = chk(nd::imp_i("h", all, ex));
  CHECK_MESSAGE(v.ok, v.error);
  CHECK(v.length == 3);
}

TEST_CASE("all-i with a non-fresh eigenvariable is rejected") {
  Var x = mkvar("x", N);
  Expr Ax = P("(= x 0)");
  // x = 0  =>  forall x. x = 0
  NDPtr bad = nd::imp_i("h", Ax, nd::all_i(x, nd::hyp("h", Ax)));
  Verdict v = chk(bad);
  CHECK_FALSE(v.ok);
  CHECK(v.where == "root.1");
  CHECK(v.error.find("eigenvariable") != std::string::npos);
}

TEST_CASE("ex-e eigenvariable conditions") {
  Var x = mkvar("x", N);
  Expr Ax = P("(= x 0)");
  Expr ex = exists_(x, Ax);
  // the eigenvariable may not escape into the conclusion
  NDPtr bad = nd::imp_i("e", ex, nd::ex_e(Ax, ex, x, "w", nd::hyp("e", ex), nd::hyp("w", Ax)));
  CHECK_FALSE(chk(bad).ok);
  NDPtr good = nd::imp_i("e", ex, nd::ex_e(ex, ex, x, "w", nd::hyp("e", ex),
                                           nd::ex_i(ex, ex, mk_var(x), nd::hyp("w", Ax))));
  Verdict v = chk(good);
  CHECK_MESSAGE(v.ok, v.error);
}

TEST_CASE("excluded middle and falsity") {
  Expr A = P("(= x 0)");
  CHECK(chk(nd::tnd(mk_or(A, neg(A)), A)).ok);
  NDPtr efq = nd::imp_i("b", mk_bot(), nd::bot_e(A, nd::hyp("b", mk_bot())));
  CHECK(chk(efq).ok);
  CHECK(chk(nd::top_i(mk_top())).ok);
  CHECK_FALSE(chk(nd::top_i(A)).ok);
}

TEST_CASE("assumption leaves must match the named axiom") {
  Expr A = P("(= 0 0)"), B = P("(= (s 0) 0)");
  std::vector<Axiom> ax{{"a", A}};
  CHECK(chk(nd::ax("a", A), ax).ok);
  CHECK_FALSE(chk(nd::ax("a", B), ax).ok);
  CHECK_FALSE(chk(nd::ax("b", A), ax).ok);
}

TEST_CASE("failure paths name the node") {
  Expr A = P("(= x 0)"), B = P("(= y 0)");
  NDPtr bad = nd::imp_i("h", A, nd::and_i(mk_and(A, A), nd::hyp("h", A), nd::hyp("h", B)));
  Verdict v = chk(bad);
  CHECK_FALSE(v.ok);
  CHECK(v.where.rfind("root.1", 0) == 0);
}

TEST_CASE("modulo Add: top-i proves Add(n, n, 2n)") {
  RewriteSystem R = add_system();
  for (unsigned n : {0u, 1u, 2u, 7u}) {
    Verdict v = check_nd(gen_add_modulo_proof(n), {}, R);
    CHECK(v.ok);
    CHECK(v.length == 1);
    CHECK(v.rewrite_steps == n + 1);
  }
  NDPtr forged = nd::top_i(add_atom(numeral(1), numeral(1), numeral(1)));
  Verdict v = check_nd(forged, {}, R);
  CHECK_FALSE(v.ok);
}

TEST_CASE("congruence modes") {
  RewriteSystem R = add_system();
  Expr goal = add_atom(numeral(2), numeral(2), numeral(4));
  NDPtr bare = nd::top_i(goal);
  NDCheckOptions w;
  w.mode = CongruenceMode::Witnessed;
  CHECK_FALSE(check_nd(bare, {}, R, w).ok);
  NDPtr wit = witness_all(bare, R);
  CHECK(check_nd(wit, {}, R, w).ok);
  NDCheckOptions m;
  m.mode = CongruenceMode::Mixed;
  CHECK(check_nd(bare, {}, R, m).ok);
  CHECK(check_nd(wit, {}, R, m).ok);

  // a forged trace for Add(1,1,1) ~ top is rejected in every mode
  Normalized n = normalize(add_atom(numeral(1), numeral(1), numeral(2)), R);
  NDPtr forged = nd::with_via(nd::top_i(add_atom(numeral(1), numeral(1), numeral(1))), 0, n.trace);
  for (auto mode : {CongruenceMode::Auto, CongruenceMode::Witnessed, CongruenceMode::Mixed}) {
    NDCheckOptions o;
    o.mode = mode;
    CHECK_FALSE(check_nd(forged, {}, R, o).ok);
  }
}

TEST_CASE("mode names") {
  CHECK(parse_mode("auto") == CongruenceMode::Auto);
  CHECK(parse_mode("witnessed") == CongruenceMode::Witnessed);
  CHECK(parse_mode("mixed") == CongruenceMode::Mixed);
  CHECK_FALSE(parse_mode("lazy"));
}

TEST_CASE("alpha-equal obligations need no rewriting under HHA") {
  RewriteSystem R = hha_system(1);
  Expr p = member(v0("x"), vc("p"));
  NDPtr hypid = nd::imp_i("h", p, nd::hyp("h", p));
  CHECK(check_nd(hypid, {}, R).ok);
}

TEST_CASE("fixture: compatibility proof of A <=> A \\/ B, 6 inferences") {
  SExp s = read_sexp_file(data("or_compat.sexp"));
  Signature sig = parse_signature(s[1]);
  NDFile f = parse_nd_file(s, sig);
  Verdict v = check_nd(f.proof, f.axioms, empty_system(sig));
  CHECK_MESSAGE(v.ok, v.error);
  CHECK(v.length == 6);
}

TEST_CASE("fixture: B => A modulo A -> A \\/ B, 2 inferences") {
  RewriteSystem R = parse_system(read_sexp_file(data("or_system.sexp")));
  NDFile f = parse_nd_file(read_sexp_file(data("or_modulo.sexp")), R.sig());
  NDCheckOptions o;
  o.mode = CongruenceMode::Witnessed;
  Verdict v = check_nd(f.proof, f.axioms, R, o);
  CHECK_MESSAGE(v.ok, v.error);
  CHECK(v.length == 2);
  CHECK_FALSE(check_nd(f.proof, f.axioms, empty_system(R.sig()), o).ok);
}

TEST_CASE("nd files round trip") {
  RewriteSystem R = add_system();
  NDPtr p = gen_add_axiomatic_proof(3);
  std::vector<Axiom> ax = add_presentation1().axioms;
  NDFile f{ax, p};
  std::string text = write_sexp_pretty(nd_file_to_sexp(f));
  NDFile g = parse_nd_file(read_sexp(text), R.sig());
  CHECK(write_sexp_pretty(nd_file_to_sexp(g)) == text);
  CHECK(check_nd(g.proof, g.axioms, empty_system(R.sig())).ok);
}

TEST_CASE("nd file parse errors carry lines") {
  try {
    parse_nd_file(read_sexp("(nd-proof\n (proof\n  (frob top)))"), zi_signature(1));
    FAIL("accepted");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_nd_file(read_sexp("(nd-proof (proof (imp-i top :bogus 1 (top-i top))))"), zi_signature(1)),
                  ParseError);
}

TEST_CASE("property: random proofs recheck from their serialized form") {
  RandomGen g(23);
  for (int k = 0; k < 60; ++k) {
    NDSample s = random_nd_proof(g, 1 + k % 2, 8 + k % 10, k % 3 == 0);
    RewriteSystem R = empty_system(zi_signature(s.order));
    Verdict v = check_nd(s.proof, s.assumptions, R);
    REQUIRE_MESSAGE(v.ok, v.error << " at " << v.where);
    Verdict r = recheck_serialized(s.proof, s.assumptions, R);
    CHECK_MESSAGE(r.ok, r.error);
    CHECK(r.length == v.length);
  }
}
