#include "doctest.h"

#include <random>

#include "dm/bench.hpp"
#include "dm/encodings.hpp"
#include "dm/sexpr.hpp"
#include "dm/syntax.hpp"

using namespace dm;

namespace {

const Sort N = Sort::arith(0);
Signature Z2() { return zi_signature(2); }
Expr P(const char* text) { return parse_prop(Z2(), text); }
Expr T(const char* text) { return parse_term(Z2(), text, N); }

}  // namespace

TEST_CASE("sexp reader tracks lines and rejects junk") {
  SExp s = read_sexp("(a\n  (b c)\n  d)");
  REQUIRE(s.size() == 3);
  CHECK(s.line == 1);
  CHECK(s[1].line == 2);
  CHECK(s[2].line == 3);
  CHECK(s[1].head_is("b"));
  CHECK_THROWS_AS(read_sexp("(a (b)"), ParseError);
  CHECK_THROWS_AS(read_sexp("a)"), ParseError);
  try {
    read_sexp("(a\n\n (b");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() >= 1);
  }
}

TEST_CASE("sexp comments and keywords") {
  SExp s = read_sexp("; header\n(x :k v ; trailing\n y)");
  REQUIRE(s.size() == 4);
  const SExp* v = s.keyword(":k");
  REQUIRE(v);
  CHECK(v->is("v"));
  CHECK(s.keyword(":missing") == nullptr);
}

TEST_CASE("write_sexp round trip") {
  const char* texts[] = {"(a b (c d) ())", "x", "(forall (a 0) (imp (= a a) (= (s a) (s a))))"};
  for (const char* t : texts) {
    SExp s = read_sexp(t);
    CHECK(write_sexp(s) == t);
    CHECK(write_sexp(read_sexp(write_sexp_pretty(s, 10))) == t);
  }
}

TEST_CASE("parse and print propositions") {
  Expr p = P("(forall (x 0) (imp (= x 0) (exists (y 1) (in0 x y))))");
  CHECK(print(p) == "(forall (x 0) (imp (= x 0) (exists (y 1) (in0 x y))))");
  CHECK(alpha_equal(parse_prop(Z2(), print(p)), p));
  CHECK_THROWS_AS(P("(= x)"), KernelError);
  CHECK_THROWS_AS(P("(in0 x 0)"), KernelError);  // second argument has sort 1
  CHECK_THROWS_AS(P("(frob x)"), KernelError);
}

TEST_CASE("alpha equivalence ignores binder names") {
  CHECK(alpha_equal(P("(forall (x 0) (= x x))"), P("(forall (z 0) (= z z))")));
  CHECK_FALSE(alpha_equal(P("(forall (x 0) (= x y))"), P("(forall (y 0) (= y y))")));
  CHECK_FALSE(alpha_equal(P("(forall (x 0) (= x x))"), P("(exists (x 0) (= x x))")));
  // sorts of binders matter
  CHECK_FALSE(alpha_equal(P("(forall (x 0) top)"), P("(forall (x 1) top)")));
}

TEST_CASE("substitution avoids capture") {
  Var x = mkvar("x", N), y = mkvar("y", N);
  Expr p = P("(exists (y 0) (= x y))");
  Expr r = subst1(p, x, mk_var(y));
  CHECK(free_vars(r).count(y));
  CHECK(alpha_equal(r, P("(exists (z 0) (= y z))")));
  CHECK_FALSE(freely_substitutable(mk_var(y), x, p));
  CHECK(freely_substitutable(T("(s x)"), x, p));
}

TEST_CASE("free variables and sizes") {
  Expr p = P("(and (= x y) (forall (x 0) (= x z)))");
  auto fv = free_vars(p);
  CHECK(fv.size() == 3);
  CHECK(size(T("(+ x (s 0))")) == 4);
  CHECK(size(P("(= x x)")) == 3);
}

TEST_CASE("positions address subterms") {
  Expr t = T("(+ x (s 0))");
  auto ps = positions(t);
  CHECK(ps.size() == 4);
  CHECK(alpha_equal(subterm_at(t, {2}), T("(s 0)")));
  CHECK(alpha_equal(replace_at(t, T("y"), {2, 1}), T("(+ x (s y))")));
  CHECK_FALSE(valid_position(t, {3}));
}

TEST_CASE("derived connectives") {
  Expr a = P("(= 0 0)"), b = P("(= x 0)");
  CHECK(alpha_equal(neg(a), mk_imp(a, mk_bot())));
  CHECK(alpha_equal(iff(a, b), mk_and(mk_imp(a, b), mk_imp(b, a))));
  CHECK(alpha_equal(P("(not (= 0 0))"), neg(a)));
}

TEST_CASE("fresh variables avoid the given set") {
  Var x = mkvar("x", N);
  std::set<Var> avoid{x};
  Var f = fresh_var("x", N, avoid);
  CHECK(f != x);
  CHECK(f.sort == N);
}

TEST_CASE("opening a quantifier") {
  Expr q = P("(forall (x 0) (exists (y 0) (= x y)))");
  auto [v, body] = open_quant(q);
  CHECK(v.sort == N);
  CHECK(body->kind == Kind::Exists);
  CHECK(alpha_equal(forall_(v, body), q));
}

TEST_CASE("signature merge and well-sortedness") {
  Signature s = add_signature();
  s.merge(zi_signature(1));
  CHECK(s.pred("Add"));
  CHECK(s.well_sorted(add_atom(numeral(1), numeral(1), numeral(2))));
  CHECK_FALSE(zi_signature(1).well_sorted(add_atom(numeral(1), numeral(1), numeral(2))));
}

TEST_CASE("property: print / parse is the identity on random propositions") {
  RandomGen g(11);
  for (int k = 0; k < 300; ++k) {
    PropGenOptions o;
    o.order = 1 + static_cast<int>(k % 3);
    o.max_size = 25;
    Expr p = g.prop(o);
    Expr q = parse_prop(zi_signature(o.order), print(p));
    REQUIRE_MESSAGE(alpha_equal(p, q), print(p));
    CHECK(write_sexp(to_sexp(q)) == print(p));
  }
}

TEST_CASE("property: substituting a fresh variable and back is the identity") {
  RandomGen g(5);
  for (int k = 0; k < 200; ++k) {
    PropGenOptions o;
    Expr p = g.prop(o);
    for (Var x : free_vars(p)) {
      Var z = fresh_var("z", x.sort, free_vars(p));
      Expr q = subst1(subst1(p, x, mk_var(z)), z, mk_var(x));
      CHECK(alpha_equal(p, q));
    }
  }
}
