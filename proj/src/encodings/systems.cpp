#include "dm/encodings.hpp"

namespace dm {

namespace {

const Sort N = Sort::arith(0);
const Sort L = Sort::list();
const Sort C = Sort::cls();

std::string j_(const std::string& base, int j) { return base + std::to_string(j); }

void add_ws_rules(RewriteSystem& R, int i) {
  Expr l = var("l", L);
  for (int j = 0; j <= i; ++j) {
    Expr t = var("t", Sort::arith(j));
    R.add_rule(j_("sub_nil", j), sub(t, nil()), t);
  }
  for (int j = 0; j <= i; ++j) {
    Expr t = var("t", Sort::arith(j));
    R.add_rule(j_("sub_one", j), sub(one(j), cons(t, l)), t);
  }
  for (int j = 0; j <= i; ++j) {
    for (int k = 0; k <= i; ++k) {
      Expr n = var("n", Sort::arith(j));
      Expr t = var("t", Sort::arith(k));
      R.add_rule("sub_S" + std::to_string(j) + "_" + std::to_string(k), sub(S(n), cons(t, l)), sub(n, l));
    }
  }
  Expr n = var("n", N);
  Expr t1 = var("t1", N);
  Expr t2 = var("t2", N);
  R.add_rule("sub_s", sub(succ(n), l), succ(sub(n, l)));
  R.add_rule("sub_plus", sub(plus(t1, t2), l), plus(sub(t1, l), sub(t2, l)));
  R.add_rule("sub_times", sub(times(t1, t2), l), times(sub(t1, l), sub(t2, l)));
  R.add_rule("eps_eq", eps(l, doteq(t1, t2)), eq(sub(t1, l), sub(t2, l)));
  for (int j = 0; j < i; ++j) {
    Expr a = var("t1", Sort::arith(j));
    Expr b = var("t2", Sort::arith(j + 1));
    R.add_rule(j_("eps_in", j), eps(l, dotin(j, a, b)), in(j, sub(a, l), sub(b, l)));
  }
  Expr A = var("A", C);
  Expr B = var("B", C);
  R.add_rule("eps_union", eps(l, cunion(A, B)), mk_or(eps(l, A), eps(l, B)));
  R.add_rule("eps_inter", eps(l, cinter(A, B)), mk_and(eps(l, A), eps(l, B)));
  R.add_rule("eps_imp", eps(l, cimp(A, B)), mk_imp(eps(l, A), eps(l, B)));
  R.add_rule("eps_empty", eps(l, cempty()), mk_bot());
  for (int j = 0; j <= i; ++j) {
    Var x = mkvar("x", Sort::arith(j));
    R.add_rule(j_("eps_ex", j), eps(l, cex(j, A)), exists_(x, eps(cons(mk_var(x), l), A)));
  }
  for (int j = 0; j <= i; ++j) {
    Var x = mkvar("x", Sort::arith(j));
    R.add_rule(j_("eps_all", j), eps(l, call(j, A)), forall_(x, eps(cons(mk_var(x), l), A)));
  }
}

void add_comp_rules(RewriteSystem& R, int i) {
  Expr A = var("A", C);
  for (int j = 0; j < i; ++j) {
    Expr x = var("x", Sort::arith(j));
    R.add_rule(j_("comp", j), in(j, x, comp(j + 1, A)), member(x, A));
  }
}

}  // namespace

RewriteSystem add_system() {
  RewriteSystem R("add", add_signature());
  Expr x = v0("x");
  Expr y = v0("y");
  Expr z = v0("z");
  R.add_rule("add0", add_atom(zero(), y, y), mk_top());
  R.add_rule("adds", add_atom(succ(x), y, succ(z)), add_atom(x, y, z));
  R.terminating = true;
  R.confluent = true;
  R.fuel_c0 = 4;
  R.fuel_k = 1;
  return R;
}

RewriteSystem ws_system(int i) {
  RewriteSystem R("ws" + std::to_string(i), classes_signature(i));
  add_ws_rules(R, i);
  R.terminating = true;
  R.confluent = true;
  R.fuel_c0 = 4;
  R.fuel_k = 1;
  return R;
}

RewriteSystem ho_system(int i) {
  RewriteSystem R("ho" + std::to_string(i), classes_signature(i));
  add_ws_rules(R, i);
  add_comp_rules(R, i);
  R.terminating = true;
  R.confluent = true;
  R.fuel_c0 = 8;
  R.fuel_k = 2;
  return R;
}

RewriteSystem hha_system(int i) {
  RewriteSystem R("hha" + std::to_string(i), classes_signature(i, true));
  Expr x = v0("x");
  Expr y = v0("y");
  Expr l = var("l", L);
  R.add_rule("pred0", predf(zero()), zero());
  R.add_rule("preds", predf(succ(x)), x);
  R.add_rule("plus0", plus(zero(), y), y);
  R.add_rule("pluss", plus(succ(x), y), succ(plus(x, y)));
  R.add_rule("times0", times(zero(), y), zero());
  R.add_rule("timess", times(succ(x), y), plus(times(x, y), y));
  R.add_rule("null0", null_atom(zero()), mk_top());
  R.add_rule("nulls", null_atom(succ(x)), mk_bot());
  Var z = mkvar("z", C);
  R.add_rule("eq", eq(x, y), forall_(z, mk_imp(member(x, mk_var(z)), member(y, mk_var(z)))));
  add_comp_rules(R, i);
  Expr p = vc("p");
  Var yv = mkvar("y", N);
  Expr yb = mk_var(yv);
  R.add_rule(kHhaInductionRule, member(x, p),
             mk_or(member(x, p),
                   mk_and(member(zero(), p), forall_(yv, mk_imp(member(yb, p), member(succ(yb), p))))));
  add_ws_rules(R, i);
  Expr n = v0("n");
  Expr t = v0("t");
  R.add_rule("sub_pred", sub(predf(n), l), predf(sub(n, l)));
  R.add_rule("eps_null", eps(l, dotnull(t)), null_atom(sub(t, l)));
  R.terminating = false;
  R.confluent = false;
  R.fuel_c0 = 16;
  R.fuel_k = 2;

  auto subsys = std::make_shared<RewriteSystem>(R.without({kHhaInductionRule}, R.name() + "-noind"));
  subsys->terminating = true;
  subsys->confluent = false;
  R.auto_subsystem = subsys;
  return R;
}

}  // namespace dm
