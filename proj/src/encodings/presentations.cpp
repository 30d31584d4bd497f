#include "dm/encodings.hpp"

namespace dm {

namespace {

const Sort N = Sort::arith(0);
const Sort L = Sort::list();
const Sort C = Sort::cls();

Var a0() { return mkvar("a", N); }
Var b0() { return mkvar("b", N); }
Var gc() { return mkvar("g", C); }

Expr all(std::initializer_list<Var> vs, Expr body) {
  std::vector<Var> xs(vs);
  for (std::size_t k = xs.size(); k-- > 0;) body = forall_(xs[k], body);
  return body;
}

Expr V(Var v) { return mk_var(v); }

// Equality at sort j: = for j = 0, eq<j> otherwise (declared on demand).
Expr eq_at(int j, Expr a, Expr b) {
  if (j == 0) return eq(std::move(a), std::move(b));
  return mk_atom(intern("eq" + std::to_string(j)), {std::move(a), std::move(b)});
}

}  // namespace

const Axiom* Presentation::find(std::string_view n) const {
  for (const auto& a : axioms)
    if (a.name == n) return &a;
  return nullptr;
}

Expr refl_axiom() { return forall_(a0(), eq(V(a0()), V(a0()))); }

std::vector<std::string> robinson_names() { return {"0!=s", "Inj_s", "Onto_s", "+0", "+s", "x0", "xs"}; }

Expr robinson_axiom(std::string_view name) {
  Expr a = V(a0());
  Expr b = V(b0());
  if (name == "0!=s") return forall_(a0(), neg(eq(zero(), succ(a))));
  if (name == "Inj_s") return all({a0(), b0()}, mk_imp(eq(succ(a), succ(b)), eq(a, b)));
  if (name == "Onto_s") return forall_(a0(), mk_imp(neg(eq(a, zero())), exists_(b0(), eq(a, succ(b)))));
  if (name == "+0") return forall_(a0(), eq(plus(a, zero()), a));
  if (name == "+s") return all({a0(), b0()}, eq(plus(a, succ(b)), succ(plus(a, b))));
  if (name == "x0") return forall_(a0(), eq(times(a, zero()), zero()));
  if (name == "xs") return all({a0(), b0()}, eq(times(a, succ(b)), plus(times(a, b), a)));
  throw KernelError("unknown Robinson axiom " + std::string(name));
}

Expr leibniz_ax() {
  Expr a = V(a0());
  Expr b = V(b0());
  Expr g = V(gc());
  return all({gc(), a0(), b0()}, mk_imp(eq(a, b), mk_imp(member(a, g), member(b, g))));
}

Expr ind_ax() {
  Expr g = V(gc());
  Expr b = V(b0());
  Expr a = V(a0());
  return forall_(gc(), mk_imp(member(zero(), g),
                              mk_imp(forall_(b0(), mk_imp(member(b, g), member(succ(b), g))),
                                     forall_(a0(), member(a, g)))));
}

Expr comp_ax(int j) {
  Var al = mkvar("a", Sort::arith(j + 1));
  Var be = mkvar("b", Sort::arith(j));
  Expr g = V(gc());
  return forall_(gc(), exists_(al, forall_(be, iff(in(j, V(be), V(al)), member(V(be), g)))));
}

Expr comp_sk(int j) {
  Var be = mkvar("b", Sort::arith(j));
  Expr g = V(gc());
  return all({gc(), be}, iff(in(j, V(be), comp(j + 1, g)), member(V(be), g)));
}

std::vector<Axiom> ws_axioms(int i) {
  std::vector<Axiom> out;
  Var l = mkvar("l", L);
  for (int j = 0; j <= i; ++j) {
    Var a = mkvar("a", Sort::arith(j));
    out.push_back({"WS_nil" + std::to_string(j), forall_(a, eq_at(j, sub(V(a), nil()), V(a)))});
  }
  for (int j = 0; j <= i; ++j) {
    Var a = mkvar("a", Sort::arith(j));
    out.push_back({"WS_one" + std::to_string(j), all({a, l}, eq_at(j, sub(one(j), cons(V(a), V(l))), V(a)))});
  }
  for (int j = 0; j <= i; ++j)
    for (int k = 0; k <= i; ++k) {
      Var a = mkvar("a", Sort::arith(j));
      Var b = mkvar("b", Sort::arith(k));
      out.push_back({"WS_S" + std::to_string(j) + "_" + std::to_string(k),
                     all({a, b, l}, eq_at(j, sub(S(V(a)), cons(V(b), V(l))), sub(V(a), V(l))))});
    }
  Expr A = V(a0());
  Expr B = V(b0());
  Expr Lv = V(l);
  out.push_back({"WS_s", all({a0(), l}, eq(sub(succ(A), Lv), succ(sub(A, Lv))))});
  out.push_back({"WS_+", all({a0(), b0(), l}, eq(sub(plus(A, B), Lv), plus(sub(A, Lv), sub(B, Lv))))});
  out.push_back({"WS_x", all({a0(), b0(), l}, eq(sub(times(A, B), Lv), times(sub(A, Lv), sub(B, Lv))))});
  out.push_back({"WS_=", all({a0(), b0(), l}, iff(eps(Lv, doteq(A, B)), eq(sub(A, Lv), sub(B, Lv))))});
  for (int j = 0; j < i; ++j) {
    Var a = mkvar("a", Sort::arith(j));
    Var b = mkvar("b", Sort::arith(j + 1));
    out.push_back({"WS_in" + std::to_string(j),
                   all({a, b, l}, iff(eps(Lv, dotin(j, V(a), V(b))), in(j, sub(V(a), Lv), sub(V(b), Lv))))});
  }
  Var ac = mkvar("a", C);
  Var bc = mkvar("b", C);
  Expr Ac = V(ac);
  Expr Bc = V(bc);
  out.push_back({"WS_or", all({ac, bc, l}, iff(eps(Lv, cunion(Ac, Bc)), mk_or(eps(Lv, Ac), eps(Lv, Bc))))});
  out.push_back({"WS_and", all({ac, bc, l}, iff(eps(Lv, cinter(Ac, Bc)), mk_and(eps(Lv, Ac), eps(Lv, Bc))))});
  out.push_back({"WS_imp", all({ac, bc, l}, iff(eps(Lv, cimp(Ac, Bc)), mk_imp(eps(Lv, Ac), eps(Lv, Bc))))});
  out.push_back({"WS_bot", forall_(l, iff(eps(Lv, cempty()), mk_bot()))});
  for (int j = 0; j <= i; ++j) {
    Var b = mkvar("b", Sort::arith(j));
    out.push_back({"WS_ex" + std::to_string(j),
                   all({ac, l}, iff(eps(Lv, cex(j, Ac)), exists_(b, eps(cons(V(b), Lv), Ac))))});
  }
  for (int j = 0; j <= i; ++j) {
    Var b = mkvar("b", Sort::arith(j));
    out.push_back({"WS_all" + std::to_string(j),
                   all({ac, l}, iff(eps(Lv, call(j, Ac)), forall_(b, eps(cons(V(b), Lv), Ac))))});
  }
  return out;
}

namespace {

Signature ws_signature(int i, bool hha) {
  Signature s = classes_signature(i, hha);
  for (int j = 1; j <= i; ++j) s.add_pred("eq" + std::to_string(j), {Sort::arith(j), Sort::arith(j)});
  return s;
}

void add_core(Presentation& p) {
  p.add("Refl", refl_axiom());
  for (const auto& n : robinson_names()) p.add(n, robinson_axiom(n));
  p.add("Leibniz_ax", leibniz_ax());
  p.add("Ind_ax", ind_ax());
}

}  // namespace

Presentation fz_axioms(int i) {
  Presentation p;
  p.name = "FZ";
  p.sig = classes_signature(i);
  add_core(p);
  return p;
}

Presentation zws_axioms(int i) {
  Presentation p;
  p.name = "Zws" + std::to_string(i);
  p.sig = ws_signature(i, false);
  add_core(p);
  for (int j = 0; j < i; ++j) p.add("Comp_ax" + std::to_string(j), comp_ax(j));
  for (auto& a : ws_axioms(i)) p.axioms.push_back(std::move(a));
  return p;
}

Presentation zsk_axioms(int i) {
  Presentation p;
  p.name = "Zsk" + std::to_string(i);
  p.sig = ws_signature(i, false);
  add_core(p);
  for (int j = 0; j < i; ++j) p.add("Comp_sk" + std::to_string(j), comp_sk(j));
  for (auto& a : ws_axioms(i)) p.axioms.push_back(std::move(a));
  return p;
}

Presentation ho_compatible_axioms(int i) {
  Presentation p;
  p.name = "HO" + std::to_string(i) + "-compatible";
  p.sig = ws_signature(i, false);
  p.axioms = ws_axioms(i);
  for (int j = 0; j < i; ++j) p.add("Comp_sk" + std::to_string(j), comp_sk(j));
  return p;
}

Presentation hha_extra_axioms(int i) {
  Presentation p;
  p.name = "HHA-extra";
  p.sig = classes_signature(i, true);
  Expr a = V(a0());
  Expr b = V(b0());
  Expr g = V(gc());
  p.add("=_def", all({a0(), b0()}, iff(eq(a, b), forall_(gc(), mk_imp(member(a, g), member(b, g))))));
  p.add("pred_0", eq(predf(zero()), zero()));
  p.add("pred_s", forall_(a0(), eq(predf(succ(a)), a)));
  p.add("Null_0", null_atom(zero()));
  p.add("Null_s", forall_(a0(), neg(null_atom(succ(a)))));
  p.add("Ind_mod",
        all({a0(), gc()},
            iff(member(a, g),
                mk_or(member(a, g), mk_and(member(zero(), g),
                                           forall_(b0(), mk_imp(member(b, g), member(succ(b), g))))))));
  return p;
}

Presentation add_presentation1() {
  Presentation p;
  p.name = "add-axioms";
  p.sig = add_signature();
  Var x = mkvar("x", N), y = mkvar("y", N), z = mkvar("z", N);
  p.add("add0", forall_(y, add_atom(zero(), V(y), V(y))));
  p.add("adds", all({x, y, z}, iff(add_atom(succ(V(x)), V(y), succ(V(z))), add_atom(V(x), V(y), V(z)))));
  return p;
}

Presentation add_presentation2() {
  Presentation p;
  p.name = "add-rule-equivalences";
  p.sig = add_signature();
  Var x = mkvar("x", N), y = mkvar("y", N), z = mkvar("z", N);
  p.add("add0", forall_(y, iff(add_atom(zero(), V(y), V(y)), mk_top())));
  p.add("adds", all({x, y, z}, iff(add_atom(succ(V(x)), V(y), succ(V(z))), add_atom(V(x), V(y), V(z)))));
  return p;
}

}  // namespace dm
