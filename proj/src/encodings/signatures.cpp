#include "dm/encodings.hpp"

namespace dm {

std::string in_sym(int j) { return "in" + std::to_string(j); }
std::string inc_sym(int j) { return "inc" + std::to_string(j); }
std::string one_sym(int j) { return "one" + std::to_string(j); }
std::string S_sym(int j) { return "S" + std::to_string(j); }
std::string sub_sym(int j) { return "sub" + std::to_string(j); }
std::string cons_sym(int j) { return "cons" + std::to_string(j); }
std::string ex_sym(int j) { return "ex" + std::to_string(j); }
std::string all_sym(int j) { return "all" + std::to_string(j); }
std::string comp_sym(int j) { return "comp" + std::to_string(j); }

namespace {

const Sort N = Sort::arith(0);
const Sort L = Sort::list();
const Sort C = Sort::cls();

void arith_core(Signature& s, int top) {
  for (int j = 0; j <= top; ++j) s.add_sort(Sort::arith(j));
  s.add_fun("0", {}, N);
  s.add_fun("s", {N}, N);
  s.add_fun("+", {N, N}, N);
  s.add_fun("*", {N, N}, N);
  s.add_pred("=", {N, N});
  for (int j = 0; j < top; ++j) s.add_pred(in_sym(j), {Sort::arith(j), Sort::arith(j + 1)});
}

Sym sy(const std::string& s) { return intern(s); }

}  // namespace

Signature zi_signature(int order) {
  if (order < 1) throw KernelError("order must be at least 1");
  Signature s;
  arith_core(s, order - 1);
  return s;
}

Signature classes_signature(int i, bool hha) {
  if (i < 0) throw KernelError("class extension needs i >= 0");
  Signature s;
  arith_core(s, i);
  s.add_sort(L);
  s.add_sort(C);
  for (int j = 0; j <= i; ++j) {
    Sort J = Sort::arith(j);
    s.add_fun(one_sym(j), {}, J);
    s.add_fun(S_sym(j), {J}, J);
    s.add_fun(sub_sym(j), {J, L}, J);
    s.add_fun(cons_sym(j), {J, L}, L);
  }
  s.add_fun("nil", {}, L);
  s.add_fun("eqc", {N, N}, C);
  for (int j = 0; j < i; ++j) s.add_fun(inc_sym(j), {Sort::arith(j), Sort::arith(j + 1)}, C);
  s.add_fun("union", {C, C}, C);
  s.add_fun("inter", {C, C}, C);
  s.add_fun("impc", {C, C}, C);
  s.add_fun("empty", {}, C);
  for (int j = 0; j <= i; ++j) {
    s.add_fun(ex_sym(j), {C}, C);
    s.add_fun(all_sym(j), {C}, C);
  }
  s.add_pred("eps", {L, C});
  for (int j = 0; j < i; ++j) s.add_fun(comp_sym(j + 1), {C}, Sort::arith(j + 1));
  if (hha) {
    s.add_fun("pred", {N}, N);
    s.add_pred("Null", {N});
    s.add_fun("nullc", {N}, C);
  }
  return s;
}

Signature add_signature() {
  Signature s;
  s.add_sort(N);
  s.add_fun("0", {}, N);
  s.add_fun("s", {N}, N);
  s.add_pred("Add", {N, N, N});
  return s;
}

// ---------------------------------------------------------------------------
// builders

Expr zero() {
  static const Expr z = mk_app(intern("0"), N, {});
  return z;
}
Expr succ(Expr t) { return mk_app(sy("s"), N, {std::move(t)}); }
Expr numeral(unsigned n) {
  Expr t = zero();
  for (unsigned k = 0; k < n; ++k) t = succ(t);
  return t;
}
Expr plus(Expr a, Expr b) { return mk_app(sy("+"), N, {std::move(a), std::move(b)}); }
Expr times(Expr a, Expr b) { return mk_app(sy("*"), N, {std::move(a), std::move(b)}); }
Expr eq(Expr a, Expr b) { return mk_atom(sy("="), {std::move(a), std::move(b)}); }
Expr in(int j, Expr a, Expr b) { return mk_atom(sy(in_sym(j)), {std::move(a), std::move(b)}); }
Expr predf(Expr t) { return mk_app(sy("pred"), N, {std::move(t)}); }
Expr null_atom(Expr t) { return mk_atom(sy("Null"), {std::move(t)}); }
Expr nil() {
  static const Expr n = mk_app(intern("nil"), L, {});
  return n;
}
Expr cons(Expr t, Expr l) {
  int j = t->sort.level();
  return mk_app(sy(cons_sym(j)), L, {std::move(t), std::move(l)});
}
Expr tuple(const std::vector<Expr>& ts) {
  Expr l = nil();
  for (std::size_t k = ts.size(); k-- > 0;) l = cons(ts[k], l);
  return l;
}
Expr sub(Expr t, Expr l) {
  Sort s = t->sort;
  return mk_app(sy(sub_sym(s.level())), s, {std::move(t), std::move(l)});
}
Expr eps(Expr l, Expr c) { return mk_atom(sy("eps"), {std::move(l), std::move(c)}); }
Expr member(const std::vector<Expr>& ts, Expr c) { return eps(tuple(ts), std::move(c)); }
Expr member(Expr t, Expr c) { return eps(tuple({std::move(t)}), std::move(c)); }
Expr one(int j) { return mk_app(sy(one_sym(j)), Sort::arith(j), {}); }
Expr S(Expr t) {
  Sort s = t->sort;
  return mk_app(sy(S_sym(s.level())), s, {std::move(t)});
}
Expr doteq(Expr a, Expr b) { return mk_app(sy("eqc"), C, {std::move(a), std::move(b)}); }
Expr dotin(int j, Expr a, Expr b) { return mk_app(sy(inc_sym(j)), C, {std::move(a), std::move(b)}); }
Expr cunion(Expr a, Expr b) { return mk_app(sy("union"), C, {std::move(a), std::move(b)}); }
Expr cinter(Expr a, Expr b) { return mk_app(sy("inter"), C, {std::move(a), std::move(b)}); }
Expr cimp(Expr a, Expr b) { return mk_app(sy("impc"), C, {std::move(a), std::move(b)}); }
Expr cempty() { return mk_app(sy("empty"), C, {}); }
Expr cex(int j, Expr a) { return mk_app(sy(ex_sym(j)), C, {std::move(a)}); }
Expr call(int j, Expr a) { return mk_app(sy(all_sym(j)), C, {std::move(a)}); }
Expr comp(int j, Expr a) { return mk_app(sy(comp_sym(j)), Sort::arith(j), {std::move(a)}); }
Expr dotnull(Expr t) { return mk_app(sy("nullc"), C, {std::move(t)}); }
Expr add_atom(Expr a, Expr b, Expr c) { return mk_atom(sy("Add"), {std::move(a), std::move(b), std::move(c)}); }

Expr v0(std::string_view name) { return var(name, N); }
Expr vc(std::string_view name) { return var(name, C); }

}  // namespace dm
