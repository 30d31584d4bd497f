#include "common.hpp"
#include "dm/syntax.hpp"

namespace dm::tr {

namespace {

bool has_top(const Expr& e) {
  if (e->kind == Kind::Top) return true;
  for (const auto& a : e->args)
    if (has_top(a)) return true;
  return false;
}

Expr template_cls(const Template& a) {
  if (a.params.size() != 1) throw TranslationError("fragment templates must be unary");
  if (has_top(a.body)) throw TranslationError("template " + print(a.body) + " mentions top, which has no class encoding");
  return template_class(a.body, a.params[0]);
}

}  // namespace

NDPtr ho_leibniz(const Template& a, const Expr& concl) {
  Expr L = leibniz_ax();
  return nd::all_e(concl, L, template_cls(a), nd::ax("Leibniz_ax", L));
}

NDPtr ho_ind(const Template& a, const Expr& concl) {
  Expr I = ind_ax();
  return nd::all_e(concl, I, template_cls(a), nd::ax("Ind_ax", I));
}

NDPtr comp_fragment(const Template& a, int j, const Expr& concl) {
  Expr E = template_cls(a);
  if (concl->kind != Kind::Exists) throw TranslationError("Comp: instance is not existential: " + print(concl));
  std::set<Var> avoid = free_vars(concl);
  Var b = fresh_var("b", Sort::arith(j), avoid);
  Expr t = comp(j + 1, E);
  Expr Q2 = instantiate(concl->args[0], t);
  if (Q2->kind != Kind::Forall) throw TranslationError("Comp: instance has an unexpected shape: " + print(concl));
  Expr body = open_with(Q2, b);
  if (body->kind != Kind::And || body->args[0]->kind != Kind::Imp)
    throw TranslationError("Comp: instance has an unexpected shape: " + print(concl));
  Expr X = body->args[0]->args[0], Y = body->args[0]->args[1];
  NDPtr n1 = nd::imp_i(mk_imp(X, Y), "i", X, nd::hyp("i", X));
  NDPtr n2 = nd::imp_i(mk_imp(Y, X), "ii", Y, nd::hyp("ii", Y));
  NDPtr n3 = nd::and_i(body, n1, n2);
  NDPtr n4 = nd::all_i(Q2, Q2, b, n3);
  return nd::ex_i(concl, concl, t, n4);
}

}  // namespace dm::tr
