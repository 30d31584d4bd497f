#include <unordered_map>

#include "common.hpp"

namespace dm {

NDPtr rename_in_proof(const NDPtr& p, Var x, Var x2) {
  if (!p) return p;
  Expr t = mk_var(x2);
  auto f = [&](const Expr& e) { return e ? subst1(e, x, t) : e; };
  auto n = std::make_shared<NDNode>(*p);
  n->concl = f(n->concl);
  n->a = f(n->a);
  n->b = f(n->b);
  n->q = f(n->q);
  n->term = f(n->term);
  if (n->eigen == x) n->eigen = x2;
  for (auto& q : n->prem) q = rename_in_proof(q, x, x2);
  for (auto& v : n->via) {
    if (!v) continue;
    v->from = f(v->from);
    v->to = f(v->to);
    for (auto& s : v->steps)
      for (auto& kv : s.sigma) kv.second = f(kv.second);
  }
  return n;
}

namespace {

void leaves(const NDPtr& p, std::vector<Axiom>& out, std::set<std::string>& seen) {
  if (p->rule == NDRule::Ax) {
    if (seen.insert(p->name).second) out.push_back(Axiom{p->name, p->concl});
    return;
  }
  for (const auto& q : p->prem) leaves(q, out, seen);
}

void ax_vars(const NDPtr& p, std::set<Var>& out) {
  if (p->rule == NDRule::Ax) {
    auto fv = free_vars(p->concl);
    out.insert(fv.begin(), fv.end());
  }
  for (const auto& q : p->prem) ax_vars(q, out);
}

void all_vars(const NDPtr& p, std::set<Var>& out) {
  for (const auto& e : {p->concl, p->a, p->b, p->q, p->term})
    if (e) {
      auto fv = free_vars(e);
      out.insert(fv.begin(), fv.end());
    }
  if (p->rule == NDRule::AllI || p->rule == NDRule::ExE || p->rule == NDRule::Ind) out.insert(p->eigen);
  for (const auto& q : p->prem) all_vars(q, out);
}

}  // namespace

std::vector<Axiom> assumption_leaves(const NDPtr& p) {
  std::vector<Axiom> out;
  std::set<std::string> seen;
  leaves(p, out, seen);
  return out;
}

std::set<Var> open_leaf_vars(const NDPtr& p) {
  std::set<Var> out;
  for (const auto& [l, a] : nd_open_hyps(p)) {
    auto fv = free_vars(a);
    out.insert(fv.begin(), fv.end());
  }
  ax_vars(p, out);
  return out;
}

namespace tr {

void Names::avoid(const NDPtr& p) {
  auto vs = proof_vars(p);
  avoid_.insert(vs.begin(), vs.end());
}

std::set<Var> proof_vars(const NDPtr& p) {
  std::set<Var> out;
  if (p) all_vars(p, out);
  return out;
}

Expr rename_binders(const Expr& e, const std::set<Var>& avoid) {
  if (e->args.empty()) return e;
  if (is_binder(e)) {
    Expr body = rename_binders(e->args[0], avoid);
    Sym name = e->sym;
    if (avoid.count(Var{e->sym, e->sort})) {
      std::set<Var> av = avoid;
      auto fv = free_vars(body);
      av.insert(fv.begin(), fv.end());
      name = fresh_var(name_of(e->sym), e->sort, av).name;
    }
    return mk_quant(e->kind, name, e->sort, body);
  }
  std::vector<Expr> args;
  args.reserve(e->args.size());
  for (const auto& a : e->args) args.push_back(rename_binders(a, avoid));
  return rebuild(e, std::move(args));
}

Template quant_template(const Expr& q, const std::set<Var>& avoid) {
  if (!is_binder(q)) throw TranslationError("expected a quantified proposition, got " + print(q));
  std::set<Var> av = avoid;
  auto fv = free_vars(q);
  av.insert(fv.begin(), fv.end());
  Var h = fresh_var("h", q->sort, av);
  av.insert(h);
  return Template::unary(h, rename_binders(open_with(q, h), av));
}

NDPtr let_cut(const std::string& label, const NDPtr& lemma, const NDPtr& body) {
  const Expr& l = lemma->concl;
  return nd::imp_e(body->concl, lemma, nd::imp_i(mk_imp(l, body->concl), label, l, body));
}

NDPtr inst_all(NDPtr p, const std::vector<Expr>& ts) {
  for (const auto& t : ts) p = nd::all_e(t, p);
  return p;
}

Expr closure(const Expr& e, std::vector<Var>* vars) {
  auto fv = free_vars(e);
  std::vector<Var> vs(fv.begin(), fv.end());
  Expr out = e;
  for (std::size_t k = vs.size(); k-- > 0;) out = forall_(vs[k], out);
  if (vars) *vars = std::move(vs);
  return out;
}

NDPtr closed_leaf(const std::string& name, const Expr& prop) {
  std::vector<Var> vs;
  Expr c = closure(prop, &vs);
  NDPtr d = nd::ax(name, c);
  for (const auto& v : vs) d = nd::all_e(mk_var(v), d);
  return d;
}

NDPtr map_leaf_names(const NDPtr& p, const std::function<std::string(const std::string&, const Expr&)>& f) {
  if (p->rule == NDRule::Ax) {
    std::string n = f(p->name, p->concl);
    if (n == p->name) return p;
    return nd::ax(n, p->concl);
  }
  if (p->prem.empty()) return p;
  std::vector<NDPtr> prem;
  bool changed = false;
  for (const auto& q : p->prem) {
    prem.push_back(map_leaf_names(q, f));
    changed = changed || prem.back() != q;
  }
  return changed ? nd::with_prem(p, std::move(prem)) : p;
}

}  // namespace tr

}  // namespace dm
