#include "common.hpp"
#include "dm/files.hpp"
#include "dm/syntax.hpp"

namespace dm {

namespace {

using namespace nd;

NDPtr L(const NDPtr& e) { return and_e(Side::Left, e); }
NDPtr Rt(const NDPtr& e) { return and_e(Side::Right, e); }

// Equivalence proofs in pure natural deduction from the rule equivalences
// of a certificate.
class Expander {
 public:
  Expander(const CompatibilityCertificate& to, const RewriteSystem& R) : to_(to), R_(R), nm_("q") {
    sys_ = &R;
    if (!(R.terminating && R.confluent) && R.auto_subsystem) sys_ = R.auto_subsystem.get();
    if (!sys_->terminating) throw TranslationError("congruence expansion needs a terminating system");
  }

  void avoid(const NDPtr& p) { nm_.avoid(p); }

  // D : X gives a proof of `want` when X and want are congruent
  NDPtr conv(const NDPtr& d, const Expr& want) {
    if (alpha_equal(d->concl, want)) return d;
    return imp_e(want, d, L(equiv(d->concl, want)));
  }

  NDPtr expand(const NDPtr& p) {
    const NDNode& n = *p;
    std::vector<NDPtr> pr;
    for (const auto& q : n.prem) pr.push_back(expand(q));
    switch (n.rule) {
      case NDRule::Hyp:
      case NDRule::Ax:
        return p;
      case NDRule::ImpI:
        return conv(imp_i(mk_imp(n.a, pr[0]->concl), n.label, n.a, pr[0]), n.concl);
      case NDRule::ImpE:
        return imp_e(n.concl, pr[0], conv(pr[1], mk_imp(pr[0]->concl, n.concl)));
      case NDRule::AndI:
        return conv(and_i(mk_and(pr[0]->concl, pr[1]->concl), pr[0], pr[1]), n.concl);
      case NDRule::AndE: {
        Expr want = n.side == Side::Left ? mk_and(n.concl, n.b) : mk_and(n.b, n.concl);
        return and_e(n.concl, n.side, n.b, conv(pr[0], want));
      }
      case NDRule::OrI: {
        Expr c = n.side == Side::Left ? mk_or(pr[0]->concl, n.b) : mk_or(n.b, pr[0]->concl);
        return conv(or_i(c, n.side, n.b, pr[0]), n.concl);
      }
      case NDRule::OrE:
        return or_e(n.concl, conv(pr[0], mk_or(n.a, n.b)), n.label, n.a, pr[1], n.label2, n.b, pr[2]);
      case NDRule::AllI:
        return conv(all_i(n.q, n.q, n.eigen, pr[0]), n.concl);
      case NDRule::AllE: {
        Expr c = instantiate(n.q->args[0], n.term);
        return conv(all_e(c, n.q, n.term, conv(pr[0], n.q)), n.concl);
      }
      case NDRule::ExI: {
        Expr want = instantiate(n.q->args[0], n.term);
        return conv(ex_i(n.q, n.q, n.term, conv(pr[0], want)), n.concl);
      }
      case NDRule::ExE:
        return ex_e(n.concl, n.q, n.eigen, n.label, conv(pr[0], n.q), pr[1]);
      case NDRule::TopI:
        return conv(top_i(mk_top()), n.concl);
      case NDRule::BotE:
        return bot_e(n.concl, conv(pr[0], mk_bot()));
      case NDRule::Tnd:
        return conv(tnd(mk_or(n.b, neg(n.b)), n.b), n.concl);
      case NDRule::Ind:
        throw TranslationError("the induction rule cannot be expanded");
    }
    throw TranslationError("unknown rule");
  }

  // X <=> Y through the common normal form
  NDPtr equiv(const Expr& x, const Expr& y) {
    NormalizeOptions opt;
    Normalized nx = normalize(x, *sys_, opt);
    Normalized ny = normalize(y, *sys_, opt);
    if (!alpha_equal(nx.nf, ny.nf))
      throw TranslationError("not congruent: " + print(x) + " and " + print(y));
    NDPtr ex = chain_steps(x, nx.trace);
    NDPtr ey = chain_steps(y, ny.trace);
    if (!ex && !ey) return refl(x);
    if (!ey) return ex;
    if (!ex) return sym(ey);
    return trans(ex, sym(ey));
  }

 private:
  NDPtr chain_steps(const Expr& x, const Trace& tr) {
    NDPtr acc;
    Expr cur = x;
    for (const auto& s : tr.steps) {
      const Rule* r = sys_->rule(s.rule);
      if (!r) throw TranslationError("unknown rule " + s.rule);
      auto [e, next] = step(cur, s.pos, 0, *r);
      acc = acc ? trans(acc, e) : e;
      cur = next;
    }
    return acc;
  }

  std::pair<NDPtr, Expr> step(const Expr& e, const Position& pos, std::size_t k, const Rule& r) {
    if (k == pos.size()) {
      if (!r.prop) throw TranslationError("term rule " + r.name + " has no equivalence proof; only proposition rules are supported");
      auto sigma = match(r.lhs, e);
      if (!sigma) throw TranslationError("rule " + r.name + " does not apply to " + print(e));
      Expr next = instantiate_rhs(r, *sigma);
      auto it = to_.rule_proofs.find(r.name);
      if (it == to_.rule_proofs.end()) throw TranslationError("certificate has no proof for rule " + r.name);
      std::vector<Expr> ts;
      for (const auto& v : r.vars) ts.push_back(sigma->at(v));
      return {tr::inst_all(it->second, ts), next};
    }
    int c = pos[k] - 1;
    switch (e->kind) {
      case Kind::And:
      case Kind::Or:
      case Kind::Imp: {
        auto [inner, nc] = step(e->args[c], pos, k + 1, r);
        std::vector<Expr> args = e->args;
        args[c] = nc;
        Expr next = rebuild(e, args);
        return {lift_conn(e, next, c, inner), next};
      }
      case Kind::Forall:
      case Kind::Exists: {
        Var v = nm_.fresh(name_of(e->sym), e->sort);
        Expr body = open_with(e, v);
        auto [inner, nb] = step(body, pos, k + 1, r);
        Expr next = quant(e->kind, v, nb);
        return {lift_binder(e, next, all_i(v, inner)), next};
      }
      default:
        throw TranslationError("rewriting inside a term needs a term rule equivalence, which is unsupported");
    }
  }

  NDPtr hypl(const std::string& l, const Expr& a) { return hyp(l, a); }

  NDPtr lift_conn(const Expr& x, const Expr& y, int c, const NDPtr& e) {
    std::string l = nm_.label();
    NDPtr E = hyp(l, e->concl);
    NDPtr fwd = L(E), bwd = Rt(E);
    auto dir = [&](const Expr& from, const Expr& to, const NDPtr& f, const NDPtr& b) -> NDPtr {
      std::string h = nm_.label();
      NDPtr H = hyp(h, from);
      switch (from->kind) {
        case Kind::And: {
          NDPtr a0 = and_e(Side::Left, H), a1 = and_e(Side::Right, H);
          if (c == 0) a0 = imp_e(a0, f);
          else a1 = imp_e(a1, f);
          return imp_i(h, from, and_i(a0, a1));
        }
        case Kind::Or: {
          std::string la = nm_.label(), lb = nm_.label();
          const Expr& A = from->args[0];
          const Expr& B = from->args[1];
          NDPtr pa = hyp(la, A), pb = hyp(lb, B);
          if (c == 0) pa = imp_e(pa, f);
          else pb = imp_e(pb, f);
          NDPtr ca = or_i(to, Side::Left, to->args[1], pa);
          NDPtr cb = or_i(to, Side::Right, to->args[0], pb);
          return imp_i(h, from, or_e(to, H, la, A, ca, lb, B, cb));
        }
        default: {
          std::string la = nm_.label();
          const Expr& A2 = to->args[0];
          NDPtr a = hyp(la, A2);
          NDPtr body = c == 0 ? imp_e(imp_e(a, b), H) : imp_e(imp_e(a, H), f);
          return imp_i(h, from, imp_i(la, A2, body));
        }
      }
    };
    NDPtr xy = dir(x, y, fwd, bwd);
    NDPtr yx = dir(y, x, bwd, fwd);
    return tr::let_cut(l, e, and_i(xy, yx));
  }

  NDPtr lift_binder(const Expr& x, const Expr& y, const NDPtr& g) {
    std::string l = nm_.label();
    NDPtr G = hyp(l, g->concl);
    auto dir = [&](const Expr& from, const Expr& to, bool forward) -> NDPtr {
      Var v = nm_.fresh(name_of(from->sym), from->sort);
      NDPtr gv = all_e(mk_var(v), G);
      NDPtr f = forward ? L(gv) : Rt(gv);
      std::string h = nm_.label();
      NDPtr H = hyp(h, from);
      if (from->kind == Kind::Forall) return imp_i(h, from, all_i(to, to, v, imp_e(all_e(mk_var(v), H), f)));
      std::string k = nm_.label();
      Expr fv = open_with(from, v);
      NDPtr w = ex_i(to, to, mk_var(v), imp_e(hyp(k, fv), f));
      return imp_i(h, from, ex_e(to, from, v, k, H, w));
    };
    return tr::let_cut(l, g, and_i(dir(x, y, true), dir(y, x, false)));
  }

  NDPtr refl(const Expr& x) {
    std::string a = nm_.label(), b = nm_.label();
    return and_i(imp_i(a, x, hyp(a, x)), imp_i(b, x, hyp(b, x)));
  }

  NDPtr sym(const NDPtr& e) {
    std::string l = nm_.label();
    NDPtr E = hyp(l, e->concl);
    return tr::let_cut(l, e, and_i(Rt(E), L(E)));
  }

  NDPtr trans(const NDPtr& e1, const NDPtr& e2) {
    std::string l1 = nm_.label(), l2 = nm_.label(), a = nm_.label(), b = nm_.label();
    NDPtr E1 = hyp(l1, e1->concl), E2 = hyp(l2, e2->concl);
    const Expr& x0 = e1->concl->args[0]->args[0];
    const Expr& x2 = e2->concl->args[0]->args[1];
    NDPtr xz = imp_i(a, x0, imp_e(imp_e(hyp(a, x0), L(E1)), L(E2)));
    NDPtr zx = imp_i(b, x2, imp_e(imp_e(hyp(b, x2), Rt(E2)), Rt(E1)));
    return tr::let_cut(l1, e1, tr::let_cut(l2, e2, and_i(xz, zx)));
  }

  const CompatibilityCertificate& to_;
  const RewriteSystem& R_;
  const RewriteSystem* sys_ = nullptr;
  tr::Names nm_;
};

RewriteSystem pure(const RewriteSystem& R) { return empty_system(R.sig()); }

}  // namespace

Expr rule_statement(const Rule& r) {
  Expr body = r.prop ? iff(r.lhs, r.rhs) : eq(r.lhs, r.rhs);
  for (std::size_t k = r.vars.size(); k-- > 0;) body = forall_(r.vars[k], body);
  return body;
}

std::optional<std::string> check_certificate(const CompatibilityCertificate& c, const RewriteSystem& R) {
  for (const auto& a : c.presentation) {
    auto it = c.axiom_proofs.find(a.name);
    if (it == c.axiom_proofs.end()) return "no proof of axiom " + a.name;
    Verdict v = check_nd(it->second, {}, R);
    if (!v) return "proof of axiom " + a.name + " fails at " + v.where + ": " + v.error;
    if (!alpha_equal(it->second->concl, a.prop)) return "proof of axiom " + a.name + " proves " + print(it->second->concl);
  }
  for (const auto& r : R.rules()) {
    if (!r.prop) continue;
    auto it = c.rule_proofs.find(r.name);
    if (it == c.rule_proofs.end()) return "no proof of rule " + r.name;
    Verdict v = check_nd(it->second, c.presentation, pure(R));
    if (!v) return "proof of rule " + r.name + " fails at " + v.where + ": " + v.error;
    Expr want = rule_statement(r);
    if (!alpha_equal(it->second->concl, want)) return "proof of rule " + r.name + " proves " + print(it->second->concl);
  }
  return std::nullopt;
}

NDPtr expand_congruence(const NDPtr& p, const CompatibilityCertificate& to, const RewriteSystem& R) {
  Expander e(to, R);
  e.avoid(p);
  return e.expand(p);
}

NDTranslation eliminate_axioms(const NDPtr& pi, const CompatibilityCertificate& from,
                               const CompatibilityCertificate& to, const RewriteSystem& R) {
  Verdict in = check_nd(pi, from.presentation, pure(R));
  if (!in) throw TranslationError("input does not check over the source presentation: " + in.error + " at " + in.where);
  std::function<NDPtr(const NDPtr&)> walk = [&](const NDPtr& n) -> NDPtr {
    if (n->rule == NDRule::Ax) {
      auto it = from.axiom_proofs.find(n->name);
      if (it == from.axiom_proofs.end()) throw TranslationError("certificate has no proof of axiom " + n->name);
      return it->second;
    }
    if (n->prem.empty()) return n;
    std::vector<NDPtr> prem;
    for (const auto& q : n->prem) prem.push_back(walk(q));
    return nd::with_prem(n, std::move(prem));
  };
  NDPtr modulo = walk(pi);
  NDTranslation out;
  out.proof = expand_congruence(modulo, to, R);
  out.assumptions = to.presentation;
  out.report.input_length = nd_length(pi);
  out.report.output_length = nd_length(out.proof);
  out.report.fragments["modulo"].note(nd_length(modulo));
  Verdict v = check_nd(out.proof, to.presentation, pure(R));
  if (!v) throw TranslationError("eliminated proof fails to check at " + v.where + ": " + v.error);
  return out;
}

// ---------------------------------------------------------------- Add

namespace {

const Sort N = Sort::arith(0);

NDPtr iff_by_hyps(const Expr& x, const Expr& y, const NDPtr& xy_body, const std::string& lx, const NDPtr& yx_body,
                  const std::string& ly) {
  return and_i(iff(x, y), imp_i(mk_imp(x, y), lx, x, xy_body), imp_i(mk_imp(y, x), ly, y, yx_body));
}

NDPtr close_all(const Expr& stmt, const std::vector<Var>& vs, NDPtr d) {
  std::vector<Expr> props{stmt};
  for (const auto& v : vs) props.push_back(open_with(props.back(), v));
  for (std::size_t k = vs.size(); k-- > 0;) d = all_i(props[k], props[k], vs[k], d);
  return d;
}

// forall x y z. Add(s x, y, s z) <=> Add(x, y, z), modulo Add
NDPtr adds_modulo(const Expr& stmt) {
  Var x = mkvar("x", N), y = mkvar("y", N), z = mkvar("z", N);
  Expr body = open_with(open_with(open_with(stmt, x), y), z);
  const Expr& X = body->args[0]->args[0];
  const Expr& Y = body->args[0]->args[1];
  NDPtr d = iff_by_hyps(X, Y, hyp("i", X), "i", hyp("ii", Y), "ii");
  return close_all(stmt, {x, y, z}, d);
}

}  // namespace

CompatibilityCertificate add_certificate1() {
  Presentation p = add_presentation1();
  RewriteSystem R = add_system();
  CompatibilityCertificate c;
  c.presentation = p.axioms;
  Var y = mkvar("y", N);
  Expr a0 = p.find("add0")->prop;
  Expr as = p.find("adds")->prop;
  c.axiom_proofs["add0"] = close_all(a0, {y}, top_i(open_with(a0, y)));
  c.axiom_proofs["adds"] = adds_modulo(as);
  Expr r0 = rule_statement(*R.rule("add0"));
  Expr body = open_with(r0, y);
  const Expr& A = body->args[0]->args[0];
  NDPtr d = iff_by_hyps(A, mk_top(), top_i(mk_top()), "i", all_e(mk_var(y), ax("add0", a0)), "ii");
  c.rule_proofs["add0"] = close_all(r0, {y}, d);
  c.rule_proofs["adds"] = ax("adds", as);
  return c;
}

CompatibilityCertificate add_certificate2() {
  Presentation p = add_presentation2();
  RewriteSystem R = add_system();
  CompatibilityCertificate c;
  c.presentation = p.axioms;
  Var y = mkvar("y", N);
  Expr a0 = p.find("add0")->prop;
  Expr as = p.find("adds")->prop;
  Expr body = open_with(a0, y);
  const Expr& A = body->args[0]->args[0];
  NDPtr d = iff_by_hyps(A, mk_top(), top_i(mk_top()), "i", top_i(A), "ii");
  c.axiom_proofs["add0"] = close_all(a0, {y}, d);
  c.axiom_proofs["adds"] = adds_modulo(as);
  c.rule_proofs["add0"] = ax("add0", a0);
  c.rule_proofs["adds"] = ax("adds", as);
  return c;
}

}  // namespace dm
