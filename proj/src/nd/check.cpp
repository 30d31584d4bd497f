#include <map>

#include "dm/nd.hpp"
#include "dm/syntax.hpp"

namespace dm {

std::optional<CongruenceMode> parse_mode(std::string_view s) {
  if (s == "auto") return CongruenceMode::Auto;
  if (s == "witnessed") return CongruenceMode::Witnessed;
  if (s == "mixed") return CongruenceMode::Mixed;
  return std::nullopt;
}

std::optional<std::string> discharge(const Expr& p, const Expr& q, const std::optional<Trace>& tr,
                                     const RewriteSystem& R, CongruenceMode mode,
                                     std::optional<std::size_t> fuel, std::size_t* steps) {
  if (alpha_equal(p, q)) return std::nullopt;
  std::size_t dummy = 0;
  if (!steps) steps = &dummy;
  if (tr && mode != CongruenceMode::Auto) {
    std::string why;
    if (!verify_trace(p, q, *tr, R, &why)) return "trace rejected: " + why;
    *steps += tr->steps.size();
    return std::nullopt;
  }
  if (mode == CongruenceMode::Witnessed) return "witnessed mode: no trace for " + print(p) + " ~ " + print(q);
  try {
    if (R.terminating && R.confluent) {
      if (congruent_auto(p, q, R, fuel, steps)) return std::nullopt;
      return "not congruent under " + R.name() + ": " + print(p) + " ~ " + print(q);
    }
    if (R.auto_subsystem && R.auto_subsystem->terminating) {
      if (congruent_by_normal_forms(p, q, *R.auto_subsystem, fuel, steps)) return std::nullopt;
      return "normal forms under " + R.auto_subsystem->name() + " differ: " + print(p) + " ~ " + print(q) +
             " (a trace may be needed)";
    }
  } catch (const FuelExhausted& e) {
    return std::string(e.what());
  }
  return "system " + R.name() + " is not flagged for automatic congruence; supply a trace";
}

namespace {

struct Fail {
  std::string msg;
  std::string where;
};

using Open = std::vector<std::pair<std::string, Expr>>;  // label "" marks an axiom leaf

struct Checker {
  const std::map<std::string, Expr>& axioms;
  const RewriteSystem& R;
  const NDCheckOptions& opt;
  std::size_t steps = 0;

  [[noreturn]] void fail(const std::string& where, const std::string& msg) { throw Fail{msg, where}; }

  void sorts(const std::string& where, const Expr& e) {
    try {
      R.sig().check(e);
    } catch (const KernelError& ex) {
      fail(where, std::string("ill-sorted: ") + ex.what());
    }
  }

  void same(const std::string& where, const Expr& got, const Expr& want, const char* what) {
    if (!alpha_equal(got, want)) fail(where, std::string(what) + " is " + print(got) + ", expected " + print(want));
  }

  // Removes hypotheses labelled `label` from `open`, checking their shape.
  void discharge_hyps(const std::string& where, Open& open, const std::string& label, const Expr& want) {
    if (label.empty()) return;
    Open kept;
    for (auto& h : open) {
      if (h.first == label) {
        if (!alpha_equal(h.second, want))
          fail(where, "hypothesis [" + label + "] is " + print(h.second) + " but the rule discharges " + print(want));
      } else {
        kept.push_back(std::move(h));
      }
    }
    open = std::move(kept);
  }

  void fresh(const std::string& where, Var y, const Open& open, const char* rule) {
    for (const auto& h : open)
      if (occurs_free(y, h.second))
        fail(where, std::string(rule) + ": eigenvariable " + show(y) + " is free in the assumption " + print(h.second));
  }

  Open run(const NDPtr& n, const std::string& where) {
    if (!n || !n->concl) fail(where, "empty node");
    sorts(where, n->concl);
    for (const auto& e : {n->a, n->b, n->q, n->term})
      if (e) sorts(where, e);

    std::vector<Open> sub;
    for (std::size_t k = 0; k < n->prem.size(); ++k) sub.push_back(run(n->prem[k], where + "." + std::to_string(k + 1)));

    auto arity = [&](std::size_t want) {
      if (n->prem.size() != want)
        fail(where, std::string(nd_rule_name(n->rule)) + " expects " + std::to_string(want) + " premise(s)");
    };

    Open out;
    switch (n->rule) {
      case NDRule::Hyp:
        arity(0);
        if (n->label.empty()) fail(where, "hypothesis without label");
        return {{n->label, n->concl}};
      case NDRule::Ax: {
        arity(0);
        auto it = axioms.find(n->name);
        if (it == axioms.end()) fail(where, "unknown assumption " + n->name);
        same(where, n->concl, it->second, "assumption leaf");
        return {{"", n->concl}};
      }
      case NDRule::ImpI:
        arity(1);
        discharge_hyps(where, sub[0], n->label, n->a);
        break;
      case NDRule::ImpE:
      case NDRule::AndI:
        arity(2);
        break;
      case NDRule::AndE:
      case NDRule::OrI:
      case NDRule::BotE:
        arity(1);
        break;
      case NDRule::OrE:
        arity(3);
        same(where, n->prem[1]->concl, n->concl, "left case conclusion");
        same(where, n->prem[2]->concl, n->concl, "right case conclusion");
        discharge_hyps(where, sub[1], n->label, n->a);
        discharge_hyps(where, sub[2], n->label2, n->b);
        break;
      case NDRule::AllI: {
        arity(1);
        if (!n->q || n->q->kind != Kind::Forall) fail(where, "all-i: :Q must be universal");
        if (n->eigen.sort != n->q->sort) fail(where, "all-i: eigenvariable sort differs from the binder");
        same(where, n->prem[0]->concl, open_with(n->q, n->eigen), "premise");
        if (occurs_free(n->eigen, n->q))
          fail(where, "all-i: eigenvariable " + show(n->eigen) + " is free in " + print(n->q));
        fresh(where, n->eigen, sub[0], "all-i");
        break;
      }
      case NDRule::AllE:
      case NDRule::ExI: {
        arity(1);
        Kind want = n->rule == NDRule::AllE ? Kind::Forall : Kind::Exists;
        if (!n->q || n->q->kind != want) fail(where, std::string(nd_rule_name(n->rule)) + ": bad :Q");
        if (!n->term || !is_term(n->term) || n->term->sort != n->q->sort)
          fail(where, std::string(nd_rule_name(n->rule)) + ": instance term missing or of the wrong sort");
        break;
      }
      case NDRule::ExE: {
        arity(2);
        if (!n->q || n->q->kind != Kind::Exists) fail(where, "ex-e: :Q must be existential");
        if (n->eigen.sort != n->q->sort) fail(where, "ex-e: eigenvariable sort differs from the binder");
        same(where, n->prem[1]->concl, n->concl, "minor premise");
        discharge_hyps(where, sub[1], n->label, open_with(n->q, n->eigen));
        if (occurs_free(n->eigen, n->q)) fail(where, "ex-e: eigenvariable " + show(n->eigen) + " is free in " + print(n->q));
        if (occurs_free(n->eigen, n->concl))
          fail(where, "ex-e: eigenvariable " + show(n->eigen) + " is free in the conclusion");
        fresh(where, n->eigen, sub[1], "ex-e");
        break;
      }
      case NDRule::TopI:
      case NDRule::Tnd:
        arity(0);
        break;
      case NDRule::Ind: {
        if (!opt.allow_ind) fail(where, "ind rule not enabled");
        arity(2);
        if (!n->q || n->q->sort != Sort::cls()) fail(where, "ind: class witness missing");
        if (!n->term || n->term->sort != Sort::arith(0)) fail(where, "ind: term must have sort 0");
        if (n->eigen.sort != Sort::arith(0)) fail(where, "ind: eigenvariable must have sort 0");
        Expr b = mk_var(n->eigen);
        same(where, n->concl, member(n->term, n->q), "conclusion");
        same(where, n->prem[0]->concl, member(zero(), n->q), "base premise");
        same(where, n->prem[1]->concl, member(succ(b), n->q), "step premise");
        discharge_hyps(where, sub[1], n->label, member(b, n->q));
        if (occurs_free(n->eigen, n->concl))
          fail(where, "ind: eigenvariable " + show(n->eigen) + " is free in the conclusion");
        fresh(where, n->eigen, sub[0], "ind");
        fresh(where, n->eigen, sub[1], "ind");
        break;
      }
    }

    std::vector<Obligation> obs;
    try {
      obs = obligations(*n);
    } catch (const KernelError& e) {
      fail(where, e.what());
    }
    for (std::size_t k = 0; k < obs.size(); ++k) {
      std::optional<Trace> tr;
      if (k < n->via.size()) tr = n->via[k];
      if (auto err = discharge(obs[k].lhs, obs[k].rhs, tr, R, opt.mode, opt.fuel, &steps))
        fail(where, std::string(nd_rule_name(n->rule)) + " obligation " + std::to_string(k) + ": " + *err);
    }

    for (auto& s : sub)
      for (auto& h : s) out.push_back(std::move(h));
    return out;
  }
};

}  // namespace

Verdict check_nd(const NDPtr& proof, const std::vector<Axiom>& assumptions, const RewriteSystem& R,
                 const NDCheckOptions& opt) {
  std::map<std::string, Expr> ax;
  for (const auto& a : assumptions) ax[a.name] = a.prop;
  Checker c{ax, R, opt};
  Verdict v;
  v.length = nd_length(proof);
  try {
    Open open = c.run(proof, "root");
    for (const auto& h : open)
      if (!h.first.empty()) throw Fail{"undischarged hypothesis [" + h.first + "] " + print(h.second), "root"};
    v.ok = true;
    v.conclusion = proof->concl;
  } catch (const Fail& f) {
    v.error = f.msg;
    v.where = f.where;
  }
  v.rewrite_steps = c.steps;
  return v;
}

NDPtr witness_all(const NDPtr& p, const RewriteSystem& R) {
  if (!p) return p;
  std::vector<NDPtr> prem;
  bool changed = false;
  for (const auto& q : p->prem) {
    prem.push_back(witness_all(q, R));
    changed = changed || prem.back() != q;
  }
  NDPtr cur = changed ? nd::with_prem(p, std::move(prem)) : p;
  auto obs = obligations(*cur);
  for (std::size_t k = 0; k < obs.size(); ++k) {
    if (k < cur->via.size() && cur->via[k]) continue;
    if (alpha_equal(obs[k].lhs, obs[k].rhs)) continue;
    const RewriteSystem* sys = &R;
    if (!(R.terminating && R.confluent) && R.auto_subsystem) sys = R.auto_subsystem.get();
    auto tr = join_trace(obs[k].lhs, obs[k].rhs, *sys);
    if (!tr)
      throw KernelError(std::string("witness_all: cannot join ") + print(obs[k].lhs) + " and " + print(obs[k].rhs));
    cur = nd::with_via(cur, k, std::move(*tr));
  }
  return cur;
}

}  // namespace dm
