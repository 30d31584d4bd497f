#include <algorithm>
#include <set>

#include "dm/nd.hpp"
#include "dm/syntax.hpp"

namespace dm {

namespace {

struct RuleName {
  NDRule rule;
  const char* name;
};

constexpr RuleName kNames[] = {
    {NDRule::Hyp, "hyp"},     {NDRule::Ax, "ax"},       {NDRule::ImpI, "imp-i"}, {NDRule::ImpE, "imp-e"},
    {NDRule::AndI, "and-i"},  {NDRule::AndE, "and-e"},  {NDRule::OrI, "or-i"},   {NDRule::OrE, "or-e"},
    {NDRule::AllI, "all-i"},  {NDRule::AllE, "all-e"},  {NDRule::ExI, "ex-i"},   {NDRule::ExE, "ex-e"},
    {NDRule::TopI, "top-i"},  {NDRule::BotE, "bot-e"},  {NDRule::Tnd, "tnd"},    {NDRule::Ind, "ind"},
};

Expr body_at(const Expr& q, const Expr& t) {
  if (!q || !is_binder(q)) throw KernelError("quantifier witness expected");
  return instantiate(q->args[0], t);
}

}  // namespace

const char* nd_rule_name(NDRule r) {
  for (const auto& n : kNames)
    if (n.rule == r) return n.name;
  return "?";
}

std::optional<NDRule> nd_rule_from_name(std::string_view s) {
  for (const auto& n : kNames)
    if (s == n.name) return n.rule;
  return std::nullopt;
}

std::vector<Obligation> obligations(const NDNode& n) {
  auto P = [&](std::size_t k) -> const Expr& {
    if (k >= n.prem.size() || !n.prem[k]) throw KernelError(std::string(nd_rule_name(n.rule)) + ": missing premise");
    return n.prem[k]->concl;
  };
  auto need = [&](const Expr& e, const char* what) -> const Expr& {
    if (!e) throw KernelError(std::string(nd_rule_name(n.rule)) + ": missing witness " + what);
    return e;
  };
  switch (n.rule) {
    case NDRule::Hyp:
    case NDRule::Ax:
    case NDRule::Ind:
      return {};
    case NDRule::ImpI:
      return {{n.concl, mk_imp(need(n.a, ":A"), P(0))}};
    case NDRule::ImpE:
      return {{P(1), mk_imp(P(0), n.concl)}};
    case NDRule::AndI:
      return {{n.concl, mk_and(P(0), P(1))}};
    case NDRule::AndE:
      need(n.b, ":B");
      return {{P(0), n.side == Side::Left ? mk_and(n.concl, n.b) : mk_and(n.b, n.concl)}};
    case NDRule::OrI:
      need(n.b, ":B");
      return {{n.concl, n.side == Side::Left ? mk_or(P(0), n.b) : mk_or(n.b, P(0))}};
    case NDRule::OrE:
      return {{P(0), mk_or(need(n.a, ":A"), need(n.b, ":B"))}};
    case NDRule::AllI:
      return {{n.concl, need(n.q, ":Q")}};
    case NDRule::AllE:
      return {{P(0), need(n.q, ":Q")}, {n.concl, body_at(n.q, need(n.term, ":term"))}};
    case NDRule::ExI:
      return {{n.concl, need(n.q, ":Q")}, {P(0), body_at(n.q, need(n.term, ":term"))}};
    case NDRule::ExE:
      return {{P(0), need(n.q, ":Q")}};
    case NDRule::TopI:
      return {{n.concl, mk_top()}};
    case NDRule::BotE:
      return {{P(0), mk_bot()}};
    case NDRule::Tnd:
      need(n.b, ":B");
      return {{n.concl, mk_or(n.b, mk_imp(n.b, mk_bot()))}};
  }
  return {};
}

std::size_t nd_length(const NDPtr& p) {
  if (!p) return 0;
  std::size_t n = (p->rule == NDRule::Hyp || p->rule == NDRule::Ax) ? 0 : 1;
  for (const auto& q : p->prem) n += nd_length(q);
  return n;
}

namespace {

void collect_axioms(const NDPtr& p, std::set<std::string>& out) {
  if (!p) return;
  if (p->rule == NDRule::Ax) out.insert(p->name);
  for (const auto& q : p->prem) collect_axioms(q, out);
}

void collect_open(const NDPtr& p, std::set<std::string>& bound, std::vector<std::pair<std::string, Expr>>& out) {
  if (!p) return;
  if (p->rule == NDRule::Hyp) {
    if (!bound.count(p->label)) out.emplace_back(p->label, p->concl);
    return;
  }
  for (std::size_t k = 0; k < p->prem.size(); ++k) {
    std::vector<std::string> added;
    auto bind = [&](const std::string& l) {
      if (!l.empty() && bound.insert(l).second) added.push_back(l);
    };
    switch (p->rule) {
      case NDRule::ImpI:
        bind(p->label);
        break;
      case NDRule::OrE:
        if (k == 1) bind(p->label);
        if (k == 2) bind(p->label2);
        break;
      case NDRule::ExE:
      case NDRule::Ind:
        if (k == 1) bind(p->label);
        break;
      default:
        break;
    }
    collect_open(p->prem[k], bound, out);
    for (const auto& l : added) bound.erase(l);
  }
}

}  // namespace

std::vector<std::string> nd_axioms_used(const NDPtr& p) {
  std::set<std::string> s;
  collect_axioms(p, s);
  return {s.begin(), s.end()};
}

std::vector<std::pair<std::string, Expr>> nd_open_hyps(const NDPtr& p) {
  std::set<std::string> bound;
  std::vector<std::pair<std::string, Expr>> out;
  collect_open(p, bound, out);
  return out;
}

namespace nd {

namespace {
std::shared_ptr<NDNode> mk(NDRule r, Expr c) {
  auto n = std::make_shared<NDNode>();
  n->rule = r;
  n->concl = std::move(c);
  return n;
}
}  // namespace

NDPtr hyp(std::string label, Expr a) {
  auto n = mk(NDRule::Hyp, std::move(a));
  n->label = std::move(label);
  return n;
}

NDPtr ax(std::string name, Expr a) {
  auto n = mk(NDRule::Ax, std::move(a));
  n->name = std::move(name);
  return n;
}

NDPtr imp_i(Expr c, std::string label, Expr a, NDPtr body) {
  auto n = mk(NDRule::ImpI, std::move(c));
  n->label = std::move(label);
  n->a = std::move(a);
  n->prem = {std::move(body)};
  return n;
}

NDPtr imp_i(std::string label, Expr a, NDPtr body) {
  Expr c = mk_imp(a, body->concl);
  return imp_i(std::move(c), std::move(label), std::move(a), std::move(body));
}

NDPtr imp_e(Expr b, NDPtr minor, NDPtr major) {
  auto n = mk(NDRule::ImpE, std::move(b));
  n->prem = {std::move(minor), std::move(major)};
  return n;
}

NDPtr imp_e(NDPtr minor, NDPtr major) {
  if (major->concl->kind != Kind::Imp) throw KernelError("imp_e: major premise is not an implication");
  Expr b = major->concl->args[1];
  return imp_e(std::move(b), std::move(minor), std::move(major));
}

NDPtr and_i(Expr c, NDPtr l, NDPtr r) {
  auto n = mk(NDRule::AndI, std::move(c));
  n->prem = {std::move(l), std::move(r)};
  return n;
}

NDPtr and_i(NDPtr l, NDPtr r) {
  Expr c = mk_and(l->concl, r->concl);
  return and_i(std::move(c), std::move(l), std::move(r));
}

NDPtr and_e(Expr a, Side side, Expr other, NDPtr p) {
  auto n = mk(NDRule::AndE, std::move(a));
  n->side = side;
  n->b = std::move(other);
  n->prem = {std::move(p)};
  return n;
}

NDPtr and_e(Side side, NDPtr p) {
  if (p->concl->kind != Kind::And) throw KernelError("and_e: premise is not a conjunction");
  Expr l = p->concl->args[0];
  Expr r = p->concl->args[1];
  return side == Side::Left ? and_e(l, side, r, std::move(p)) : and_e(r, side, l, std::move(p));
}

NDPtr or_i(Expr c, Side side, Expr other, NDPtr p) {
  auto n = mk(NDRule::OrI, std::move(c));
  n->side = side;
  n->b = std::move(other);
  n->prem = {std::move(p)};
  return n;
}

NDPtr or_i(Side side, Expr other, NDPtr p) {
  Expr c = side == Side::Left ? mk_or(p->concl, other) : mk_or(other, p->concl);
  return or_i(std::move(c), side, std::move(other), std::move(p));
}

NDPtr or_e(Expr d, NDPtr major, std::string la, Expr a, NDPtr pa, std::string lb, Expr b, NDPtr pb) {
  auto n = mk(NDRule::OrE, std::move(d));
  n->label = std::move(la);
  n->label2 = std::move(lb);
  n->a = std::move(a);
  n->b = std::move(b);
  n->prem = {std::move(major), std::move(pa), std::move(pb)};
  return n;
}

NDPtr all_i(Expr c, Expr q, Var y, NDPtr p) {
  auto n = mk(NDRule::AllI, std::move(c));
  n->q = std::move(q);
  n->eigen = y;
  n->prem = {std::move(p)};
  return n;
}

NDPtr all_i(Var y, NDPtr p) {
  Expr q = forall_(y, p->concl);
  return all_i(q, q, y, std::move(p));
}

NDPtr all_e(Expr b, Expr q, Expr t, NDPtr p) {
  auto n = mk(NDRule::AllE, std::move(b));
  n->q = std::move(q);
  n->term = std::move(t);
  n->prem = {std::move(p)};
  return n;
}

NDPtr all_e(Expr t, NDPtr p) {
  if (p->concl->kind != Kind::Forall) throw KernelError("all_e: premise is not universal");
  Expr q = p->concl;
  Expr b = instantiate(q->args[0], t);
  return all_e(std::move(b), std::move(q), std::move(t), std::move(p));
}

NDPtr ex_i(Expr a, Expr q, Expr t, NDPtr p) {
  auto n = mk(NDRule::ExI, std::move(a));
  n->q = std::move(q);
  n->term = std::move(t);
  n->prem = {std::move(p)};
  return n;
}

NDPtr ex_e(Expr c, Expr q, Var y, std::string label, NDPtr major, NDPtr minor) {
  auto n = mk(NDRule::ExE, std::move(c));
  n->q = std::move(q);
  n->eigen = y;
  n->label = std::move(label);
  n->prem = {std::move(major), std::move(minor)};
  return n;
}

NDPtr top_i(Expr a) { return mk(NDRule::TopI, std::move(a)); }

NDPtr bot_e(Expr b, NDPtr p) {
  auto n = mk(NDRule::BotE, std::move(b));
  n->prem = {std::move(p)};
  return n;
}

NDPtr tnd(Expr a, Expr b) {
  auto n = mk(NDRule::Tnd, std::move(a));
  n->b = std::move(b);
  return n;
}

NDPtr ind(Expr cls, Expr t, Var beta, std::string label, NDPtr base, NDPtr step) {
  auto n = mk(NDRule::Ind, member(t, cls));
  n->q = std::move(cls);
  n->term = std::move(t);
  n->eigen = beta;
  n->label = std::move(label);
  n->prem = {std::move(base), std::move(step)};
  return n;
}

NDPtr with_via(const NDPtr& n, std::size_t k, Trace tr) {
  auto c = std::make_shared<NDNode>(*n);
  if (c->via.size() <= k) c->via.resize(k + 1);
  c->via[k] = std::move(tr);
  return c;
}

NDPtr with_prem(const NDPtr& n, std::vector<NDPtr> prem) {
  auto c = std::make_shared<NDNode>(*n);
  c->prem = std::move(prem);
  return c;
}

}  // namespace nd

}  // namespace dm
