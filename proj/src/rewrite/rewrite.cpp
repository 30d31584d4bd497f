#include "dm/rewrite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "dm/syntax.hpp"

namespace dm {

// ---------------------------------------------------------------------------
// systems

namespace {

bool binder_free(const Expr& e) {
  if (e->kind == Kind::BVar || is_binder(e)) return false;
  for (const auto& a : e->args)
    if (!binder_free(a)) return false;
  return true;
}

void vars_in_order(const Expr& e, std::vector<Var>& out) {
  if (e->kind == Kind::Var) {
    Var v{e->sym, e->sort};
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    return;
  }
  for (const auto& a : e->args) vars_in_order(a, out);
}

}  // namespace

void RewriteSystem::add_rule(std::string name, Expr lhs, Expr rhs) {
  Rule r;
  r.name = std::move(name);
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.prop = r.lhs->kind == Kind::Atom;
  add_rule(std::move(r));
}

void RewriteSystem::add_rule(Rule r) {
  if (by_name_.count(r.name)) throw KernelError("duplicate rule name " + r.name);
  if (r.lhs->kind == Kind::Atom) {
    r.prop = true;
    if (is_term(r.rhs)) throw KernelError("rule " + r.name + ": proposition rule with a term right side");
  } else if (r.lhs->kind == Kind::App) {
    r.prop = false;
    if (!is_term(r.rhs)) throw KernelError("rule " + r.name + ": term rule with a proposition right side");
    if (r.lhs->sort != r.rhs->sort) throw KernelError("rule " + r.name + ": sides have different sorts");
  } else {
    throw KernelError("rule " + r.name + ": left side must be an application or an atom");
  }
  if (!binder_free(r.lhs)) throw KernelError("rule " + r.name + ": left side contains a binder");
  if (r.rhs->loose) throw KernelError("rule " + r.name + ": right side has loose bound variables");
  auto lv = free_vars(r.lhs);
  for (const auto& v : free_vars(r.rhs))
    if (!lv.count(v)) throw KernelError("rule " + r.name + ": variable " + show(v) + " not bound by the left side");
  if (!sig_.sorts().empty()) {
    sig_.check(r.lhs);
    sig_.check(r.rhs);
  }
  r.vars.clear();
  vars_in_order(r.lhs, r.vars);
  std::size_t idx = rules_.size();
  (r.prop ? prop_index_ : term_index_)[r.lhs->sym].push_back(idx);
  by_name_[r.name] = idx;
  rules_.push_back(std::move(r));
}

const Rule* RewriteSystem::rule(std::string_view name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? nullptr : &rules_[it->second];
}

const std::vector<std::size_t>& RewriteSystem::rules_for(Sym head, bool prop) const {
  static const std::vector<std::size_t> none;
  const auto& ix = prop ? prop_index_ : term_index_;
  auto it = ix.find(head);
  return it == ix.end() ? none : it->second;
}

std::size_t RewriteSystem::default_fuel(const Expr& x) const {
  double f = fuel_c0 * std::pow(static_cast<double>(std::max<std::size_t>(size(x), 1)), fuel_k);
  if (f > 1e12) f = 1e12;
  return std::max<std::size_t>(1, static_cast<std::size_t>(f));
}

RewriteSystem RewriteSystem::without(const std::vector<std::string>& names, std::string new_name) const {
  RewriteSystem out(std::move(new_name), sig_);
  out.fuel_c0 = fuel_c0;
  out.fuel_k = fuel_k;
  for (const auto& r : rules_)
    if (std::find(names.begin(), names.end(), r.name) == names.end()) out.add_rule(r);
  return out;
}

// ---------------------------------------------------------------------------
// matching

namespace {

bool match_rec(const Expr& p, const Expr& s, Subst& sigma) {
  if (p->kind == Kind::Var) {
    if (!is_term(s) || s->sort != p->sort) return false;
    Var v{p->sym, p->sort};
    auto it = sigma.find(v);
    if (it != sigma.end()) return alpha_equal(it->second, s);
    sigma.emplace(v, s);
    return true;
  }
  if (p->kind != s->kind || p->sym != s->sym || p->args.size() != s->args.size()) return false;
  if (p->kind == Kind::App && p->sort != s->sort) return false;
  for (std::size_t i = 0; i < p->args.size(); ++i)
    if (!match_rec(p->args[i], s->args[i], sigma)) return false;
  return true;
}

}  // namespace

std::optional<Subst> match(const Expr& pattern, const Expr& subject) {
  Subst sigma;
  if (!match_rec(pattern, subject, sigma)) return std::nullopt;
  return sigma;
}

// ---------------------------------------------------------------------------
// redexes

namespace {

template <class F>
bool redexes_at(const Expr& e, const RewriteSystem& R, F&& f, const Position& pos) {
  if (e->kind == Kind::App || e->kind == Kind::Atom) {
    for (std::size_t i : R.rules_for(e->sym, e->kind == Kind::Atom)) {
      const Rule& r = R.rules()[i];
      if (auto s = match(r.lhs, e))
        if (f(Redex{pos, &r, std::move(*s)})) return true;
    }
  }
  return false;
}

// Preorder walk; stops when f returns true.
template <class F>
bool walk_pre(const Expr& e, const RewriteSystem& R, F&& f, Position& pos) {
  if (redexes_at(e, R, f, pos)) return true;
  for (std::size_t i = 0; i < e->args.size(); ++i) {
    pos.push_back(static_cast<int>(i + 1));
    bool stop = walk_pre(e->args[i], R, f, pos);
    pos.pop_back();
    if (stop) return true;
  }
  return false;
}

template <class F>
bool walk_post(const Expr& e, const RewriteSystem& R, F&& f, Position& pos) {
  for (std::size_t i = 0; i < e->args.size(); ++i) {
    pos.push_back(static_cast<int>(i + 1));
    bool stop = walk_post(e->args[i], R, f, pos);
    pos.pop_back();
    if (stop) return true;
  }
  return redexes_at(e, R, f, pos);
}

}  // namespace

std::vector<Redex> redexes(const Expr& x, const RewriteSystem& R) {
  std::vector<Redex> out;
  Position pos;
  walk_pre(x, R, [&](Redex r) {
    out.push_back(std::move(r));
    return false;
  }, pos);
  return out;
}

std::optional<Redex> first_redex(const Expr& x, const RewriteSystem& R) {
  std::optional<Redex> out;
  Position pos;
  walk_pre(x, R, [&](Redex r) {
    out = std::move(r);
    return true;
  }, pos);
  return out;
}

bool is_normal(const Expr& x, const RewriteSystem& R) { return !first_redex(x, R).has_value(); }

Expr instantiate_rhs(const Rule& r, const Subst& sigma) { return apply_subst(r.rhs, sigma); }

Expr contract(const Expr& x, const Redex& r) { return replace_raw(x, r.pos, instantiate_rhs(*r.rule, r.sigma)); }

// ---------------------------------------------------------------------------
// normalization

Normalized normalize(const Expr& x, const RewriteSystem& R, const NormalizeOptions& opt) {
  std::size_t fuel = opt.fuel ? *opt.fuel : R.default_fuel(x);
  Normalized out;
  out.trace.from = x;
  Expr cur = x;
  std::mt19937_64 rng(opt.seed);
  std::size_t n = 0;
  for (;;) {
    std::optional<Redex> rd;
    Position pos;
    switch (opt.strategy) {
      case Strategy::LeftmostOutermost:
        rd = first_redex(cur, R);
        break;
      case Strategy::LeftmostInnermost:
        walk_post(cur, R, [&](Redex r) {
          rd = std::move(r);
          return true;
        }, pos);
        break;
      case Strategy::RandomRedex: {
        auto all = redexes(cur, R);
        if (!all.empty()) rd = std::move(all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)]);
        break;
      }
    }
    if (!rd) break;
    if (n >= fuel) throw FuelExhausted(fuel);
    cur = contract(cur, *rd);
    ++n;
    if (opt.record) out.trace.steps.push_back(Step{rd->pos, rd->rule->name, rd->sigma, Dir::Forward});
  }
  out.nf = cur;
  out.trace.to = cur;
  return out;
}

Expr normal_form(const Expr& x, const RewriteSystem& R, std::optional<std::size_t> fuel, std::size_t* steps) {
  NormalizeOptions o;
  o.fuel = fuel;
  o.record = steps != nullptr;
  auto r = normalize(x, R, o);
  if (steps) *steps += r.trace.steps.size();
  return r.nf;
}

bool congruent_auto(const Expr& p, const Expr& q, const RewriteSystem& R, std::optional<std::size_t> fuel,
                    std::size_t* steps) {
  if (!R.terminating || !R.confluent)
    throw KernelError("automatic congruence needs a terminating and confluent system; " + R.name() + " is not flagged so");
  if (alpha_equal(p, q)) return true;
  return alpha_equal(normal_form(p, R, fuel, steps), normal_form(q, R, fuel, steps));
}

bool congruent_by_normal_forms(const Expr& p, const Expr& q, const RewriteSystem& R,
                               std::optional<std::size_t> fuel, std::size_t* steps) {
  if (!R.terminating) throw KernelError("normal-form comparison needs a terminating system; " + R.name() + " is not");
  if (alpha_equal(p, q)) return true;
  return alpha_equal(normal_form(p, R, fuel, steps), normal_form(q, R, fuel, steps));
}

// ---------------------------------------------------------------------------
// traces

namespace {

bool fail_with(std::string* why, std::string msg) {
  if (why) *why = std::move(msg);
  return false;
}

}  // namespace

bool verify_trace(const Expr& p, const Expr& q, const Trace& tr, const RewriteSystem& R, std::string* why) {
  Expr cur = p;
  for (std::size_t k = 0; k < tr.steps.size(); ++k) {
    const Step& st = tr.steps[k];
    std::string at = "step " + std::to_string(k + 1) + " (" + st.rule + " at " + show(st.pos) + ")";
    const Rule* r = R.rule(st.rule);
    if (!r) return fail_with(why, at + ": unknown rule");
    if (!valid_position(cur, st.pos)) return fail_with(why, at + ": invalid position");
    Expr sub = subterm_raw(cur, st.pos);
    if (st.dir == Dir::Forward) {
      auto s = match(r->lhs, sub);
      if (!s) return fail_with(why, at + ": left side does not match");
      for (const auto& [v, t] : st.sigma) {
        auto it = s->find(v);
        if (it == s->end() || !alpha_equal(it->second, t))
          return fail_with(why, at + ": stated substitution disagrees with the match");
      }
      cur = replace_raw(cur, st.pos, instantiate_rhs(*r, *s));
    } else {
      for (const auto& v : r->vars)
        if (!st.sigma.count(v)) return fail_with(why, at + ": backward step lacks a binding for " + show(v));
      Expr rhs;
      Expr lhs;
      try {
        rhs = instantiate_rhs(*r, st.sigma);
        lhs = apply_subst(r->lhs, st.sigma);
      } catch (const KernelError& e) {
        return fail_with(why, at + ": " + e.what());
      }
      if (!alpha_equal(rhs, sub)) return fail_with(why, at + ": right side instance does not match");
      Expr prev = replace_raw(cur, st.pos, lhs);
      // forward replay of the inverse
      auto s = match(r->lhs, subterm_raw(prev, st.pos));
      if (!s || !alpha_equal(replace_raw(prev, st.pos, instantiate_rhs(*r, *s)), cur))
        return fail_with(why, at + ": forward replay failed");
      cur = prev;
    }
  }
  if (!alpha_equal(cur, q)) return fail_with(why, "trace ends at " + print(cur) + ", not at " + print(q));
  return true;
}

std::optional<Trace> join_trace(const Expr& p, const Expr& q, const RewriteSystem& R,
                                std::optional<std::size_t> fuel) {
  NormalizeOptions o;
  o.fuel = fuel;
  auto a = normalize(p, R, o);
  auto b = normalize(q, R, o);
  if (!alpha_equal(a.nf, b.nf)) return std::nullopt;
  Trace t;
  t.from = p;
  t.to = q;
  t.steps = a.trace.steps;
  // q = y0 -> y1 -> ... -> yn = nf; walk back from nf
  for (std::size_t k = b.trace.steps.size(); k-- > 0;) {
    Step s = b.trace.steps[k];
    s.dir = Dir::Backward;
    t.steps.push_back(std::move(s));
  }
  return t;
}

// ---------------------------------------------------------------------------
// unification and critical pairs

namespace {

Expr walk(const Expr& t, const Subst& s) {
  Expr cur = t;
  while (cur->kind == Kind::Var) {
    auto it = s.find(Var{cur->sym, cur->sort});
    if (it == s.end()) break;
    cur = it->second;
  }
  return cur;
}

bool occurs(Var v, const Expr& t, const Subst& s) {
  Expr w = walk(t, s);
  if (w->kind == Kind::Var) return w->sym == v.name && w->sort == v.sort;
  for (const auto& a : w->args)
    if (occurs(v, a, s)) return true;
  return false;
}

bool unify_rec(const Expr& a0, const Expr& b0, Subst& s) {
  Expr a = walk(a0, s);
  Expr b = walk(b0, s);
  if (a->kind == Kind::Var && b->kind == Kind::Var && a->sym == b->sym && a->sort == b->sort) return true;
  if (a->kind == Kind::Var) {
    if (!is_term(b) || b->sort != a->sort) return false;
    Var v{a->sym, a->sort};
    if (occurs(v, b, s)) return false;
    s[v] = b;
    return true;
  }
  if (b->kind == Kind::Var) return unify_rec(b, a, s);
  if (a->kind != b->kind || a->sym != b->sym || a->args.size() != b->args.size()) return false;
  if (a->kind == Kind::App && a->sort != b->sort) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!unify_rec(a->args[i], b->args[i], s)) return false;
  return true;
}

Expr resolve(const Expr& t, const Subst& s) {
  Expr w = walk(t, s);
  if (w->args.empty()) return w;
  std::vector<Expr> args;
  for (const auto& a : w->args) args.push_back(resolve(a, s));
  return rebuild(w, std::move(args));
}

Rule rename_apart(const Rule& r, const std::set<Var>& avoid) {
  Subst ren;
  std::set<Var> used = avoid;
  for (const auto& v : r.vars) {
    Var nv = fresh_var(name_of(v.name) + "'", v.sort, used);
    used.insert(nv);
    ren[v] = mk_var(nv);
  }
  Rule out = r;
  out.lhs = apply_subst(r.lhs, ren);
  out.rhs = apply_subst(r.rhs, ren);
  out.vars.clear();
  vars_in_order(out.lhs, out.vars);
  return out;
}

}  // namespace

std::optional<Subst> unify(const Expr& a, const Expr& b) {
  Subst s;
  if (!unify_rec(a, b, s)) return std::nullopt;
  Subst out;
  for (const auto& [v, t] : s) out[v] = resolve(t, s);
  return out;
}

std::vector<CriticalPair> critical_pairs(const RewriteSystem& R) {
  std::vector<CriticalPair> out;
  const auto& rules = R.rules();
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const Rule& outer = rules[i];
    auto lv = free_vars(outer.lhs);
    for (std::size_t j = 0; j < rules.size(); ++j) {
      Rule inner = rename_apart(rules[j], lv);
      for (const auto& p : positions(outer.lhs)) {
        Expr sub = subterm_raw(outer.lhs, p);
        if (sub->kind == Kind::Var) continue;
        if (p.empty() && i == j) continue;
        if ((sub->kind == Kind::Atom) != inner.prop) continue;
        auto mgu = unify(sub, inner.lhs);
        if (!mgu) continue;
        CriticalPair cp;
        cp.outer = outer.name;
        cp.inner = inner.name;
        cp.pos = p;
        cp.peak = apply_subst(outer.lhs, *mgu);
        cp.left = apply_subst(outer.rhs, *mgu);
        cp.right = replace_raw(cp.peak, p, apply_subst(inner.rhs, *mgu));
        out.push_back(std::move(cp));
      }
    }
  }
  return out;
}

bool joinable(const Expr& a, const Expr& b, const RewriteSystem& R, std::size_t fuel) {
  try {
    return alpha_equal(normal_form(a, R, fuel), normal_form(b, R, fuel));
  } catch (const FuelExhausted&) {
    return false;
  }
}

bool joinable(const CriticalPair& cp, const RewriteSystem& R, std::size_t fuel) {
  return joinable(cp.left, cp.right, R, fuel);
}

// ---------------------------------------------------------------------------
// derivation lengths

std::size_t DerivationOracle::visit(const Expr& x, std::size_t depth) {
  auto it = memo_.find(x);
  if (it != memo_.end()) {
    if (depth + it->second > fuel_) throw FuelExhausted(fuel_);
    return it->second;
  }
  if (active_.count(x)) throw FuelExhausted(fuel_);  // a cycle
  auto rs = redexes(x, R_);
  if (rs.empty()) {
    memo_.emplace(x, 0);
    return 0;
  }
  if (depth >= fuel_) throw FuelExhausted(fuel_);
  active_.emplace(x, true);
  std::size_t best = 0;
  try {
    for (const auto& r : rs) best = std::max(best, 1 + visit(contract(x, r), depth + 1));
  } catch (...) {
    active_.erase(x);
    throw;
  }
  active_.erase(x);
  memo_.emplace(x, best);
  return best;
}

std::size_t DerivationOracle::longest(const Expr& x) { return visit(x, 0); }

std::size_t longest_derivation(const Expr& x, const RewriteSystem& R, std::size_t fuel) {
  DerivationOracle o(R, fuel);
  return o.longest(x);
}

bool left_linear(const Rule& r) {
  std::set<Var> seen;
  std::function<bool(const Expr&)> go = [&](const Expr& e) {
    if (e->kind == Kind::Var) return seen.insert(Var{e->sym, e->sort}).second;
    for (const auto& a : e->args)
      if (!go(a)) return false;
    return true;
  };
  return go(r.lhs);
}

bool check_left_linear(const RewriteSystem& R) {
  for (const auto& r : R.rules())
    if (!left_linear(r)) return false;
  return true;
}

}  // namespace dm
