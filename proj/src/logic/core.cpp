#include "dm/core.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace dm {

// ---------------------------------------------------------------------------
// sorts and symbols

std::string Sort::str() const {
  if (code_ == -1) return "l";
  if (code_ == -2) return "c";
  return std::to_string(code_);
}

std::optional<Sort> Sort::parse(std::string_view s) {
  if (s == "l") return Sort::list();
  if (s == "c") return Sort::cls();
  if (s.empty() || s.size() > 3) return std::nullopt;
  int v = 0;
  for (char ch : s) {
    if (ch < '0' || ch > '9') return std::nullopt;
    v = v * 10 + (ch - '0');
  }
  return Sort::arith(v);
}

namespace {

struct SymTable {
  std::mutex mu;
  std::deque<std::string> names;
  std::unordered_map<std::string, Sym> index;
};

SymTable& symtab() {
  static SymTable t;
  return t;
}

std::size_t mix(std::size_t h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t var_bit(Var v) {
  std::size_t h = mix(v.name * 2654435761u, static_cast<std::size_t>(v.sort.code() + 7));
  return 1ULL << (h % 64);
}

}  // namespace

Sym intern(std::string_view name) {
  auto& t = symtab();
  std::lock_guard<std::mutex> lk(t.mu);
  auto it = t.index.find(std::string(name));
  if (it != t.index.end()) return it->second;
  Sym id = static_cast<Sym>(t.names.size());
  t.names.emplace_back(name);
  t.index.emplace(std::string(name), id);
  return id;
}

const std::string& name_of(Sym s) {
  auto& t = symtab();
  std::lock_guard<std::mutex> lk(t.mu);
  return t.names.at(s);
}

Var mkvar(std::string_view name, Sort s) { return Var{intern(name), s}; }

std::string show(const Var& v) { return name_of(v.name) + ":" + v.sort.str(); }

// ---------------------------------------------------------------------------
// construction

namespace {

Expr finish(Kind k, Sym sym, Sort sort, std::uint32_t index, std::vector<Expr> args) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->sym = sym;
  n->sort = sort;
  n->index = index;
  std::size_t h = static_cast<std::size_t>(k) * 1000003u;
  std::uint32_t sz = 1;
  std::uint32_t loose = 0;
  std::uint64_t mask = 0;
  switch (k) {
    case Kind::Var:
      h = mix(h, sym);
      h = mix(h, static_cast<std::size_t>(sort.code() + 7));
      mask = var_bit(Var{sym, sort});
      break;
    case Kind::BVar:
      h = mix(h, index);
      h = mix(h, static_cast<std::size_t>(sort.code() + 7));
      loose = index + 1;
      break;
    case Kind::App:
    case Kind::Atom:
      h = mix(h, sym);
      break;
    case Kind::Forall:
    case Kind::Exists:
      h = mix(h, static_cast<std::size_t>(sort.code() + 7));
      break;
    default:
      break;
  }
  bool binder = (k == Kind::Forall || k == Kind::Exists);
  for (const auto& a : args) {
    h = mix(h, a->hash);
    sz += a->size;
    std::uint32_t l = a->loose;
    if (binder && l > 0) l -= 1;
    loose = std::max(loose, l);
    mask |= a->fvmask;
  }
  n->hash = h;
  n->size = sz;
  n->loose = loose;
  n->fvmask = mask;
  n->args = std::move(args);
  return n;
}

}  // namespace

Expr mk_var(Var v) { return finish(Kind::Var, v.name, v.sort, 0, {}); }
Expr mk_bvar(std::uint32_t index, Sort s) { return finish(Kind::BVar, 0, s, index, {}); }
Expr mk_app(Sym f, Sort result, std::vector<Expr> args) {
  return finish(Kind::App, f, result, 0, std::move(args));
}
Expr mk_atom(Sym p, std::vector<Expr> args) { return finish(Kind::Atom, p, Sort(), 0, std::move(args)); }

Expr mk_bot() {
  static const Expr b = finish(Kind::Bot, 0, Sort(), 0, {});
  return b;
}
Expr mk_top() {
  static const Expr t = finish(Kind::Top, 0, Sort(), 0, {});
  return t;
}
Expr mk_and(Expr a, Expr b) { return finish(Kind::And, 0, Sort(), 0, {std::move(a), std::move(b)}); }
Expr mk_or(Expr a, Expr b) { return finish(Kind::Or, 0, Sort(), 0, {std::move(a), std::move(b)}); }
Expr mk_imp(Expr a, Expr b) { return finish(Kind::Imp, 0, Sort(), 0, {std::move(a), std::move(b)}); }

Expr mk_binop(Kind k, Expr a, Expr b) {
  if (k != Kind::And && k != Kind::Or && k != Kind::Imp) throw KernelError("mk_binop: not a connective");
  return finish(k, 0, Sort(), 0, {std::move(a), std::move(b)});
}

namespace {

std::string strip_digits(const std::string& s) {
  std::size_t n = s.size();
  while (n > 1 && s[n - 1] >= '0' && s[n - 1] <= '9') --n;
  return s.substr(0, n);
}

}  // namespace

Expr mk_quant(Kind k, Sym name, Sort s, Expr body) {
  if (k != Kind::Forall && k != Kind::Exists) throw KernelError("mk_quant: not a binder");
  Var dv{name, s};
  if ((body->fvmask & var_bit(dv)) && occurs_free(dv, body)) {
    Var f = fresh_var(strip_digits(name_of(name)), s, free_vars(body));
    name = f.name;
  }
  return finish(k, name, s, 0, {std::move(body)});
}

Expr var(std::string_view name, Sort s) { return mk_var(mkvar(name, s)); }

Expr quant(Kind k, Var x, const Expr& body) { return mk_quant(k, x.name, x.sort, abstract(body, x)); }
Expr forall_(Var x, const Expr& body) { return quant(Kind::Forall, x, body); }
Expr exists_(Var x, const Expr& body) { return quant(Kind::Exists, x, body); }
Expr neg(Expr a) { return mk_imp(std::move(a), mk_bot()); }
Expr iff(const Expr& a, const Expr& b) { return mk_and(mk_imp(a, b), mk_imp(b, a)); }

Expr rebuild(const Expr& e, std::vector<Expr> args) {
  bool same = args.size() == e->args.size();
  for (std::size_t i = 0; same && i < args.size(); ++i) same = args[i] == e->args[i];
  if (same) return e;
  switch (e->kind) {
    case Kind::App:
      return mk_app(e->sym, e->sort, std::move(args));
    case Kind::Atom:
      return mk_atom(e->sym, std::move(args));
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
      return mk_binop(e->kind, std::move(args.at(0)), std::move(args.at(1)));
    case Kind::Forall:
    case Kind::Exists:
      return mk_quant(e->kind, e->sym, e->sort, std::move(args.at(0)));
    default:
      return e;
  }
}

// ---------------------------------------------------------------------------
// alpha equality

bool alpha_equal(const Expr& a, const Expr& b) {
  if (a == b) return true;
  if (a->hash != b->hash || a->kind != b->kind || a->size != b->size) return false;
  switch (a->kind) {
    case Kind::Var:
      return a->sym == b->sym && a->sort == b->sort;
    case Kind::BVar:
      return a->index == b->index && a->sort == b->sort;
    case Kind::Bot:
    case Kind::Top:
      return true;
    case Kind::App:
    case Kind::Atom:
      if (a->sym != b->sym) return false;
      break;
    case Kind::Forall:
    case Kind::Exists:
      if (a->sort != b->sort) return false;
      break;
    default:
      break;
  }
  if (a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!alpha_equal(a->args[i], b->args[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// locally nameless

Expr lift(const Expr& t, std::uint32_t by, std::uint32_t cutoff) {
  if (by == 0 || t->loose <= cutoff) return t;
  if (t->kind == Kind::BVar) return mk_bvar(t->index + by, t->sort);
  std::uint32_t inner = cutoff + (is_binder(t) ? 1 : 0);
  std::vector<Expr> args;
  args.reserve(t->args.size());
  for (const auto& a : t->args) args.push_back(lift(a, by, inner));
  return rebuild(t, std::move(args));
}

namespace {

Expr abstract_at(const Expr& e, Var x, std::uint32_t depth, std::uint64_t bit) {
  bool has_x = (e->fvmask & bit) != 0;
  if (!has_x && e->loose <= depth) return e;
  switch (e->kind) {
    case Kind::Var:
      if (e->sym == x.name && e->sort == x.sort) return mk_bvar(depth, x.sort);
      return e;
    case Kind::BVar:
      if (e->index >= depth) return mk_bvar(e->index + 1, e->sort);
      return e;
    default:
      break;
  }
  std::uint32_t inner = depth + (is_binder(e) ? 1 : 0);
  std::vector<Expr> args;
  args.reserve(e->args.size());
  for (const auto& a : e->args) args.push_back(abstract_at(a, x, inner, bit));
  return rebuild(e, std::move(args));
}

Expr instantiate_at(const Expr& e, const Expr& t, std::uint32_t depth) {
  if (e->loose <= depth) return e;
  if (e->kind == Kind::BVar) {
    if (e->index == depth) return lift(t, depth);
    if (e->index > depth) return mk_bvar(e->index - 1, e->sort);
    return e;
  }
  std::uint32_t inner = depth + (is_binder(e) ? 1 : 0);
  std::vector<Expr> args;
  args.reserve(e->args.size());
  for (const auto& a : e->args) args.push_back(instantiate_at(a, t, inner));
  return rebuild(e, std::move(args));
}

}  // namespace

Expr abstract(const Expr& body, Var x) { return abstract_at(body, x, 0, var_bit(x)); }

Expr instantiate(const Expr& body, const Expr& t) { return instantiate_at(body, t, 0); }

std::pair<Var, Expr> open_quant(const Expr& q) {
  if (!is_binder(q)) throw KernelError("open_quant: not a binder");
  Var v{q->sym, q->sort};
  return {v, instantiate(q->args[0], mk_var(v))};
}

Expr open_with(const Expr& q, Var v) {
  if (!is_binder(q)) throw KernelError("open_with: not a binder");
  if (v.sort != q->sort) throw SortError("open_with: sort mismatch for " + show(v));
  return instantiate(q->args[0], mk_var(v));
}

// ---------------------------------------------------------------------------
// free variables and substitution

namespace {

void collect_fv(const Expr& e, std::set<Var>& out) {
  if (e->fvmask == 0) return;
  if (e->kind == Kind::Var) {
    out.insert(Var{e->sym, e->sort});
    return;
  }
  for (const auto& a : e->args) collect_fv(a, out);
}

}  // namespace

std::set<Var> free_vars(const Expr& e) {
  std::set<Var> out;
  collect_fv(e, out);
  return out;
}

bool occurs_free(Var x, const Expr& e) {
  if (!(e->fvmask & var_bit(x))) return false;
  if (e->kind == Kind::Var) return e->sym == x.name && e->sort == x.sort;
  for (const auto& a : e->args)
    if (occurs_free(x, a)) return true;
  return false;
}

Var fresh_var(std::string_view base, Sort s, const std::set<Var>& avoid) {
  std::string b(base);
  Var v = mkvar(b, s);
  if (!avoid.count(v)) return v;
  for (int k = 1;; ++k) {
    v = mkvar(b + std::to_string(k), s);
    if (!avoid.count(v)) return v;
  }
}

Var fresh_var_for(std::string_view base, Sort s, const std::vector<Expr>& avoid) {
  std::set<Var> fv;
  for (const auto& e : avoid) collect_fv(e, fv);
  return fresh_var(base, s, fv);
}

namespace {

Expr subst_at(const Expr& e, const Subst& s, std::uint64_t mask, std::uint32_t depth) {
  if (!(e->fvmask & mask)) return e;
  if (e->kind == Kind::Var) {
    auto it = s.find(Var{e->sym, e->sort});
    if (it == s.end()) return e;
    return lift(it->second, depth);
  }
  std::uint32_t inner = depth + (is_binder(e) ? 1 : 0);
  std::vector<Expr> args;
  args.reserve(e->args.size());
  for (const auto& a : e->args) args.push_back(subst_at(a, s, mask, inner));
  return rebuild(e, std::move(args));
}

}  // namespace

Expr apply_subst(const Expr& e, const Subst& s) {
  std::uint64_t mask = 0;
  for (const auto& [v, t] : s) {
    if (!is_term(t)) throw SortError("substitution image for " + show(v) + " is not a term");
    if (t->sort != v.sort)
      throw SortError("substitution sort mismatch: " + show(v) + " := term of sort " + t->sort.str());
    mask |= var_bit(v);
  }
  if (s.empty()) return e;
  return subst_at(e, s, mask, 0);
}

Expr subst1(const Expr& e, Var x, const Expr& t) { return apply_subst(e, Subst{{x, t}}); }

namespace {

bool fs_walk(const Expr& e, Var x, const std::set<Var>& tv, std::vector<Var>& binders) {
  if (!occurs_free(x, e)) return true;
  if (e->kind == Kind::Var) {
    for (const auto& b : binders)
      if (tv.count(b)) return false;
    return true;
  }
  if (is_binder(e)) {
    binders.push_back(Var{e->sym, e->sort});
    bool r = fs_walk(e->args[0], x, tv, binders);
    binders.pop_back();
    return r;
  }
  for (const auto& a : e->args)
    if (!fs_walk(a, x, tv, binders)) return false;
  return true;
}

}  // namespace

bool freely_substitutable(const Expr& t, Var x, const Expr& p) {
  std::set<Var> tv = free_vars(t);
  if (tv.empty()) return true;
  std::vector<Var> binders;
  return fs_walk(p, x, tv, binders);
}

// ---------------------------------------------------------------------------
// positions

std::string show(const Position& p) {
  if (p.empty()) return "root";
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(p[i]);
  }
  return s;
}

namespace {

const Expr& child(const Expr& e, int i, const Position& p) {
  if (i < 1 || static_cast<std::size_t>(i) > e->args.size())
    throw PositionError("invalid position " + show(p));
  return e->args[static_cast<std::size_t>(i - 1)];
}

Expr replace_named(const Expr& e, const Expr& s, const Position& p, std::size_t k) {
  if (k == p.size()) return s;
  int i = p[k];
  if (is_binder(e)) {
    if (i != 1) throw PositionError("invalid position " + show(p));
    auto [v, body] = open_quant(e);
    Expr nb = replace_named(body, s, p, k + 1);
    return mk_quant(e->kind, v.name, v.sort, abstract(nb, v));
  }
  child(e, i, p);
  std::vector<Expr> args = e->args;
  args[static_cast<std::size_t>(i - 1)] = replace_named(args[static_cast<std::size_t>(i - 1)], s, p, k + 1);
  return rebuild(e, std::move(args));
}

Expr replace_raw_at(const Expr& e, const Position& p, std::size_t k, const Expr& s) {
  if (k == p.size()) return s;
  int i = p[k];
  child(e, i, p);
  std::vector<Expr> args = e->args;
  args[static_cast<std::size_t>(i - 1)] = replace_raw_at(args[static_cast<std::size_t>(i - 1)], p, k + 1, s);
  return rebuild(e, std::move(args));
}

void collect_positions(const Expr& e, Position& cur, std::vector<Position>& out) {
  out.push_back(cur);
  for (std::size_t i = 0; i < e->args.size(); ++i) {
    cur.push_back(static_cast<int>(i + 1));
    collect_positions(e->args[i], cur, out);
    cur.pop_back();
  }
}

}  // namespace

bool valid_position(const Expr& e, const Position& p) {
  const Node* n = e.get();
  for (int i : p) {
    if (i < 1 || static_cast<std::size_t>(i) > n->args.size()) return false;
    n = n->args[static_cast<std::size_t>(i - 1)].get();
  }
  return true;
}

Expr subterm_at(const Expr& e, const Position& p) {
  Expr cur = e;
  for (int i : p) {
    if (is_binder(cur)) {
      if (i != 1) throw PositionError("invalid position " + show(p));
      cur = open_quant(cur).second;
    } else {
      cur = child(cur, i, p);
    }
  }
  return cur;
}

Expr replace_at(const Expr& e, const Expr& s, const Position& p) {
  if (p.empty()) return s;
  Expr old = subterm_at(e, p);
  if (is_term(old) != is_term(s)) throw SortError("replace_at: term/proposition mismatch at " + show(p));
  if (is_term(old) && old->sort != s->sort)
    throw SortError("replace_at: sort " + s->sort.str() + " where " + old->sort.str() + " expected at " + show(p));
  return replace_named(e, s, p, 0);
}

Expr subterm_raw(const Expr& e, const Position& p) {
  Expr cur = e;
  for (int i : p) cur = child(cur, i, p);
  return cur;
}

Expr replace_raw(const Expr& e, const Position& p, const Expr& s) { return replace_raw_at(e, p, 0, s); }

std::vector<Position> positions(const Expr& e) {
  std::vector<Position> out;
  Position cur;
  collect_positions(e, cur, out);
  return out;
}

// ---------------------------------------------------------------------------
// signatures

void Signature::add_sort(Sort s) {
  if (!has_sort(s)) sorts_.push_back(s);
}

bool Signature::has_sort(Sort s) const { return std::find(sorts_.begin(), sorts_.end(), s) != sorts_.end(); }

void Signature::add_fun(std::string_view name, std::vector<Sort> args, Sort result) {
  Sym s = intern(name);
  if (auto* f = fun(s)) {
    if (f->args != args || f->result != result)
      throw SortError("conflicting declaration of function " + std::string(name));
    return;
  }
  if (pred(s)) throw SortError(std::string(name) + " already declared as a predicate");
  for (Sort a : args)
    if (!has_sort(a)) throw SortError("function " + std::string(name) + ": undeclared sort " + a.str());
  if (!has_sort(result)) throw SortError("function " + std::string(name) + ": undeclared sort " + result.str());
  fun_index_[s] = funs_.size();
  funs_.push_back(FunDecl{s, std::move(args), result});
}

void Signature::add_pred(std::string_view name, std::vector<Sort> args) {
  Sym s = intern(name);
  if (auto* p = pred(s)) {
    if (p->args != args) throw SortError("conflicting declaration of predicate " + std::string(name));
    return;
  }
  if (fun(s)) throw SortError(std::string(name) + " already declared as a function");
  for (Sort a : args)
    if (!has_sort(a)) throw SortError("predicate " + std::string(name) + ": undeclared sort " + a.str());
  pred_index_[s] = preds_.size();
  preds_.push_back(PredDecl{s, std::move(args)});
}

const FunDecl* Signature::fun(Sym s) const {
  auto it = fun_index_.find(s);
  return it == fun_index_.end() ? nullptr : &funs_[it->second];
}

const PredDecl* Signature::pred(Sym s) const {
  auto it = pred_index_.find(s);
  return it == pred_index_.end() ? nullptr : &preds_[it->second];
}

Expr Signature::app(std::string_view f, std::vector<Expr> args) const {
  const FunDecl* d = fun(f);
  if (!d) throw SortError("unknown function symbol " + std::string(f));
  if (d->args.size() != args.size())
    throw SortError(std::string(f) + ": expected " + std::to_string(d->args.size()) + " arguments, got " +
                    std::to_string(args.size()));
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!is_term(args[i]) || args[i]->sort != d->args[i])
      throw SortError(std::string(f) + ": argument " + std::to_string(i + 1) + " has wrong sort");
  }
  return mk_app(d->name, d->result, std::move(args));
}

Expr Signature::atom(std::string_view p, std::vector<Expr> args) const {
  const PredDecl* d = pred(p);
  if (!d) throw SortError("unknown predicate symbol " + std::string(p));
  if (d->args.size() != args.size())
    throw SortError(std::string(p) + ": expected " + std::to_string(d->args.size()) + " arguments, got " +
                    std::to_string(args.size()));
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!is_term(args[i]) || args[i]->sort != d->args[i])
      throw SortError(std::string(p) + ": argument " + std::to_string(i + 1) + " has wrong sort");
  }
  return mk_atom(d->name, std::move(args));
}

namespace {

void check_rec(const Signature& sig, const Expr& e, std::vector<Sort>& binders) {
  switch (e->kind) {
    case Kind::Var:
      if (!sig.has_sort(e->sort)) throw SortError("variable " + name_of(e->sym) + " of undeclared sort");
      return;
    case Kind::BVar:
      if (e->index < binders.size() && binders[binders.size() - 1 - e->index] != e->sort)
        throw SortError("bound variable sort disagrees with its binder");
      return;
    case Kind::Bot:
    case Kind::Top:
      return;
    case Kind::App: {
      const FunDecl* d = sig.fun(e->sym);
      if (!d) throw SortError("unknown function symbol " + name_of(e->sym));
      if (d->args.size() != e->args.size()) throw SortError("arity mismatch for " + name_of(e->sym));
      if (d->result != e->sort) throw SortError("result sort mismatch for " + name_of(e->sym));
      for (std::size_t i = 0; i < e->args.size(); ++i) {
        if (!is_term(e->args[i]) || e->args[i]->sort != d->args[i])
          throw SortError(name_of(e->sym) + ": argument " + std::to_string(i + 1) + " has wrong sort");
        check_rec(sig, e->args[i], binders);
      }
      return;
    }
    case Kind::Atom: {
      const PredDecl* d = sig.pred(e->sym);
      if (!d) throw SortError("unknown predicate symbol " + name_of(e->sym));
      if (d->args.size() != e->args.size()) throw SortError("arity mismatch for " + name_of(e->sym));
      for (std::size_t i = 0; i < e->args.size(); ++i) {
        if (!is_term(e->args[i]) || e->args[i]->sort != d->args[i])
          throw SortError(name_of(e->sym) + ": argument " + std::to_string(i + 1) + " has wrong sort");
        check_rec(sig, e->args[i], binders);
      }
      return;
    }
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
      for (const auto& a : e->args) {
        if (is_term(a)) throw SortError("term where a proposition is expected");
        check_rec(sig, a, binders);
      }
      return;
    case Kind::Forall:
    case Kind::Exists:
      if (!sig.has_sort(e->sort)) throw SortError("binder over undeclared sort " + e->sort.str());
      if (is_term(e->args[0])) throw SortError("term where a proposition is expected");
      binders.push_back(e->sort);
      check_rec(sig, e->args[0], binders);
      binders.pop_back();
      return;
  }
}

}  // namespace

void Signature::check(const Expr& e) const {
  std::vector<Sort> binders;
  check_rec(*this, e, binders);
}

bool Signature::well_sorted(const Expr& e) const {
  try {
    check(e);
    return true;
  } catch (const SortError&) {
    return false;
  }
}

void Signature::merge(const Signature& other) {
  for (Sort s : other.sorts_) add_sort(s);
  for (const auto& f : other.funs_) add_fun(name_of(f.name), f.args, f.result);
  for (const auto& p : other.preds_) add_pred(name_of(p.name), p.args);
}

}  // namespace dm
