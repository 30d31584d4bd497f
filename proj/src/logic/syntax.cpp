#include "dm/syntax.hpp"

#include <functional>

namespace dm {

namespace {

struct Scope {
  std::vector<Var> stack;  // innermost last
};

[[noreturn]] void fail(const SExp& s, const std::string& msg) { throw ParseError(msg, s.line); }

bool is_loose_ref(const std::string& a) {
  if (a.size() < 2 || a[0] != '#') return false;
  for (std::size_t i = 1; i < a.size(); ++i)
    if (a[i] < '0' || a[i] > '9') return false;
  return true;
}

Expr term_rec(const Signature& sig, const SExp& s, Sort expected, Scope& sc);
Expr prop_rec(const Signature& sig, const SExp& s, Scope& sc);

Expr name_term(const Signature& sig, const SExp& s, Sort expected, Scope& sc) {
  const std::string& a = s.atom;
  if (is_loose_ref(a)) {
    auto k = static_cast<std::uint32_t>(std::stoul(a.substr(1)));
    return mk_bvar(k + static_cast<std::uint32_t>(sc.stack.size()), expected);
  }
  Sym nm = intern(a);
  for (std::size_t d = 0; d < sc.stack.size(); ++d) {
    const Var& v = sc.stack[sc.stack.size() - 1 - d];
    if (v.name == nm && v.sort == expected) return mk_bvar(static_cast<std::uint32_t>(d), expected);
  }
  if (const FunDecl* f = sig.fun(nm)) {
    if (!f->args.empty()) fail(s, "function " + a + " used without arguments");
    if (f->result != expected) fail(s, "constant " + a + " has sort " + f->result.str() + ", expected " + expected.str());
    return mk_app(nm, f->result, {});
  }
  if (sig.pred(nm)) fail(s, "predicate " + a + " used as a term");
  if (a.empty() || a[0] == '(' || a[0] == ':') fail(s, "bad variable name '" + a + "'");
  if (!sig.has_sort(expected)) fail(s, "variable " + a + " of undeclared sort " + expected.str());
  return mk_var(Var{nm, expected});
}

Expr term_rec(const Signature& sig, const SExp& s, Sort expected, Scope& sc) {
  if (s.is_atom) return name_term(sig, s, expected, sc);
  if (s.list.empty() || !s.list[0].is_atom) fail(s, "malformed term");
  const std::string& h = s.list[0].atom;
  if (h == "the") {
    if (s.size() != 3) fail(s, "(the SORT term) expected");
    auto so = Sort::parse(s[1].is_atom ? s[1].atom : "");
    if (!so) fail(s, "bad sort");
    if (*so != expected) fail(s, "annotated sort " + so->str() + " where " + expected.str() + " expected");
    return term_rec(sig, s[2], *so, sc);
  }
  const FunDecl* f = sig.fun(h);
  if (!f) fail(s, "unknown function symbol " + h);
  if (f->args.size() + 1 != s.size())
    fail(s, h + ": expected " + std::to_string(f->args.size()) + " arguments, got " + std::to_string(s.size() - 1));
  if (f->result != expected) fail(s, h + " has sort " + f->result.str() + ", expected " + expected.str());
  std::vector<Expr> args;
  for (std::size_t i = 0; i < f->args.size(); ++i) args.push_back(term_rec(sig, s.list[i + 1], f->args[i], sc));
  return mk_app(f->name, f->result, std::move(args));
}

std::vector<Var> binder_list(const SExp& b) {
  if (b.is_atom) fail(b, "binder expected");
  if (!b.list.empty() && !b.list[0].is_atom) {
    std::vector<Var> vs;
    for (const auto& x : b.list) vs.push_back(parse_binder(x));
    return vs;
  }
  return {parse_binder(b)};
}

Expr nest(Kind k, const SExp& s, const Signature& sig, Scope& sc) {
  if (s.size() < 3) fail(s, "connective needs at least two arguments");
  Expr acc = prop_rec(sig, s.list.back(), sc);
  for (std::size_t i = s.size() - 2; i >= 1; --i) acc = mk_binop(k, prop_rec(sig, s.list[i], sc), acc);
  return acc;
}

Expr prop_rec(const Signature& sig, const SExp& s, Scope& sc) {
  if (s.is_atom) {
    if (s.atom == "bot") return mk_bot();
    if (s.atom == "top") return mk_top();
    const PredDecl* p = sig.pred(s.atom);
    if (!p) fail(s, "unknown proposition " + s.atom);
    if (!p->args.empty()) fail(s, "predicate " + s.atom + " used without arguments");
    return mk_atom(p->name, {});
  }
  if (s.list.empty() || !s.list[0].is_atom) fail(s, "malformed proposition");
  const std::string& h = s.list[0].atom;
  if (h == "and") return nest(Kind::And, s, sig, sc);
  if (h == "or") return nest(Kind::Or, s, sig, sc);
  if (h == "imp") return nest(Kind::Imp, s, sig, sc);
  if (h == "not") {
    if (s.size() != 2) fail(s, "(not p) expected");
    return neg(prop_rec(sig, s[1], sc));
  }
  if (h == "iff") {
    if (s.size() != 3) fail(s, "(iff p q) expected");
    return iff(prop_rec(sig, s[1], sc), prop_rec(sig, s[2], sc));
  }
  if (h == "forall" || h == "exists") {
    if (s.size() != 3) fail(s, "(" + h + " (x SORT) p) expected");
    Kind k = h == "forall" ? Kind::Forall : Kind::Exists;
    auto vs = binder_list(s[1]);
    for (const auto& v : vs) {
      if (!sig.has_sort(v.sort)) fail(s, "binder of undeclared sort " + v.sort.str());
      sc.stack.push_back(v);
    }
    Expr body = prop_rec(sig, s[2], sc);
    for (std::size_t i = vs.size(); i-- > 0;) {
      sc.stack.pop_back();
      body = mk_quant(k, vs[i].name, vs[i].sort, body);
    }
    return body;
  }
  const PredDecl* p = sig.pred(h);
  if (!p) fail(s, "unknown predicate " + h);
  if (p->args.size() + 1 != s.size())
    fail(s, h + ": expected " + std::to_string(p->args.size()) + " arguments, got " + std::to_string(s.size() - 1));
  std::vector<Expr> args;
  for (std::size_t i = 0; i < p->args.size(); ++i) args.push_back(term_rec(sig, s.list[i + 1], p->args[i], sc));
  return mk_atom(p->name, std::move(args));
}

bool looks_like_prop(const Signature& sig, const SExp& s) {
  if (s.is_atom) {
    if (s.atom == "bot" || s.atom == "top") return true;
    return sig.pred(s.atom) != nullptr;
  }
  if (s.list.empty() || !s.list[0].is_atom) return false;
  static const char* conn[] = {"and", "or", "imp", "not", "iff", "forall", "exists"};
  for (auto* c : conn)
    if (s.list[0].atom == c) return true;
  return sig.pred(s.list[0].atom) != nullptr;
}

}  // namespace

Var parse_binder(const SExp& s) {
  if (s.is_atom || s.size() != 2 || !s[0].is_atom || !s[1].is_atom) fail(s, "binder (x SORT) expected");
  auto so = Sort::parse(s[1].atom);
  if (!so) fail(s, "bad sort " + s[1].atom);
  return mkvar(s[0].atom, *so);
}

Expr parse_term(const Signature& sig, const SExp& s, Sort expected) {
  Scope sc;
  return term_rec(sig, s, expected, sc);
}

Expr parse_prop(const Signature& sig, const SExp& s) {
  Scope sc;
  return prop_rec(sig, s, sc);
}

Expr parse_expr(const Signature& sig, const SExp& s, std::optional<Sort> expected) {
  if (looks_like_prop(sig, s)) return parse_prop(sig, s);
  if (!s.is_atom && s.head_is("the")) {
    auto so = Sort::parse(s[1].is_atom ? s[1].atom : "");
    if (!so) fail(s, "bad sort");
    return parse_term(sig, s, *so);
  }
  if (!s.is_atom && !s.list.empty() && s.list[0].is_atom) {
    if (const FunDecl* f = sig.fun(s.list[0].atom)) return parse_term(sig, s, f->result);
  }
  if (s.is_atom) {
    if (const FunDecl* f = sig.fun(s.atom)) return parse_term(sig, s, f->result);
  }
  if (!expected) fail(s, "cannot infer the sort of this term; use (the SORT term)");
  return parse_term(sig, s, *expected);
}

Expr parse_term(const Signature& sig, std::string_view text, Sort expected) {
  return parse_term(sig, read_sexp(text), expected);
}

Expr parse_prop(const Signature& sig, std::string_view text) { return parse_prop(sig, read_sexp(text)); }

// ---------------------------------------------------------------------------
// printing

namespace {

SExp list3(SExp a, SExp b, SExp c) {
  std::vector<SExp> xs;
  xs.reserve(3);
  xs.push_back(std::move(a));
  xs.push_back(std::move(b));
  xs.push_back(std::move(c));
  return SExp::make_list(std::move(xs));
}

struct Printer {
  std::set<Var> avoid;         // free variables of the root
  std::vector<Var> stack;      // chosen binder names, innermost last

  Var choose(const Expr& q) {
    Var v{q->sym, q->sort};
    auto clash = [&](Var c) {
      if (avoid.count(c)) return true;
      for (const auto& b : stack)
        if (b == c) return true;
      return false;
    };
    if (!clash(v)) return v;
    std::string base = name_of(v.name);
    while (base.size() > 1 && base.back() >= '0' && base.back() <= '9') base.pop_back();
    for (int k = 1;; ++k) {
      Var c = mkvar(base + std::to_string(k), v.sort);
      if (!clash(c)) return c;
    }
  }

  std::string bname(const Expr& e) const {
    if (e->index < stack.size()) return name_of(stack[stack.size() - 1 - e->index].name);
    return "#" + std::to_string(e->index - stack.size());
  }

  SExp sexp(const Expr& e) {
    switch (e->kind) {
      case Kind::Var:
        return SExp::make_atom(name_of(e->sym));
      case Kind::BVar:
        return SExp::make_atom(bname(e));
      case Kind::Bot:
        return SExp::make_atom("bot");
      case Kind::Top:
        return SExp::make_atom("top");
      case Kind::App:
      case Kind::Atom: {
        if (e->args.empty()) return SExp::make_atom(name_of(e->sym));
        std::vector<SExp> xs{SExp::make_atom(name_of(e->sym))};
        for (const auto& a : e->args) xs.push_back(sexp(a));
        return SExp::make_list(std::move(xs));
      }
      case Kind::And:
      case Kind::Or:
      case Kind::Imp: {
        const char* h = e->kind == Kind::And ? "and" : e->kind == Kind::Or ? "or" : "imp";
        return list3(SExp::make_atom(h), sexp(e->args[0]), sexp(e->args[1]));
      }
      case Kind::Forall:
      case Kind::Exists: {
        Var v = choose(e);
        stack.push_back(v);
        SExp body = sexp(e->args[0]);
        stack.pop_back();
        SExp b = SExp::make_list({SExp::make_atom(name_of(v.name)), SExp::make_atom(v.sort.str())});
        return list3(SExp::make_atom(e->kind == Kind::Forall ? "forall" : "exists"), std::move(b), std::move(body));
      }
    }
    return SExp::make_atom("?");
  }

  std::string infix(const Expr& e, bool top) {
    switch (e->kind) {
      case Kind::Var:
        return name_of(e->sym);
      case Kind::BVar:
        return bname(e);
      case Kind::Bot:
        return "bot";
      case Kind::Top:
        return "top";
      case Kind::App:
      case Kind::Atom: {
        const std::string& n = name_of(e->sym);
        if (e->args.empty()) return n;
        if (e->args.size() == 2 && (n == "+" || n == "*" || n == "=" || n.rfind("in", 0) == 0 || n == "eps")) {
          std::string s = infix(e->args[0], false) + " " + n + " " + infix(e->args[1], false);
          return top || e->kind == Kind::Atom ? s : "(" + s + ")";
        }
        std::string s = n + "(";
        for (std::size_t i = 0; i < e->args.size(); ++i) {
          if (i) s += ", ";
          s += infix(e->args[i], true);
        }
        return s + ")";
      }
      case Kind::And:
      case Kind::Or:
      case Kind::Imp: {
        const char* op = e->kind == Kind::And ? " /\\ " : e->kind == Kind::Or ? " \\/ " : " => ";
        std::string s = infix(e->args[0], false) + op + infix(e->args[1], false);
        return top ? s : "(" + s + ")";
      }
      case Kind::Forall:
      case Kind::Exists: {
        Var v = choose(e);
        stack.push_back(v);
        std::string body = infix(e->args[0], true);
        stack.pop_back();
        std::string s = std::string(e->kind == Kind::Forall ? "forall " : "exists ") + name_of(v.name) + ":" +
                        v.sort.str() + ". " + body;
        return top ? s : "(" + s + ")";
      }
    }
    return "?";
  }
};

}  // namespace

SExp to_sexp(const Expr& e) {
  Printer p;
  p.avoid = free_vars(e);
  return p.sexp(e);
}

std::string print(const Expr& e) { return write_sexp(to_sexp(e)); }

std::string pretty(const Expr& e) {
  Printer p;
  p.avoid = free_vars(e);
  return p.infix(e, true);
}

}  // namespace dm
