#include "dm/encodings.hpp"

#include "dm/syntax.hpp"

namespace dm {

namespace {

bool is_sym(const Expr& e, const char* name) { return name_of(e->sym) == name; }

Expr enc_term(const Expr& t, const std::vector<Var>& as, std::size_t from) {
  switch (t->kind) {
    case Kind::Var: {
      if (from == as.size()) return t;
      const Var& head = as[from];
      if (head.name == t->sym && head.sort == t->sort) return one(t->sort.level());
      return S(enc_term(t, as, from + 1));
    }
    case Kind::App: {
      if (t->args.empty() && is_sym(t, "0")) {
        Expr z = zero();
        for (std::size_t k = from; k < as.size(); ++k) z = S(z);
        return z;
      }
      if (is_sym(t, "s") || is_sym(t, "+") || is_sym(t, "*") || is_sym(t, "pred")) {
        std::vector<Expr> args;
        for (const auto& a : t->args) args.push_back(enc_term(a, as, from));
        return rebuild(t, std::move(args));
      }
      throw KernelError("encoder: no clause for function symbol " + name_of(t->sym));
    }
    default:
      throw KernelError("encoder: unexpected bound variable in term");
  }
}

Expr enc_prop(const Expr& p, std::vector<Var>& as, const std::set<Var>& avoid) {
  switch (p->kind) {
    case Kind::Bot:
      return cempty();
    case Kind::Top:
      return cimp(cempty(), cempty());
    case Kind::Atom: {
      const std::string& n = name_of(p->sym);
      if (n == "=") return doteq(enc_term(p->args[0], as, 0), enc_term(p->args[1], as, 0));
      if (n == "Null") return dotnull(enc_term(p->args[0], as, 0));
      if (n.rfind("in", 0) == 0 && n.size() > 2) {
        int j = std::stoi(n.substr(2));
        return dotin(j, enc_term(p->args[0], as, 0), enc_term(p->args[1], as, 0));
      }
      throw KernelError("encoder: no clause for predicate " + n);
    }
    case Kind::And:
      return cinter(enc_prop(p->args[0], as, avoid), enc_prop(p->args[1], as, avoid));
    case Kind::Or:
      return cunion(enc_prop(p->args[0], as, avoid), enc_prop(p->args[1], as, avoid));
    case Kind::Imp:
      return cimp(enc_prop(p->args[0], as, avoid), enc_prop(p->args[1], as, avoid));
    case Kind::Forall:
    case Kind::Exists: {
      std::set<Var> av = avoid;
      for (const auto& a : as) av.insert(a);
      Var v = fresh_var(name_of(p->sym), p->sort, av);
      av.insert(v);
      Expr body = open_with(p, v);
      as.insert(as.begin(), v);
      Expr e = enc_prop(body, as, av);
      as.erase(as.begin());
      int j = p->sort.level();
      return p->kind == Kind::Forall ? call(j, e) : cex(j, e);
    }
    default:
      throw KernelError("encoder: expected a proposition");
  }
}

}  // namespace

Expr encode_term(const Expr& t, const std::vector<Var>& alphas) { return enc_term(t, alphas, 0); }

EncodedClass encode_prop(const Expr& p, const std::vector<Var>& alphas) {
  std::vector<Var> as = alphas;
  std::set<Var> avoid = free_vars(p);
  EncodedClass out;
  out.cls = enc_prop(p, as, avoid);
  out.source = p;
  out.vars = alphas;
  return out;
}

Expr template_class(const Expr& templ, Var hole) { return encode_prop(templ, {hole}).cls; }

}  // namespace dm
