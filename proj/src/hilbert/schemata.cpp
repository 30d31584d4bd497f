#include <algorithm>

#include "dm/hilbert.hpp"
#include "dm/syntax.hpp"

namespace dm {

namespace {

const char* const kPropositional[] = {"I",    "K",     "W",    "C",    "B",             "Proj_l", "Proj_r", "Pair",
                                      "Inj_l", "Inj_r", "Case", "Contradiction", "EFSQ", "T",      "TND"};

std::vector<std::pair<std::string, int>> prop_vars_of(std::string_view n) {
  if (n == "T" || n == "Refl") return {};
  if (n == "I" || n == "TND") return {{"A", 0}};
  if (n == "K" || n == "Proj_l" || n == "Proj_r" || n == "Inj_l" || n == "Inj_r" || n == "EFSQ" ||
      n == "Contradiction" || n == "W")
    return {{"A", 0}, {"B", 0}};
  if (n == "C" || n == "B" || n == "Pair" || n == "Case") return {{"A", 0}, {"B", 0}, {"C", 0}};
  if (n == "UI" || n == "EI" || n == "Leibniz" || n == "Ind" || n == "Comp") return {{"A", 1}};
  return {};
}

}  // namespace

Expr apply_template(const Template& t, const std::vector<Expr>& args) {
  if (args.size() != t.params.size())
    throw KernelError("template expects " + std::to_string(t.params.size()) + " argument(s)");
  Subst s;
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k]->sort != t.params[k].sort)
      throw SortError("template argument " + print(args[k]) + " has sort " + args[k]->sort.str() + ", hole " +
                      show(t.params[k]) + " wants " + t.params[k].sort.str());
    if (!freely_substitutable(args[k], t.params[k], t.body))
      throw SideConditionError(print(args[k]) + " is not freely substitutable for " + show(t.params[k]) + " in " +
                               print(t.body));
    s[t.params[k]] = args[k];
  }
  return apply_subst(t.body, s);
}

bool is_theory_schema(std::string_view n) {
  if (n == "Refl" || n == "Leibniz" || n == "Ind" || n == "Comp") return true;
  for (const auto& r : robinson_names())
    if (n == r) return true;
  return false;
}

bool is_sorted_schema(std::string_view n) { return n == "UI" || n == "EI" || n == "Comp"; }

std::vector<SchemaInfo> schema_catalogue(const HilbertConfig& cfg) {
  std::vector<SchemaInfo> out;
  auto add = [&](std::string name, int j, bool rule) {
    SchemaInfo s;
    s.prop_vars = prop_vars_of(name);
    s.has_tau = name == "UI" || name == "EI";
    s.name = std::move(name);
    s.j = j;
    s.rule = rule;
    out.push_back(std::move(s));
  };
  for (const char* n : kPropositional)
    if (!(cfg.intuitionistic && std::string_view(n) == "TND")) add(n, -1, false);
  for (int j = 0; j < cfg.order; ++j) {
    add("UI", j, false);
    add("EI", j, false);
  }
  add("Refl", -1, false);
  add("Leibniz", -1, false);
  for (const auto& r : robinson_names()) add(r, -1, false);
  add("Ind", -1, false);
  for (int j = 0; j + 1 < cfg.order; ++j) add("Comp", j, false);
  add("MP", -1, true);
  for (int j = 0; j < cfg.order; ++j) {
    add("Gen", j, true);
    add("Part", j, true);
  }
  return out;
}

std::size_t axiom_schema_count(const HilbertConfig& cfg) {
  auto c = schema_catalogue(cfg);
  return std::count_if(c.begin(), c.end(), [](const SchemaInfo& s) { return !s.rule; });
}

std::size_t rule_count(const HilbertConfig& cfg) {
  auto c = schema_catalogue(cfg);
  return std::count_if(c.begin(), c.end(), [](const SchemaInfo& s) { return s.rule; });
}

namespace {

struct Inst {
  const SchemaInstance& in;
  const HilbertConfig& cfg;

  const Template& tmpl(const char* name, std::vector<Sort> sorts) {
    auto it = in.props.find(name);
    if (it == in.props.end()) throw KernelError(in.schema + ": missing proposition variable " + name);
    const Template& t = it->second;
    if (t.params.size() != sorts.size())
      throw KernelError(in.schema + ": " + name + " must have arity " + std::to_string(sorts.size()));
    for (std::size_t k = 0; k < sorts.size(); ++k)
      if (t.params[k].sort != sorts[k])
        throw SortError(in.schema + ": hole " + show(t.params[k]) + " of " + name + " must have sort " +
                        sorts[k].str());
    return t;
  }

  Expr p0(const char* name) { return tmpl(name, {}).body; }

  std::set<Var> template_fv(const Template& t) {
    std::set<Var> fv = free_vars(t.body);
    for (const auto& p : t.params) fv.erase(p);
    return fv;
  }

  // Metavariable `key` of sort s; it must not occur free in the template
  // apart from through its holes.
  Var meta(const char* key, Sort s, const Template& t, const char* base, const std::set<Var>& extra = {}) {
    std::set<Var> fv = template_fv(t);
    auto it = in.metas.find(key);
    if (it != in.metas.end()) {
      if (it->second.sort != s) throw SortError(in.schema + ": metavariable " + key + " must have sort " + s.str());
      if (fv.count(it->second))
        throw SideConditionError(in.schema + ": metavariable " + show(it->second) + " is free in " + print(t.body));
      return it->second;
    }
    std::set<Var> avoid = fv;
    avoid.insert(extra.begin(), extra.end());
    for (const auto& p : t.params) avoid.insert(p);
    return fresh_var(base, s, avoid);
  }

  Expr tau(Sort s) {
    if (!in.tau) throw KernelError(in.schema + ": missing term variable tau");
    if ((*in.tau)->sort != s) throw SortError(in.schema + ": tau must have sort " + s.str());
    return *in.tau;
  }

  void check_j(int bound) {
    if (in.j < 0 || in.j >= bound)
      throw KernelError(in.schema + ": sort index " + std::to_string(in.j) + " out of range");
  }

  Expr run() {
    const std::string& n = in.schema;
    auto I = [](Expr a, Expr b) { return mk_imp(std::move(a), std::move(b)); };
    if (n == "I") {
      Expr A = p0("A");
      return I(A, A);
    }
    if (n == "K") return I(p0("A"), I(p0("B"), p0("A")));
    if (n == "W") {
      Expr A = p0("A"), B = p0("B");
      return I(I(A, I(A, B)), I(A, B));
    }
    if (n == "C") {
      Expr A = p0("A"), B = p0("B"), C = p0("C");
      return I(I(A, I(B, C)), I(B, I(A, C)));
    }
    if (n == "B") {
      Expr A = p0("A"), B = p0("B"), C = p0("C");
      return I(I(A, B), I(I(B, C), I(A, C)));
    }
    if (n == "Proj_l") return I(mk_and(p0("A"), p0("B")), p0("A"));
    if (n == "Proj_r") return I(mk_and(p0("A"), p0("B")), p0("B"));
    if (n == "Pair") {
      Expr A = p0("A"), B = p0("B"), C = p0("C");
      return I(I(A, B), I(I(A, C), I(A, mk_and(B, C))));
    }
    if (n == "Inj_l") return I(p0("A"), mk_or(p0("A"), p0("B")));
    if (n == "Inj_r") return I(p0("B"), mk_or(p0("A"), p0("B")));
    if (n == "Case") {
      Expr A = p0("A"), B = p0("B"), C = p0("C");
      return I(I(A, C), I(I(B, C), I(mk_or(A, B), C)));
    }
    if (n == "Contradiction") {
      Expr A = p0("A"), B = p0("B");
      return I(I(A, B), I(I(A, I(B, mk_bot())), I(A, mk_bot())));
    }
    if (n == "EFSQ") return I(I(p0("A"), mk_bot()), I(p0("A"), p0("B")));
    if (n == "T") return mk_top();
    if (n == "TND") {
      if (cfg.intuitionistic) throw KernelError("TND is excluded in intuitionistic mode");
      Expr A = p0("A");
      return mk_or(A, I(A, mk_bot()));
    }
    if (n == "UI" || n == "EI") {
      check_j(cfg.order);
      Sort s = Sort::arith(in.j);
      const Template& A = tmpl("A", {s});
      Expr t = tau(s);
      Var al = meta("alpha", s, A, "a", free_vars(t));
      Expr Aal = apply_template(A, {mk_var(al)});
      Expr At = apply_template(A, {t});
      return n == "UI" ? I(forall_(al, Aal), At) : I(At, exists_(al, Aal));
    }
    if (n == "Refl") return refl_axiom();
    if (n == "Leibniz") {
      const Template& A = tmpl("A", {Sort::arith(0)});
      Var al = meta("alpha", Sort::arith(0), A, "a");
      Var be = meta("beta", Sort::arith(0), A, "b", {al});
      if (al == be) throw SideConditionError("Leibniz: alpha and beta must differ");
      Expr a = mk_var(al), b = mk_var(be);
      return forall_(al, forall_(be, I(eq(a, b), I(apply_template(A, {a}), apply_template(A, {b})))));
    }
    for (const auto& r : robinson_names())
      if (n == r) return robinson_axiom(n);
    if (n == "Ind") {
      const Template& A = tmpl("A", {Sort::arith(0)});
      Var be = meta("beta", Sort::arith(0), A, "b");
      Var al = meta("alpha", Sort::arith(0), A, "a");
      Expr b = mk_var(be);
      return I(apply_template(A, {zero()}),
               I(forall_(be, I(apply_template(A, {b}), apply_template(A, {succ(b)}))),
                 forall_(al, apply_template(A, {mk_var(al)}))));
    }
    if (n == "Comp") {
      check_j(cfg.order - 1);
      int j = in.j;
      const Template& A = tmpl("A", {Sort::arith(j)});
      Var be = meta("beta", Sort::arith(j), A, "b");
      Var al;
      auto it = in.metas.find("alpha");
      if (it != in.metas.end()) {
        al = it->second;
        if (al.sort != Sort::arith(j + 1)) throw SortError("Comp: alpha must have sort " + std::to_string(j + 1));
      } else {
        std::set<Var> avoid = free_vars(A.body);
        avoid.insert(be);
        al = fresh_var("a", Sort::arith(j + 1), avoid);
      }
      Expr Ab = apply_template(A, {mk_var(be)});
      if (occurs_free(al, Ab)) throw SideConditionError("Comp: " + show(al) + " is free in " + print(Ab));
      return exists_(al, forall_(be, iff(dm::in(j, mk_var(be), mk_var(al)), Ab)));
    }
    throw KernelError("unknown schema " + n);
  }
};

}  // namespace

Expr instantiate_schema(const SchemaInstance& inst, const HilbertConfig& cfg) { return Inst{inst, cfg}.run(); }

SchemaInstance schema0(std::string name, std::vector<std::pair<std::string, Expr>> props) {
  SchemaInstance s;
  s.schema = std::move(name);
  for (auto& [k, v] : props) s.props[k] = Template::nullary(std::move(v));
  return s;
}

SchemaInstance schema_ui(int j, Template a, Expr tau) {
  SchemaInstance s;
  s.schema = "UI";
  s.j = j;
  s.props["A"] = std::move(a);
  s.tau = std::move(tau);
  return s;
}

SchemaInstance schema_ei(int j, Template a, Expr tau) {
  SchemaInstance s = schema_ui(j, std::move(a), std::move(tau));
  s.schema = "EI";
  return s;
}

}  // namespace dm
