#include "dm/files.hpp"

#include <filesystem>

#include "dm/syntax.hpp"

namespace dm {

namespace {

SExp A(std::string s) { return SExp::make_atom(std::move(s)); }
SExp Lst(std::vector<SExp> xs) { return SExp::make_list(std::move(xs)); }

Sort sort_of(const SExp& s) {
  if (!s.is_atom) throw ParseError("expected a sort", s.line);
  auto so = Sort::parse(s.atom);
  if (!so) throw ParseError("bad sort " + s.atom, s.line);
  return *so;
}

std::vector<Sort> sorts_of(const SExp& s) {
  if (s.is_atom) throw ParseError("expected a sort list", s.line);
  std::vector<Sort> out;
  for (const auto& x : s.list) out.push_back(sort_of(x));
  return out;
}

SExp sorts_sexp(const std::vector<Sort>& ss) {
  std::vector<SExp> xs;
  for (auto s : ss) xs.push_back(A(s.str()));
  return Lst(std::move(xs));
}

int int_of(const SExp& s) {
  if (!s.is_atom) throw ParseError("expected an integer", s.line);
  try {
    return std::stoi(s.atom);
  } catch (const std::exception&) {
    throw ParseError("expected an integer, got " + s.atom, s.line);
  }
}

}  // namespace

Signature parse_signature(const SExp& s) {
  if (!s.head_is("signature")) throw ParseError("expected (signature ...)", s.line);
  Signature sig;
  for (std::size_t k = 1; k < s.size(); ++k) {
    const SExp& d = s[k];
    if (d.head_is("base")) {
      if (d.size() < 2) throw ParseError("(base KIND ...)", d.line);
      if (d[1].is("zi")) {
        sig.merge(zi_signature(int_of(d[2])));
      } else if (d[1].is("classes")) {
        bool hha = d.size() > 3 && d[3].is("hha");
        sig.merge(classes_signature(int_of(d[2]), hha));
      } else if (d[1].is("add")) {
        sig.merge(add_signature());
      } else {
        throw ParseError("unknown base signature " + write_sexp(d[1]), d.line);
      }
    } else if (d.head_is("sort")) {
      sig.add_sort(sort_of(d[1]));
    } else if (d.head_is("fun")) {
      if (d.size() != 4) throw ParseError("(fun NAME (ARGS) RESULT)", d.line);
      sig.add_fun(d[1].atom, sorts_of(d[2]), sort_of(d[3]));
    } else if (d.head_is("pred")) {
      if (d.size() != 3) throw ParseError("(pred NAME (ARGS))", d.line);
      sig.add_pred(d[1].atom, sorts_of(d[2]));
    } else {
      throw ParseError("unknown signature entry " + write_sexp(d), d.line);
    }
  }
  return sig;
}

SExp signature_to_sexp(const Signature& sig) {
  std::vector<SExp> xs{A("signature")};
  for (auto s : sig.sorts()) xs.push_back(Lst({A("sort"), A(s.str())}));
  for (const auto& f : sig.funs()) xs.push_back(Lst({A("fun"), A(name_of(f.name)), sorts_sexp(f.args), A(f.result.str())}));
  for (const auto& p : sig.preds()) xs.push_back(Lst({A("pred"), A(name_of(p.name)), sorts_sexp(p.args)}));
  return Lst(std::move(xs));
}

RewriteSystem empty_system(const Signature& sig) {
  RewriteSystem R("empty", sig);
  R.terminating = true;
  R.confluent = true;
  R.fuel_c0 = 1;
  R.fuel_k = 1;
  return R;
}

std::optional<RewriteSystem> builtin_system(std::string_view id, int i) {
  if (id == "add") return add_system();
  if (id == "ws") return ws_system(i);
  if (id == "ho") return ho_system(i);
  if (id == "hha") return hha_system(i);
  if (id == "empty") return empty_system(classes_signature(i, true));
  return std::nullopt;
}

RewriteSystem parse_system(const SExp& s) {
  if (!s.head_is("system")) throw ParseError("expected (system ...)", s.line);
  if (s.size() == 2 && s[1].head_is("builtin")) {
    const SExp& b = s[1];
    int i = b.size() > 2 ? int_of(b[2]) : 1;
    auto R = builtin_system(b[1].atom, i);
    if (!R) throw ParseError("unknown builtin system " + b[1].atom, b.line);
    return *R;
  }
  if (s.size() < 3 || !s[1].is_atom) throw ParseError("(system NAME SIGNATURE ...)", s.line);
  RewriteSystem R(s[1].atom, parse_signature(s[2]));
  for (std::size_t k = 3; k < s.size(); ++k) {
    const SExp& d = s[k];
    if (d.head_is("flags")) {
      for (std::size_t m = 1; m < d.size(); ++m) {
        if (d[m].is("terminating"))
          R.terminating = true;
        else if (d[m].is("confluent"))
          R.confluent = true;
        else
          throw ParseError("unknown flag " + write_sexp(d[m]), d.line);
      }
    } else if (d.head_is("fuel")) {
      R.fuel_c0 = std::stod(d[1].atom);
      R.fuel_k = std::stod(d[2].atom);
    } else if (d.head_is("rules")) {
      for (std::size_t m = 1; m < d.size(); ++m) {
        const SExp& r = d[m];
        if (!r.head_is("rule") || r.size() != 4) throw ParseError("(rule NAME LHS RHS)", r.line);
        try {
          Expr lhs = parse_expr(R.sig(), r[2]);
          Expr rhs = is_term(lhs) ? parse_term(R.sig(), r[3], lhs->sort) : parse_prop(R.sig(), r[3]);
          R.add_rule(r[1].atom, lhs, rhs);
        } catch (const ParseError&) {
          throw;
        } catch (const KernelError& e) {
          throw ParseError(e.what(), r.line);
        }
      }
    } else {
      throw ParseError("unknown system entry " + write_sexp(d), d.line);
    }
  }
  return R;
}

SExp system_to_sexp(const RewriteSystem& R) {
  std::vector<SExp> xs{A("system"), A(R.name()), signature_to_sexp(R.sig())};
  std::vector<SExp> fl{A("flags")};
  if (R.terminating) fl.push_back(A("terminating"));
  if (R.confluent) fl.push_back(A("confluent"));
  xs.push_back(Lst(std::move(fl)));
  xs.push_back(Lst({A("fuel"), A(std::to_string(R.fuel_c0)), A(std::to_string(R.fuel_k))}));
  std::vector<SExp> rs{A("rules")};
  for (const auto& r : R.rules()) rs.push_back(Lst({A("rule"), A(r.name), to_sexp(r.lhs), to_sexp(r.rhs)}));
  xs.push_back(Lst(std::move(rs)));
  return Lst(std::move(xs));
}

RewriteSystem load_system(const std::string& spec, int default_order) {
  std::string id = spec;
  int i = default_order;
  if (auto c = spec.find(':'); c != std::string::npos) {
    id = spec.substr(0, c);
    i = std::stoi(spec.substr(c + 1));
  }
  if (!std::filesystem::exists(spec)) {
    if (auto R = builtin_system(id, i)) return *R;
  }
  return parse_system(read_sexp_file(spec));
}

Presentation parse_presentation(const SExp& s) {
  if (!s.head_is("axioms") || s.size() < 3) throw ParseError("(axioms NAME SIGNATURE (axiom ...)...)", s.line);
  Presentation p;
  p.name = s[1].atom;
  p.sig = parse_signature(s[2]);
  for (std::size_t k = 3; k < s.size(); ++k) {
    const SExp& a = s[k];
    if (!a.head_is("axiom") || a.size() != 3) throw ParseError("(axiom NAME PROP)", a.line);
    p.add(a[1].atom, parse_prop(p.sig, a[2]));
  }
  return p;
}

SExp presentation_to_sexp(const Presentation& p) {
  std::vector<SExp> xs{A("axioms"), A(p.name), signature_to_sexp(p.sig)};
  for (const auto& a : p.axioms) xs.push_back(Lst({A("axiom"), A(a.name), to_sexp(a.prop)}));
  return Lst(std::move(xs));
}

}  // namespace dm
