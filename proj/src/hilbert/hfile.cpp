#include "dm/files.hpp"
#include "dm/hilbert.hpp"
#include "dm/syntax.hpp"

namespace dm {

namespace {

SExp A(std::string s) { return SExp::make_atom(std::move(s)); }
SExp Lst(std::vector<SExp> xs) { return SExp::make_list(std::move(xs)); }
SExp binder_sexp(Var v) { return Lst({A(name_of(v.name)), A(v.sort.str())}); }

int int_of(const SExp& s) {
  if (!s.is_atom) throw ParseError("expected an integer", s.line);
  try {
    return std::stoi(s.atom);
  } catch (const std::exception&) {
    throw ParseError("expected an integer, got " + s.atom, s.line);
  }
}

}  // namespace

SExp template_to_sexp(const Template& t) {
  if (t.params.empty()) return to_sexp(t.body);
  std::vector<SExp> ps;
  for (const auto& v : t.params) ps.push_back(binder_sexp(v));
  return Lst({A("tmpl"), Lst(std::move(ps)), to_sexp(t.body)});
}

Template parse_template(const Signature& sig, const SExp& s) {
  if (s.head_is("tmpl")) {
    if (s.size() != 3 || s[1].is_atom) throw ParseError("(tmpl ((x SORT)...) PROP)", s.line);
    Template t;
    for (const auto& b : s[1].list) t.params.push_back(parse_binder(b));
    t.body = parse_prop(sig, s[2]);
    return t;
  }
  return Template::nullary(parse_prop(sig, s));
}

HilbertProof parse_hilbert(const SExp& s) {
  if (!s.head_is("hilbert-proof")) throw ParseError("expected (hilbert-proof ...)", s.line);
  HilbertProof p;
  std::vector<const SExp*> lines;
  for (std::size_t k = 1; k < s.size(); ++k) {
    const SExp& d = s[k];
    if (d.head_is("order")) {
      p.cfg.order = int_of(d[1]);
      if (p.cfg.order < 1) throw ParseError("order must be at least 1", d.line);
    } else if (d.is("intuitionistic")) {
      p.cfg.intuitionistic = true;
    } else if (d.head_is("axioms")) {
      lines.push_back(&d);
    } else if (d.head_is("line")) {
      lines.push_back(&d);
    } else {
      throw ParseError("unknown hilbert-proof entry " + write_sexp(d), d.line);
    }
  }
  Signature sig = zi_signature(p.cfg.order);
  for (const SExp* dp : lines) {
    const SExp& d = *dp;
    try {
      if (d.head_is("axioms")) {
        for (std::size_t m = 1; m < d.size(); ++m) {
          const SExp& a = d[m];
          if (!a.head_is("axiom") || a.size() != 3) throw ParseError("(axiom NAME PROP)", a.line);
          p.axioms.push_back(Axiom{a[1].atom, parse_prop(sig, a[2])});
        }
        continue;
      }
      if (d.size() != 4) throw ParseError("(line K JUSTIFICATION PROP)", d.line);
      int num = int_of(d[1]);
      if (num != static_cast<int>(p.lines.size()) + 1)
        throw ParseError("line numbers must be consecutive from 1", d.line);
      HLine l;
      const SExp& j = d[2];
      if (j.is_atom || j.list.empty()) throw ParseError("bad justification", j.line);
      if (j.head_is("schema")) {
        l.kind = HKind::Schema;
        l.inst.schema = j[1].atom;
        std::size_t k = 2;
        if (is_sorted_schema(l.inst.schema)) l.inst.j = int_of(j[k++]);
        for (; k < j.size(); ++k) {
          const SExp& key = j[k];
          if (!key.is_atom || key.atom.empty() || key.atom[0] != ':' || k + 1 >= j.size())
            throw ParseError("expected :KEY VALUE in schema instance", key.line);
          const SExp& val = j[++k];
          std::string name = key.atom.substr(1);
          if (name == "tau") {
            Sort want = Sort::arith(l.inst.j);
            l.inst.tau = parse_term(sig, val, want);
          } else if (name == "alpha" || name == "beta") {
            l.inst.metas[name] = parse_binder(val);
          } else {
            l.inst.props[name] = parse_template(sig, val);
          }
        }
      } else if (j.head_is("mp")) {
        l.kind = HKind::MP;
        l.ref1 = int_of(j[1]);
        l.ref2 = int_of(j[2]);
      } else if (j.head_is("gen") || j.head_is("part")) {
        l.kind = j.head_is("gen") ? HKind::Gen : HKind::Part;
        l.ref1 = int_of(j[1]);
        l.j = int_of(j[2]);
        l.eigen = parse_binder(j[3]);
      } else if (j.head_is("axiom")) {
        l.kind = HKind::Axiom;
        l.axiom = j[1].atom;
      } else {
        throw ParseError("unknown justification " + write_sexp(j), j.line);
      }
      l.prop = parse_prop(sig, d[3]);
      p.lines.push_back(std::move(l));
    } catch (const ParseError&) {
      throw;
    } catch (const KernelError& e) {
      throw ParseError(e.what(), d.line);
    }
  }
  return p;
}

SExp hilbert_to_sexp(const HilbertProof& p) {
  std::vector<SExp> xs{A("hilbert-proof"), Lst({A("order"), A(std::to_string(p.cfg.order))})};
  if (p.cfg.intuitionistic) xs.push_back(A("intuitionistic"));
  if (!p.axioms.empty()) {
    std::vector<SExp> ax{A("axioms")};
    for (const auto& a : p.axioms) ax.push_back(Lst({A("axiom"), A(a.name), to_sexp(a.prop)}));
    xs.push_back(Lst(std::move(ax)));
  }
  for (std::size_t k = 0; k < p.lines.size(); ++k) {
    const HLine& l = p.lines[k];
    SExp just;
    switch (l.kind) {
      case HKind::Schema: {
        std::vector<SExp> js{A("schema"), A(l.inst.schema)};
        if (is_sorted_schema(l.inst.schema)) js.push_back(A(std::to_string(l.inst.j)));
        for (const auto& [name, t] : l.inst.props) {
          js.push_back(A(":" + name));
          js.push_back(template_to_sexp(t));
        }
        if (l.inst.tau) {
          js.push_back(A(":tau"));
          js.push_back(to_sexp(*l.inst.tau));
        }
        for (const auto& [name, v] : l.inst.metas) {
          js.push_back(A(":" + name));
          js.push_back(binder_sexp(v));
        }
        just = Lst(std::move(js));
        break;
      }
      case HKind::MP:
        just = Lst({A("mp"), A(std::to_string(l.ref1)), A(std::to_string(l.ref2))});
        break;
      case HKind::Gen:
      case HKind::Part:
        just = Lst({A(l.kind == HKind::Gen ? "gen" : "part"), A(std::to_string(l.ref1)), A(std::to_string(l.j)),
                    binder_sexp(l.eigen)});
        break;
      case HKind::Axiom:
        just = Lst({A("axiom"), A(l.axiom)});
        break;
    }
    xs.push_back(Lst({A("line"), A(std::to_string(k + 1)), std::move(just), to_sexp(l.prop)}));
  }
  return Lst(std::move(xs));
}

}  // namespace dm
