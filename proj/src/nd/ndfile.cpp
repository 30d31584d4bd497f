#include "dm/files.hpp"
#include "dm/nd.hpp"
#include "dm/syntax.hpp"

namespace dm {

namespace {

SExp A(std::string s) { return SExp::make_atom(std::move(s)); }
SExp Lst(std::vector<SExp> xs) { return SExp::make_list(std::move(xs)); }

SExp pos_sexp(const Position& p) {
  std::vector<SExp> xs;
  for (int k : p) xs.push_back(A(std::to_string(k)));
  return Lst(std::move(xs));
}

Position parse_pos(const SExp& s) {
  if (s.is_atom) throw ParseError("expected a position list", s.line);
  Position p;
  for (const auto& x : s.list) {
    if (!x.is_atom) throw ParseError("bad position", x.line);
    p.push_back(std::stoi(x.atom));
  }
  return p;
}

SExp binder_sexp(Var v) { return Lst({A(name_of(v.name)), A(v.sort.str())}); }

}  // namespace

SExp trace_to_sexp(const Trace& tr, std::size_t k) {
  std::vector<SExp> xs{A("via"), A(std::to_string(k))};
  for (const auto& st : tr.steps) {
    std::vector<SExp> s{A("step"), A(st.dir == Dir::Forward ? "fwd" : "bwd"), pos_sexp(st.pos), A(st.rule)};
    for (const auto& [v, t] : st.sigma) s.push_back(Lst({binder_sexp(v), to_sexp(t)}));
    xs.push_back(Lst(std::move(s)));
  }
  return Lst(std::move(xs));
}

std::pair<std::size_t, Trace> parse_trace(const SExp& s, const Signature& sig) {
  if (!s.head_is("via") || s.size() < 2 || !s[1].is_atom) throw ParseError("(via K step...)", s.line);
  std::size_t k = std::stoul(s[1].atom);
  Trace tr;
  for (std::size_t m = 2; m < s.size(); ++m) {
    const SExp& st = s[m];
    if (!st.head_is("step") || st.size() < 4) throw ParseError("(step fwd|bwd POS RULE BINDING...)", st.line);
    Step step;
    if (st[1].is("fwd"))
      step.dir = Dir::Forward;
    else if (st[1].is("bwd"))
      step.dir = Dir::Backward;
    else
      throw ParseError("step direction must be fwd or bwd", st.line);
    step.pos = parse_pos(st[2]);
    step.rule = st[3].atom;
    for (std::size_t j = 4; j < st.size(); ++j) {
      const SExp& b = st[j];
      if (b.is_atom || b.size() != 2) throw ParseError("binding ((x SORT) TERM)", b.line);
      Var v = parse_binder(b[0]);
      step.sigma[v] = parse_term(sig, b[1], v.sort);
    }
    tr.steps.push_back(std::move(step));
  }
  return {k, std::move(tr)};
}

SExp nd_to_sexp(const NDPtr& p) {
  std::vector<SExp> xs;
  xs.push_back(A(nd_rule_name(p->rule)));
  xs.push_back(to_sexp(p->concl));
  auto kv = [&](const char* k, SExp v) {
    xs.push_back(A(k));
    xs.push_back(std::move(v));
  };
  if (!p->label.empty()) kv(":label", A(p->label));
  if (!p->label2.empty()) kv(":label2", A(p->label2));
  if (!p->name.empty()) kv(":name", A(p->name));
  if (p->a) kv(":A", to_sexp(p->a));
  if (p->b) kv(":B", to_sexp(p->b));
  if (p->q) kv(":Q", to_sexp(p->q));
  if (p->term) kv(":term", to_sexp(p->term));
  switch (p->rule) {
    case NDRule::AllI:
    case NDRule::ExE:
    case NDRule::Ind:
      kv(":eigen", binder_sexp(p->eigen));
      break;
    case NDRule::AndE:
    case NDRule::OrI:
      kv(":side", A(p->side == Side::Left ? "left" : "right"));
      break;
    default:
      break;
  }
  for (std::size_t k = 0; k < p->via.size(); ++k)
    if (p->via[k]) kv(":via", trace_to_sexp(*p->via[k], k));
  for (const auto& q : p->prem) xs.push_back(nd_to_sexp(q));
  return Lst(std::move(xs));
}

NDPtr parse_nd_node(const SExp& s, const Signature& sig) {
  if (s.is_atom || s.size() < 2 || !s[0].is_atom) throw ParseError("expected (RULE CONCLUSION ...)", s.line);
  auto rule = nd_rule_from_name(s[0].atom);
  if (!rule) throw ParseError("unknown inference " + s[0].atom, s.line);
  auto n = std::make_shared<NDNode>();
  n->rule = *rule;
  try {
    n->concl = parse_prop(sig, s[1]);
    std::vector<const SExp*> vias;
    const SExp* term = nullptr;
    for (std::size_t k = 2; k < s.size(); ++k) {
      const SExp& x = s[k];
      if (x.is_atom && !x.atom.empty() && x.atom[0] == ':') {
        if (k + 1 >= s.size()) throw ParseError("keyword " + x.atom + " without a value", x.line);
        const SExp& v = s[++k];
        const std::string& key = x.atom;
        if (key == ":label")
          n->label = v.atom;
        else if (key == ":label2")
          n->label2 = v.atom;
        else if (key == ":name")
          n->name = v.atom;
        else if (key == ":A")
          n->a = parse_prop(sig, v);
        else if (key == ":B")
          n->b = parse_prop(sig, v);
        else if (key == ":Q")
          n->q = *rule == NDRule::Ind ? parse_term(sig, v, Sort::cls()) : parse_prop(sig, v);
        else if (key == ":term")
          term = &v;
        else if (key == ":eigen")
          n->eigen = parse_binder(v);
        else if (key == ":side") {
          if (v.is("left"))
            n->side = Side::Left;
          else if (v.is("right"))
            n->side = Side::Right;
          else
            throw ParseError(":side must be left or right", v.line);
        } else if (key == ":via")
          vias.push_back(&v);
        else
          throw ParseError("unknown keyword " + key, x.line);
      } else {
        n->prem.push_back(parse_nd_node(x, sig));
      }
    }
    if (term) {
      Sort want = Sort::arith(0);
      if (*rule != NDRule::Ind) {
        if (!n->q || !is_binder(n->q)) throw ParseError(":term needs a quantified :Q", term->line);
        want = n->q->sort;
      }
      n->term = parse_term(sig, *term, want);
    }
    for (const SExp* v : vias) {
      auto [k, tr] = parse_trace(*v, sig);
      if (n->via.size() <= k) n->via.resize(k + 1);
      n->via[k] = std::move(tr);
    }
  } catch (const ParseError&) {
    throw;
  } catch (const KernelError& e) {
    throw ParseError(e.what(), s.line);
  }
  return n;
}

NDFile parse_nd_file(const SExp& s, const Signature& base) {
  if (!s.head_is("nd-proof")) throw ParseError("expected (nd-proof ...)", s.line);
  Signature sig = base;
  NDFile f;
  for (std::size_t k = 1; k < s.size(); ++k) {
    const SExp& d = s[k];
    if (d.head_is("signature")) {
      sig.merge(parse_signature(d));
    } else if (d.head_is("axioms")) {
      for (std::size_t m = 1; m < d.size(); ++m) {
        const SExp& a = d[m];
        if (!a.head_is("axiom") || a.size() != 3) throw ParseError("(axiom NAME PROP)", a.line);
        f.axioms.push_back(Axiom{a[1].atom, parse_prop(sig, a[2])});
      }
    } else if (d.head_is("proof")) {
      if (d.size() != 2) throw ParseError("(proof NODE)", d.line);
      f.proof = parse_nd_node(d[1], sig);
    } else {
      throw ParseError("unknown nd-proof entry " + write_sexp(d), d.line);
    }
  }
  if (!f.proof) throw ParseError("nd-proof without (proof ...)", s.line);
  return f;
}

SExp nd_file_to_sexp(const NDFile& f) {
  std::vector<SExp> ax{A("axioms")};
  for (const auto& a : f.axioms) ax.push_back(Lst({A("axiom"), A(a.name), to_sexp(a.prop)}));
  return Lst({A("nd-proof"), Lst(std::move(ax)), Lst({A("proof"), nd_to_sexp(f.proof)})});
}

}  // namespace dm
