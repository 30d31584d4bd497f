#include <algorithm>
#include <map>

#include "common.hpp"
#include "dm/files.hpp"
#include "dm/syntax.hpp"

namespace dm {

namespace {

using tr::Names;

Expr arg(const Expr& e, std::size_t k, Kind want, std::string_view schema) {
  if (e->kind != want || k >= e->args.size())
    throw TranslationError(std::string(schema) + ": instance has an unexpected shape: " + print(e));
  return e->args[k];
}

// Natural deduction template of one propositional or quantifier schema.
NDPtr build_template(std::string_view s, const Expr& P, const Expr& tau, Names& nm) {
  using namespace nd;
  auto L = [&](const Expr& e, std::size_t k) { return arg(e, k, Kind::Imp, s); };
  auto R = [&](const Expr& e) { return arg(e, 1, Kind::Imp, s); };
  if (s == "I") {
    std::string l = nm.label();
    return imp_i(P, l, L(P, 0), hyp(l, L(P, 0)));
  }
  if (s == "K") {
    Expr A = L(P, 0), B = L(R(P), 0);
    std::string la = nm.label(), lb = nm.label();
    return imp_i(P, la, A, imp_i(R(P), lb, B, hyp(la, A)));
  }
  if (s == "W") {
    Expr F = L(P, 0), A = L(F, 0), AB = R(F);
    std::string lf = nm.label(), la = nm.label();
    NDPtr ha = hyp(la, A);
    return imp_i(P, lf, F, imp_i(R(P), la, A, imp_e(R(AB), ha, imp_e(AB, ha, hyp(lf, F)))));
  }
  if (s == "C") {
    Expr F = L(P, 0), A = L(F, 0), B = L(R(F), 0), C = R(R(F));
    std::string lf = nm.label(), lb = nm.label(), la = nm.label();
    return imp_i(P, lf, F,
                 imp_i(R(P), lb, B, imp_i(R(R(P)), la, A, imp_e(C, hyp(lb, B), imp_e(R(F), hyp(la, A), hyp(lf, F))))));
  }
  if (s == "B") {
    Expr F = L(P, 0), G = L(R(P), 0), A = L(F, 0), C = R(G);
    std::string lf = nm.label(), lg = nm.label(), la = nm.label();
    return imp_i(P, lf, F,
                 imp_i(R(P), lg, G, imp_i(R(R(P)), la, A, imp_e(C, imp_e(R(F), hyp(la, A), hyp(lf, F)), hyp(lg, G)))));
  }
  if (s == "Proj_l" || s == "Proj_r") {
    Expr H = L(P, 0);
    arg(H, 1, Kind::And, s);
    std::string l = nm.label();
    return imp_i(P, l, H, and_e(s == "Proj_l" ? Side::Left : Side::Right, hyp(l, H)));
  }
  if (s == "Pair") {
    Expr F = L(P, 0), G = L(R(P), 0), A = L(F, 0);
    std::string lf = nm.label(), lg = nm.label(), la = nm.label();
    NDPtr ha = hyp(la, A);
    return imp_i(P, lf, F,
                 imp_i(R(P), lg, G, imp_i(R(R(P)), la, A, and_i(imp_e(ha, hyp(lf, F)), imp_e(ha, hyp(lg, G))))));
  }
  if (s == "Inj_l" || s == "Inj_r") {
    Expr A = L(P, 0), D = R(P);
    bool left = s == "Inj_l";
    Expr other = arg(D, left ? 1 : 0, Kind::Or, s);
    std::string l = nm.label();
    return imp_i(P, l, A, or_i(D, left ? Side::Left : Side::Right, other, hyp(l, A)));
  }
  if (s == "Case") {
    Expr F = L(P, 0), G = L(R(P), 0), D = L(R(R(P)), 0), C = R(R(R(P)));
    Expr A = arg(D, 0, Kind::Or, s), B = arg(D, 1, Kind::Or, s);
    std::string lf = nm.label(), lg = nm.label(), ld = nm.label(), la = nm.label(), lb = nm.label();
    NDPtr body = or_e(C, hyp(ld, D), la, A, imp_e(hyp(la, A), hyp(lf, F)), lb, B, imp_e(hyp(lb, B), hyp(lg, G)));
    return imp_i(P, lf, F, imp_i(R(P), lg, G, imp_i(R(R(P)), ld, D, body)));
  }
  if (s == "Contradiction") {
    Expr F = L(P, 0), G = L(R(P), 0), A = L(F, 0);
    std::string lf = nm.label(), lg = nm.label(), la = nm.label();
    NDPtr ha = hyp(la, A);
    NDPtr body = imp_e(mk_bot(), imp_e(ha, hyp(lf, F)), imp_e(ha, hyp(lg, G)));
    return imp_i(P, lf, F, imp_i(R(P), lg, G, imp_i(R(R(P)), la, A, body)));
  }
  if (s == "EFSQ") {
    Expr F = L(P, 0), A = L(F, 0), B = R(R(P));
    std::string lf = nm.label(), la = nm.label();
    return imp_i(P, lf, F, imp_i(R(P), la, A, bot_e(B, imp_e(hyp(la, A), hyp(lf, F)))));
  }
  if (s == "T") return top_i(P);
  if (s == "TND") {
    Expr A = arg(P, 0, Kind::Or, s);
    return tnd(P, A);
  }
  if (s == "UI" || s == "EI") {
    if (!tau) throw TranslationError(std::string(s) + ": the template needs the instance term");
    std::string l = nm.label();
    if (s == "UI") {
      Expr Q = L(P, 0);
      arg(Q, 0, Kind::Forall, s);
      return imp_i(P, l, Q, all_e(R(P), Q, tau, hyp(l, Q)));
    }
    Expr Q = R(P);
    arg(Q, 0, Kind::Exists, s);
    return imp_i(P, l, L(P, 0), ex_i(Q, Q, tau, hyp(l, L(P, 0))));
  }
  throw TranslationError("no natural deduction template for schema " + std::string(s));
}

std::string theory_base(const SchemaInstance& in) {
  if (in.schema == "Comp") return "Comp" + std::to_string(in.j);
  return in.schema;
}

constexpr char kTheoryMark = '#';

class H2ND {
 public:
  H2ND(const HilbertProof& hp, bool fz) : hp_(hp), fz_(fz), nm_("h") {
    for (const auto& l : hp.lines) nm_.avoid(l.prop);
  }

  NDTranslation run() {
    HVerdict v = check_hilbert(hp_);
    if (!v) throw TranslationError("input does not check at line " + std::to_string(v.line) + ": " + v.error);
    std::size_t n = hp_.lines.size();
    rep_.input_length = n;
    uses_.assign(n + 1, 0);
    std::vector<char> live(n + 1, 0);
    live[n] = 1;
    for (std::size_t k = n; k >= 1; --k) {
      if (!live[k]) continue;
      const HLine& l = hp_.lines[k - 1];
      for (int r : refs(l)) {
        live[r] = 1;
        ++uses_[r];
      }
      if (l.kind == HKind::Gen || l.kind == HKind::Part) eig_.insert(l.eigen);
    }
    close_.assign(n + 1, {});
    letprop_.assign(n + 1, nullptr);
    letlabel_.assign(n + 1, "");
    for (std::size_t k = 1; k < n; ++k) {
      if (!live[k] || uses_[k] < 2) continue;
      const Expr& a = hp_.lines[k - 1].prop;
      for (const Var& x : free_vars(a))
        if (eig_.count(x)) close_[k].push_back(x);
      Expr q = a;
      for (std::size_t m = close_[k].size(); m-- > 0;) q = forall_(close_[k][m], q);
      letprop_[k] = q;
      letlabel_[k] = "L" + std::to_string(k);
    }
    NDPtr body = line(static_cast<int>(n));
    for (std::size_t k = n - 1; k >= 1; --k) {
      if (letlabel_[k].empty()) continue;
      NDPtr d = line(static_cast<int>(k));
      for (std::size_t m = close_[k].size(); m-- > 0;) {
        Var x = close_[k][m];
        Expr q = forall_(x, d->concl);
        d = nd::all_i(q, q, x, d);
      }
      body = tr::let_cut(letlabel_[k], d, body);
      rep_.fragments["let"].note(2 + close_[k].size());
    }
    NDTranslation out;
    out.proof = name_leaves(body);
    out.assumptions = assumption_leaves(out.proof);
    rep_.output_length = nd_length(out.proof);
    out.report = rep_;
    return out;
  }

 private:
  static std::vector<int> refs(const HLine& l) {
    switch (l.kind) {
      case HKind::MP:
        return {l.ref1, l.ref2};
      case HKind::Gen:
      case HKind::Part:
        return {l.ref1};
      default:
        return {};
    }
  }

  NDPtr ref(int m) {
    if (!letlabel_[m].empty()) {
      NDPtr d = nd::hyp(letlabel_[m], letprop_[m]);
      for (const Var& x : close_[m]) d = nd::all_e(mk_var(x), d);
      rep_.fragments["let-use"].note(close_[m].size());
      return d;
    }
    return line(m);
  }

  NDPtr line(int k) {
    const HLine& l = hp_.lines[k - 1];
    switch (l.kind) {
      case HKind::Schema: {
        const std::string& s = l.inst.schema;
        if (is_theory_schema(s)) {
          if (fz_ && (s == "Leibniz" || s == "Ind" || s == "Comp")) {
            const Template& a = l.inst.props.at("A");
            NDPtr d = s == "Leibniz" ? tr::ho_leibniz(a, l.prop)
                      : s == "Ind"   ? tr::ho_ind(a, l.prop)
                                     : tr::comp_fragment(a, l.inst.j, l.prop);
            rep_.fragments[s].note(nd_length(d));
            return d;
          }
          NDPtr d = tr::closed_leaf(kTheoryMark + theory_base(l.inst), l.prop);
          rep_.fragments[s].note(nd_length(d));
          return d;
        }
        NDPtr d = build_template(s, l.prop, l.inst.tau ? *l.inst.tau : nullptr, nm_);
        rep_.fragments[s].note(nd_length(d));
        return d;
      }
      case HKind::Axiom: {
        NDPtr d = tr::closed_leaf(l.axiom, l.prop);
        rep_.fragments["axiom"].note(nd_length(d));
        return d;
      }
      case HKind::MP:
        rep_.fragments["MP"].note(1);
        return nd::imp_e(l.prop, ref(l.ref1), ref(l.ref2));
      case HKind::Gen: {
        NDPtr d = ref(l.ref1);
        Expr A = l.prop->args[0], Q = l.prop->args[1];
        std::string a = nm_.label();
        NDPtr body = nd::imp_e(open_with(Q, l.eigen), nd::hyp(a, A), d);
        rep_.fragments["Gen"].note(3);
        return nd::imp_i(l.prop, a, A, nd::all_i(Q, Q, l.eigen, body));
      }
      case HKind::Part: {
        NDPtr d = ref(l.ref1);
        Expr Q = l.prop->args[0], A = l.prop->args[1];
        std::string i = nm_.label(), ii = nm_.label();
        NDPtr minor = nd::imp_e(A, nd::hyp(ii, open_with(Q, l.eigen)), d);
        rep_.fragments["Part"].note(3);
        return nd::imp_i(l.prop, i, Q, nd::ex_e(A, Q, l.eigen, ii, nd::hyp(i, Q), minor));
      }
    }
    throw TranslationError("unknown line kind");
  }

  // Theory leaves get their schema name, numbered when one schema has
  // several distinct instances.
  NDPtr name_leaves(const NDPtr& p) {
    std::map<std::string, std::vector<Expr>> seen;
    tr::map_leaf_names(p, [&](const std::string& n, const Expr& e) {
      if (n.empty() || n[0] != kTheoryMark) return n;
      auto& v = seen[n.substr(1)];
      if (std::none_of(v.begin(), v.end(), [&](const Expr& x) { return alpha_equal(x, e); })) v.push_back(e);
      return n;
    });
    return tr::map_leaf_names(p, [&](const std::string& n, const Expr& e) {
      if (n.empty() || n[0] != kTheoryMark) return n;
      std::string base = n.substr(1);
      const auto& v = seen[base];
      if (v.size() == 1) return base;
      for (std::size_t k = 0; k < v.size(); ++k)
        if (alpha_equal(v[k], e)) return base + "." + std::to_string(k + 1);
      return base;
    });
  }

  const HilbertProof& hp_;
  bool fz_;
  Names nm_;
  std::vector<int> uses_;
  std::set<Var> eig_;
  std::vector<std::vector<Var>> close_;
  std::vector<Expr> letprop_;
  std::vector<std::string> letlabel_;
  TranslationReport rep_;
};

}  // namespace

std::size_t gentzen_template_length(std::string_view s) {
  static const std::map<std::string, std::size_t, std::less<>> table = {
      {"I", 1},    {"K", 2},      {"W", 4},    {"C", 5},    {"B", 5},    {"Proj_l", 2},        {"Proj_r", 2},
      {"Pair", 6}, {"Inj_l", 2},  {"Inj_r", 2}, {"Case", 6}, {"EFSQ", 4}, {"Contradiction", 6}, {"T", 1},
      {"TND", 1},  {"UI", 2},     {"EI", 2}};
  auto it = table.find(s);
  if (it != table.end()) return it->second;
  if (is_theory_schema(s)) return 0;
  throw TranslationError("unknown schema " + std::string(s));
}

NDPtr gentzen_template(std::string_view schema, const Expr& instance, const Expr& tau) {
  Names nm("h");
  return build_template(schema, instance, tau, nm);
}

NDTranslation hilbert_to_nd(const HilbertProof& p) {
  NDTranslation t = H2ND(p, false).run();
  Verdict v = check_nd(t.proof, t.assumptions, empty_system(zi_signature(p.cfg.order)));
  if (!v) throw TranslationError("translated proof fails to check at " + v.where + ": " + v.error);
  return t;
}

NDTranslation zi_hilbert_to_fz_modulo(const HilbertProof& p) {
  NDTranslation t = H2ND(p, true).run();
  int i = class_level(p.cfg.order);
  Verdict v = check_nd(t.proof, t.assumptions, ho_system(i));
  if (!v) throw TranslationError("translated proof fails to check at " + v.where + ": " + v.error);
  return t;
}

}  // namespace dm
