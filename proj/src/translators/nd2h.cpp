#include <algorithm>
#include <map>
#include <unordered_map>

#include "common.hpp"
#include "dm/files.hpp"
#include "dm/syntax.hpp"

namespace dm {

namespace {

// Intermediate tree of Hilbert inferences; open hypotheses are leaves
// until T_A abstracts them away.
enum class HK { Schema, MP, Gen, Part, Axiom, Hyp };

struct HT;
using HP = std::shared_ptr<const HT>;

struct HT {
  HK k = HK::Schema;
  SchemaInstance inst;
  Expr prop;
  HP a, b;  // MP: minor, major; Gen/Part: premise
  Var eigen;
  std::string name;  // axiom name or hypothesis label
};

class Builder {
 public:
  Builder(HilbertConfig cfg, const std::vector<Axiom>& axioms) : cfg_(cfg) {
    for (const auto& a : axioms) axioms_[a.name] = a.prop;
  }

  TranslationReport rep;

  HP schema(SchemaInstance in) {
    auto h = std::make_shared<HT>();
    h->prop = instantiate_schema(in, cfg_);
    h->inst = std::move(in);
    return h;
  }
  HP s0(const char* n, std::vector<std::pair<std::string, Expr>> ps = {}) { return schema(schema0(n, std::move(ps))); }
  HP I(Expr a) { return s0("I", {{"A", a}}); }
  HP K(Expr a, Expr b) { return s0("K", {{"A", a}, {"B", b}}); }
  HP W(Expr a, Expr b) { return s0("W", {{"A", a}, {"B", b}}); }
  HP C(Expr a, Expr b, Expr c) { return s0("C", {{"A", a}, {"B", b}, {"C", c}}); }
  HP B(Expr a, Expr b, Expr c) { return s0("B", {{"A", a}, {"B", b}, {"C", c}}); }
  HP Pair(Expr a, Expr b, Expr c) { return s0("Pair", {{"A", a}, {"B", b}, {"C", c}}); }
  HP Case(Expr a, Expr b, Expr c) { return s0("Case", {{"A", a}, {"B", b}, {"C", c}}); }
  HP EFSQ(Expr a, Expr b) { return s0("EFSQ", {{"A", a}, {"B", b}}); }

  HP mp(HP minor, HP major) {
    const Expr& ab = major->prop;
    if (ab->kind != Kind::Imp || !alpha_equal(ab->args[0], minor->prop))
      throw TranslationError("internal: MP mismatch between " + print(minor->prop) + " and " + print(ab));
    auto h = std::make_shared<HT>();
    h->k = HK::MP;
    h->a = std::move(minor);
    h->b = std::move(major);
    h->prop = ab->args[1];
    return h;
  }
  HP gen(HP prem, Var y) {
    auto h = std::make_shared<HT>();
    h->k = HK::Gen;
    h->prop = mk_imp(prem->prop->args[0], forall_(y, prem->prop->args[1]));
    h->a = std::move(prem);
    h->eigen = y;
    return h;
  }
  HP part(HP prem, Var y) {
    auto h = std::make_shared<HT>();
    h->k = HK::Part;
    h->prop = mk_imp(exists_(y, prem->prop->args[0]), prem->prop->args[1]);
    h->a = std::move(prem);
    h->eigen = y;
    return h;
  }
  HP axiom(const std::string& n, Expr p) {
    auto it = axioms_.find(n);
    if (it == axioms_.end()) throw TranslationError("unknown assumption " + n);
    auto h = std::make_shared<HT>();
    h->k = HK::Axiom;
    h->name = n;
    h->prop = std::move(p);
    return h;
  }
  HP hyp(const std::string& l, Expr p) {
    auto h = std::make_shared<HT>();
    h->k = HK::Hyp;
    h->name = l;
    h->prop = std::move(p);
    return h;
  }

  // (A => B => C) => (A /\ B) => C
  HP varpi1(const Expr& A, const Expr& Bp, const Expr& Cp) {
    Expr X = mk_and(A, Bp);
    HP first = mp(s0("Proj_l", {{"A", A}, {"B", Bp}}), B(X, A, mk_imp(Bp, Cp)));  // F => X => B => C
    HP g1 = C(X, Bp, Cp);                                                            // XBC => B => X => C
    HP g2 = mp(s0("Proj_r", {{"A", A}, {"B", Bp}}), B(X, Bp, mk_imp(X, Cp)));        // (B => X => C) => X => X => C
    HP g3 = W(X, Cp);
    HP h1 = compose(g1, g2);
    HP h2 = compose(h1, g3);
    return compose(first, h2);
  }

  // ((A /\ B) => C) => A => B => C
  HP varpi2(const Expr& A, const Expr& Bp, const Expr& Cp) {
    Expr X = mk_and(A, Bp);
    Expr BB = mk_imp(Bp, Bp);
    Expr BX = mk_imp(Bp, X);
    HP k = K(A, Bp);
    HP pair = Pair(Bp, A, Bp);
    HP t = mp(pair, mp(k, B(A, mk_imp(Bp, A), mk_imp(BB, BX))));  // A => BB => BX
    HP p0 = mp(I(Bp), mp(t, C(A, BB, BX)));                        // A => B => X
    Expr G = mk_imp(X, Cp);
    Expr BC = mk_imp(Bp, Cp);
    HP m = mp(B(Bp, X, Cp), C(BX, G, BC));                         // G => BX => BC
    HP n = mp(p0, B(A, BX, BC));                                    // (BX => BC) => A => BC
    return compose(m, n);
  }

  // P => Q and Q => R give P => R
  HP compose(const HP& pq, const HP& qr) {
    const Expr& P = pq->prop->args[0];
    const Expr& Q = pq->prop->args[1];
    const Expr& R = qr->prop->args[1];
    return mp(qr, mp(pq, B(P, Q, R)));
  }

  std::size_t count(const HP& h) {
    std::unordered_map<const HT*, bool> seen;
    return count(h, seen);
  }

  HilbertProof linearize(const HP& root, const std::vector<Axiom>& axioms) {
    HilbertBuilder hb(cfg_);
    hb.proof().axioms = axioms;
    std::unordered_map<const HT*, int> at;
    emit(root, hb, at);
    return hb.take();
  }

  bool uses(const HP& h, const std::string& l) {
    auto& memo = huse_[l];
    auto it = memo.find(h.get());
    if (it != memo.end()) return it->second;
    bool r = false;
    if (h->k == HK::Hyp) r = h->name == l;
    else if (h->k == HK::MP) r = uses(h->a, l) || uses(h->b, l);
    else if (h->k == HK::Gen || h->k == HK::Part) r = uses(h->a, l);
    memo[h.get()] = r;
    return r;
  }

  // T_A on the intermediate tree
  HP abs(const HP& h, const std::string& l, const Expr& A) {
    if (!uses(h, l)) {
      rep.fragments["unused"].note(2);
      return mp(h, K(h->prop, A));
    }
    switch (h->k) {
      case HK::Hyp:
        rep.fragments["hyp"].note(1);
        return I(A);
      case HK::MP: {
        const Expr& Bp = h->a->prop;
        const Expr& Cp = h->prop;
        HP x = abs(h->b, l, A);
        HP y = abs(h->a, l, A);
        rep.fragments["T_A mp"].note(7);
        return mp(mp(mp(x, C(A, Bp, Cp)), mp(y, B(A, Bp, mk_imp(A, Cp)))), W(A, Cp));
      }
      case HK::Gen: {
        const Expr& prem = h->a->prop;
        HP x = abs(h->a, l, A);
        HP m1 = mp(x, varpi1(A, prem->args[0], prem->args[1]));
        HP g = gen(m1, h->eigen);
        const Expr& all = g->prop->args[1];
        rep.fragments["T_A gen"].note(3 + 34);
        return mp(g, varpi2(A, prem->args[0], all));
      }
      case HK::Part: {
        const Expr& prem = h->a->prop;
        const Expr& Bb = prem->args[0];
        const Expr& Cp = prem->args[1];
        HP x = abs(h->a, l, A);
        HP m1 = mp(x, C(A, Bb, Cp));
        HP p = part(m1, h->eigen);
        rep.fragments["T_A part"].note(5);
        return mp(p, C(p->prop->args[0], A, Cp));
      }
      default:
        throw TranslationError("internal: abstraction reached a closed leaf");
    }
  }

 private:
  std::size_t count(const HP& h, std::unordered_map<const HT*, bool>& seen) {
    if (!seen.emplace(h.get(), true).second) return 0;
    std::size_t n = 1;
    if (h->a) n += count(h->a, seen);
    if (h->b) n += count(h->b, seen);
    return n;
  }

  int emit(const HP& h, HilbertBuilder& hb, std::unordered_map<const HT*, int>& at) {
    auto it = at.find(h.get());
    if (it != at.end()) return it->second;
    int k = 0;
    switch (h->k) {
      case HK::Schema: {
        HLine l;
        l.kind = HKind::Schema;
        l.inst = h->inst;
        l.prop = h->prop;
        hb.proof().lines.push_back(std::move(l));
        k = hb.last();
        break;
      }
      case HK::Axiom: {
        HLine l;
        l.kind = HKind::Axiom;
        l.axiom = h->name;
        l.prop = h->prop;
        hb.proof().lines.push_back(std::move(l));
        k = hb.last();
        break;
      }
      case HK::MP: {
        int a = emit(h->a, hb, at);
        int b = emit(h->b, hb, at);
        HLine l;
        l.kind = HKind::MP;
        l.ref1 = a;
        l.ref2 = b;
        l.prop = h->prop;
        hb.proof().lines.push_back(std::move(l));
        k = hb.last();
        break;
      }
      case HK::Gen:
      case HK::Part: {
        int a = emit(h->a, hb, at);
        HLine l;
        l.kind = h->k == HK::Gen ? HKind::Gen : HKind::Part;
        l.ref1 = a;
        l.j = h->eigen.sort.level();
        l.eigen = h->eigen;
        l.prop = h->prop;
        hb.proof().lines.push_back(std::move(l));
        k = hb.last();
        break;
      }
      case HK::Hyp:
        throw TranslationError("hypothesis [" + h->name + "] is still open");
    }
    at[h.get()] = k;
    return k;
  }

  HilbertConfig cfg_;
  std::map<std::string, Expr> axioms_;
  std::map<std::string, std::unordered_map<const HT*, bool>> huse_;
};

class ND2H {
 public:
  ND2H(HilbertConfig cfg, const std::vector<Axiom>& axioms) : b_(cfg, axioms), nm_("%") {}

  Builder& builder() { return b_; }

  // Unique discharge labels and globally fresh eigenvariables.
  NDPtr prepare(const NDPtr& p, const std::vector<Axiom>& axioms) {
    nm_.avoid(p);
    for (const auto& a : axioms) nm_.avoid(a.prop);
    return freshen(relabel(p, {}));
  }

  HP T(const NDPtr& p) {
    auto it = tmemo_.find(p.get());
    if (it != tmemo_.end()) return it->second;
    HP r = T1(p);
    tmemo_[p.get()] = r;
    return r;
  }

  HP TA(const NDPtr& p, const std::string& l, const Expr& A) {
    Builder& b = b_;
    if (!uses(p, l)) {
      HP t = T(p);
      b.rep.fragments["unused"].note(2);
      return b.mp(t, b.K(t->prop, A));
    }
    const NDNode& n = *p;
    auto P = [&](std::size_t k) { return n.prem[k]; };
    switch (n.rule) {
      case NDRule::Hyp:
        b.rep.fragments["hyp"].note(1);
        return b.I(A);
      case NDRule::ImpI:
        return b.abs(TA(P(0), n.label, n.a), l, A);
      case NDRule::ImpE: {
        const Expr& Bp = P(0)->concl;
        const Expr& Cp = n.concl;
        HP x = TA(P(1), l, A);
        HP y = TA(P(0), l, A);
        b.rep.fragments["T_A imp-e"].note(7);
        return b.mp(b.mp(b.mp(x, b.C(A, Bp, Cp)), b.mp(y, b.B(A, Bp, mk_imp(A, Cp)))), b.W(A, Cp));
      }
      case NDRule::AndI: {
        HP x = TA(P(1), l, A);
        HP y = TA(P(0), l, A);
        b.rep.fragments["T_A and-i"].note(3);
        return b.mp(x, b.mp(y, b.Pair(A, P(0)->concl, P(1)->concl)));
      }
      case NDRule::AndE: {
        const Expr& X = P(0)->concl;
        HP pj = b.s0(n.side == Side::Left ? "Proj_l" : "Proj_r", {{"A", X->args[0]}, {"B", X->args[1]}});
        HP y = TA(P(0), l, A);
        b.rep.fragments["T_A and-e"].note(4);
        return b.mp(pj, b.mp(y, b.B(A, X, n.concl)));
      }
      case NDRule::OrI: {
        HP inj = or_intro(n);
        HP y = TA(P(0), l, A);
        b.rep.fragments["T_A or-i"].note(4);
        return b.mp(inj, b.mp(y, b.B(A, P(0)->concl, n.concl)));
      }
      case NDRule::OrE: {
        const Expr& D = P(0)->concl;
        const Expr& Cp = n.concl;
        Expr AC = mk_imp(A, Cp);
        HP x3 = b.abs(TA(P(2), l, A), n.label2, n.b);
        HP x2 = b.abs(TA(P(1), l, A), n.label, n.a);
        HP m = b.mp(x3, b.mp(x2, b.Case(n.a, n.b, AC)));
        HP y = TA(P(0), l, A);
        HP m3 = b.mp(m, b.mp(y, b.B(A, D, AC)));
        b.rep.fragments["T_A or-e"].note(8);
        return b.mp(m3, b.W(A, Cp));
      }
      case NDRule::AllI: {
        b.rep.fragments["T_A all-i"].note(1);
        return b.gen(TA(P(0), l, A), n.eigen);
      }
      case NDRule::AllE: {
        HP ui = quant_inst("UI", n.q, n.term);
        HP y = TA(P(0), l, A);
        b.rep.fragments["T_A all-e"].note(4);
        return b.mp(ui, b.mp(y, b.B(A, P(0)->concl, n.concl)));
      }
      case NDRule::ExI: {
        HP ei = quant_inst("EI", n.q, n.term);
        HP y = TA(P(0), l, A);
        b.rep.fragments["T_A ex-i"].note(4);
        return b.mp(ei, b.mp(y, b.B(A, P(0)->concl, n.concl)));
      }
      case NDRule::ExE: {
        const Expr& Q = P(0)->concl;
        const Expr& Cp = n.concl;
        Expr By = open_with(n.q, n.eigen);
        HP x = b.abs(TA(P(1), l, A), n.label, By);
        HP pt = b.part(x, n.eigen);
        HP z = TA(P(0), l, A);
        HP m = b.mp(pt, b.mp(z, b.B(A, Q, mk_imp(A, Cp))));
        b.rep.fragments["T_A ex-e"].note(6);
        return b.mp(m, b.W(A, Cp));
      }
      case NDRule::BotE: {
        HP y = TA(P(0), l, A);
        b.rep.fragments["T_A bot-e"].note(2);
        return b.mp(y, b.EFSQ(A, n.concl));
      }
      default:
        throw TranslationError(std::string("no schematic counterpart for ") + nd_rule_name(n.rule));
    }
  }

 private:
  HP or_intro(const NDNode& n) {
    const Expr& D = n.concl;
    return b_.s0(n.side == Side::Left ? "Inj_l" : "Inj_r", {{"A", D->args[0]}, {"B", D->args[1]}});
  }

  HP quant_inst(const char* s, const Expr& q, const Expr& t) {
    Template tm = tr::quant_template(q, free_vars(t));
    SchemaInstance in;
    in.schema = s;
    in.j = q->sort.level();
    in.props["A"] = tm;
    in.tau = t;
    return b_.schema(std::move(in));
  }

  HP T1(const NDPtr& p) {
    Builder& b = b_;
    const NDNode& n = *p;
    auto P = [&](std::size_t k) { return n.prem[k]; };
    switch (n.rule) {
      case NDRule::Hyp:
        return b.hyp(n.label, n.concl);
      case NDRule::Ax:
        return b.axiom(n.name, n.concl);
      case NDRule::ImpI:
        return TA(P(0), n.label, n.a);
      case NDRule::ImpE:
        b.rep.fragments["T imp-e"].note(1);
        return b.mp(T(P(0)), T(P(1)));
      case NDRule::AndI: {
        const Expr& A = P(0)->concl;
        const Expr& Bp = P(1)->concl;
        HP k = b.mp(T(P(1)), b.K(Bp, A));
        HP x = b.mp(b.I(A), b.Pair(A, A, Bp));
        b.rep.fragments["T and-i"].note(7);
        return b.mp(T(P(0)), b.mp(k, x));
      }
      case NDRule::AndE: {
        const Expr& X = P(0)->concl;
        b.rep.fragments["T and-e"].note(2);
        return b.mp(T(P(0)), b.s0(n.side == Side::Left ? "Proj_l" : "Proj_r", {{"A", X->args[0]}, {"B", X->args[1]}}));
      }
      case NDRule::OrI:
        b.rep.fragments["T or-i"].note(2);
        return b.mp(T(P(0)), or_intro(n));
      case NDRule::OrE: {
        HP x2 = TA(P(1), n.label, n.a);
        HP x3 = TA(P(2), n.label2, n.b);
        b.rep.fragments["T or-e"].note(4);
        return b.mp(T(P(0)), b.mp(x3, b.mp(x2, b.Case(n.a, n.b, n.concl))));
      }
      case NDRule::AllI: {
        // Gen needs an antecedent free of the eigenvariable: use top.
        const Expr& Ay = P(0)->concl;
        HP m1 = b.mp(T(P(0)), b.K(Ay, mk_top()));
        HP g = b.gen(m1, n.eigen);
        b.rep.fragments["T all-i"].note(5);
        return b.mp(b.s0("T"), g);
      }
      case NDRule::AllE:
        b.rep.fragments["T all-e"].note(2);
        return b.mp(T(P(0)), quant_inst("UI", n.q, n.term));
      case NDRule::ExI:
        b.rep.fragments["T ex-i"].note(2);
        return b.mp(T(P(0)), quant_inst("EI", n.q, n.term));
      case NDRule::ExE: {
        HP x = TA(P(1), n.label, open_with(n.q, n.eigen));
        b.rep.fragments["T ex-e"].note(2);
        return b.mp(T(P(0)), b.part(x, n.eigen));
      }
      case NDRule::TopI:
        b.rep.fragments["T top-i"].note(1);
        return b.s0("T");
      case NDRule::BotE: {
        const Expr& A = n.concl;
        Expr AA = mk_imp(A, A);
        HP m1 = b.mp(T(P(0)), b.K(mk_bot(), AA));
        HP m2 = b.mp(m1, b.EFSQ(AA, A));
        b.rep.fragments["T bot-e"].note(6);
        return b.mp(b.I(A), m2);
      }
      case NDRule::Tnd:
        b.rep.fragments["T tnd"].note(1);
        return b.s0("TND", {{"A", n.b}});
      case NDRule::Ind:
        throw TranslationError("the induction rule has no schematic counterpart here");
    }
    throw TranslationError("unknown rule");
  }

  bool uses(const NDPtr& p, const std::string& l) {
    auto& memo = nuse_[l];
    auto it = memo.find(p.get());
    if (it != memo.end()) return it->second;
    bool r = false;
    if (p->rule == NDRule::Hyp) r = p->label == l;
    for (const auto& q : p->prem) r = r || uses(q, l);
    memo[p.get()] = r;
    return r;
  }

  NDPtr relabel(const NDPtr& p, const std::map<std::string, std::string>& env) {
    if (p->rule == NDRule::Hyp) {
      auto it = env.find(p->label);
      return it == env.end() ? p : nd::hyp(it->second, p->concl);
    }
    if (p->prem.empty()) return p;
    auto n = std::make_shared<NDNode>(*p);
    std::string l1, l2;
    if (!p->label.empty()) l1 = nm_.label();
    if (!p->label2.empty()) l2 = nm_.label();
    for (std::size_t k = 0; k < n->prem.size(); ++k) {
      std::map<std::string, std::string> e = env;
      bool binds1 = (p->rule == NDRule::ImpI) || ((p->rule == NDRule::OrE || p->rule == NDRule::ExE) && k == 1);
      bool binds2 = p->rule == NDRule::OrE && k == 2;
      if (binds1 && !l1.empty()) e[p->label] = l1;
      if (binds2 && !l2.empty()) e[p->label2] = l2;
      n->prem[k] = relabel(p->prem[k], e);
    }
    if (!l1.empty()) n->label = l1;
    if (!l2.empty()) n->label2 = l2;
    return n;
  }

  NDPtr freshen(const NDPtr& p) {
    if (p->prem.empty()) return p;
    auto n = std::make_shared<NDNode>(*p);
    if (p->rule == NDRule::AllI || p->rule == NDRule::ExE) {
      std::size_t k = p->rule == NDRule::AllI ? 0 : 1;
      Var y = nm_.fresh(name_of(p->eigen.name), p->eigen.sort);
      n->prem[k] = rename_in_proof(n->prem[k], p->eigen, y);
      n->eigen = y;
    }
    for (auto& q : n->prem) q = freshen(q);
    return n;
  }

  Builder b_;
  tr::Names nm_;
  std::unordered_map<const NDNode*, HP> tmemo_;
  std::map<std::string, std::unordered_map<const NDNode*, bool>> nuse_;
};

void check_input(const NDPtr& p, const std::vector<Axiom>& assumptions, const HilbertConfig& cfg) {
  Verdict v = check_nd(p, assumptions, empty_system(zi_signature(cfg.order)));
  if (!v) throw TranslationError("input is not a pure natural deduction proof: " + v.error + " at " + v.where);
}

HilbertProof finish(Builder& b, const HP& root, const std::vector<Axiom>& assumptions) {
  HilbertProof out = b.linearize(root, assumptions);
  HVerdict v = check_hilbert(out);
  if (!v) throw TranslationError("translated proof fails at line " + std::to_string(v.line) + ": " + v.error);
  return out;
}

}  // namespace

std::size_t nd_to_hilbert_case_constant() {
  Builder b(HilbertConfig{}, {});
  Expr x = mk_bot();
  std::size_t v = 3 + b.count(b.varpi1(x, x, x)) + b.count(b.varpi2(x, x, x));
  return std::max<std::size_t>(v, 8);
}

HilbertTranslation nd_to_hilbert(const NDPtr& p, const std::vector<Axiom>& assumptions, HilbertConfig cfg) {
  check_input(p, assumptions, cfg);
  ND2H t(cfg, assumptions);
  NDPtr q = t.prepare(p, assumptions);
  HP root = t.T(q);
  HilbertTranslation out;
  out.proof = finish(t.builder(), root, assumptions);
  out.report = t.builder().rep;
  out.report.input_length = nd_length(p);
  out.report.output_length = out.proof.lines.size();
  return out;
}

HilbertProof nd_abstract(const NDPtr& p, const std::string& label, const Expr& a, const std::vector<Axiom>& assumptions,
                         HilbertConfig cfg) {
  check_input(nd::imp_i(label, a, p), assumptions, cfg);
  ND2H t(cfg, assumptions);
  // the abstracted label stays free in prepare's relabelling
  NDPtr q = t.prepare(p, assumptions);
  HP root = t.TA(q, label, a);
  return finish(t.builder(), root, assumptions);
}

HilbertProof varpi1(const Expr& a, const Expr& b, const Expr& c, HilbertConfig cfg) {
  Builder bl(cfg, {});
  return finish(bl, bl.varpi1(a, b, c), {});
}

HilbertProof varpi2(const Expr& a, const Expr& b, const Expr& c, HilbertConfig cfg) {
  Builder bl(cfg, {});
  return finish(bl, bl.varpi2(a, b, c), {});
}

bool discharge_free(const NDPtr& p) {
  if (p->rule == NDRule::ImpI || p->rule == NDRule::OrE || p->rule == NDRule::ExE) return false;
  for (const auto& q : p->prem)
    if (!discharge_free(q)) return false;
  return true;
}

}  // namespace dm
