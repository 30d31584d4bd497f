#include <map>

#include "common.hpp"
#include "dm/files.hpp"
#include "dm/syntax.hpp"

namespace dm {

namespace {

const Sort N = Sort::arith(0);

const RewriteSystem& hha(int i) {
  static std::map<int, RewriteSystem> cache;
  auto it = cache.find(i);
  if (it == cache.end()) it = cache.emplace(i, hha_system(i)).first;
  return it->second;
}

const RewriteSystem& ho(int i) {
  static std::map<int, RewriteSystem> cache;
  auto it = cache.find(i);
  if (it == cache.end()) it = cache.emplace(i, ho_system(i)).first;
  return it->second;
}

Expr V(Var v) { return mk_var(v); }

// Proof builder modulo HHA_i: equational reasoning through the unfolding
// of = and induction through the ind rule.
class HB {
 public:
  HB(int i, const Expr& stmt) : R_(hha(i)) { avoid(stmt); }

  void avoid(const Expr& e) {
    auto fv = free_vars(e);
    avoid_.insert(fv.begin(), fv.end());
  }
  Var fresh(std::string_view base, Sort s = N) {
    Var v = fresh_var(base, s, avoid_);
    avoid_.insert(v);
    return v;
  }
  std::string label() { return "e" + std::to_string(++n_); }

  static Expr cls(const Expr& p, Var x) { return template_class(p, x); }

  // t = t
  NDPtr refl(const Expr& t) {
    Var p = fresh("p", Sort::cls());
    std::string h = label();
    Expr m = member(t, V(p));
    Expr q = forall_(p, mk_imp(m, m));
    return nd::all_i(eq(t, t), q, p, nd::imp_i(h, m, nd::hyp(h, m)));
  }

  // from D : u = v and Pu : P(u), P(v); px has the hole x
  NDPtr subst(const NDPtr& d, const Expr& u, const Expr& v, Var x, const Expr& px, const NDPtr& pu) {
    Var z = fresh("z", Sort::cls());
    Expr q = forall_(z, mk_imp(member(u, V(z)), member(v, V(z))));
    Expr pv = subst1(px, x, v);
    NDPtr ae = nd::all_e(mk_imp(subst1(px, x, u), pv), q, cls(px, x), d);
    return nd::imp_e(pv, pu, ae);
  }

  NDPtr sym(const NDPtr& d, const Expr& u, const Expr& v) {
    Var x = fresh("w");
    return subst(d, u, v, x, eq(V(x), u), refl(u));
  }

  NDPtr trans(const NDPtr& d1, const NDPtr& d2, const Expr& a, const Expr& b, const Expr& c) {
    Var x = fresh("w");
    return subst(d2, b, c, x, eq(a, V(x)), d1);
  }

  // C(u) = C(v), cx has the hole x
  NDPtr cong(const NDPtr& d, const Expr& u, const Expr& v, Var x, const Expr& cx) {
    Var w = fresh("w");
    Expr cu = subst1(cx, x, u);
    return subst(d, u, v, w, eq(cu, subst1(cx, x, V(w))), refl(cu));
  }

  // forall x. P(x) from P(0) and a step proving P(s y) from [P(y)]
  NDPtr induction(Var x, const Expr& px, const NDPtr& base, const std::function<NDPtr(Var, NDPtr)>& step) {
    Expr E = cls(px, x);
    Var a = fresh("a");
    auto [rhs, sigma] = unfold(V(a), E);
    Expr rhs2 = rhs->args[1];
    Expr qs = rhs2->args[1];
    Var y = fresh("y");
    std::string h = label();
    Expr my = member(V(y), E);
    NDPtr s = step(y, nd::hyp(h, my));
    NDPtr si = nd::imp_i(open_with(qs, y), h, my, s);
    NDPtr conj = nd::and_i(rhs2, base, nd::all_i(qs, qs, y, si));
    Expr ma = member(V(a), E);
    NDPtr disj = or_unfold(ma, rhs, sigma, conj);
    return nd::all_i(forall_(x, px), forall_(a, ma), a, disj);
  }

  // (member t E) unfolded once by the ind rule
  std::pair<Expr, Subst> unfold(const Expr& t, const Expr& E) {
    const Rule* r = R_.rule(kHhaInductionRule);
    auto sigma = match(r->lhs, member(t, E));
    if (!sigma) throw TranslationError("internal: ind rule does not match");
    return {instantiate_rhs(*r, *sigma), *sigma};
  }

  // or-i right whose obligation is one forward ind step at the root
  static NDPtr or_unfold(const Expr& ma, const Expr& rhs, const Subst& sigma, const NDPtr& conj) {
    NDPtr disj = nd::or_i(ma, Side::Right, ma, conj);
    Trace tr{ma, rhs, {Step{Position{}, kHhaInductionRule, sigma, Dir::Forward}}};
    return nd::with_via(disj, 0, std::move(tr));
  }

  // all-e on d at the given terms; the first binder is q
  static NDPtr inst_q(const NDPtr& d, const Expr& q, const std::vector<Expr>& ts) {
    NDPtr p = nd::all_e(instantiate(q->args[0], ts[0]), q, ts[0], d);
    return tr::inst_all(p, {ts.begin() + 1, ts.end()});
  }

 private:
  const RewriteSystem& R_;
  std::set<Var> avoid_;
  int n_ = 0;
};

Expr Pl(const Expr& a, const Expr& b) { return plus(a, b); }

// ---------------------------------------------------------------- fragments

NDPtr frag_refl() {
  Expr c = refl_axiom();
  HB b(0, c);
  Var a = b.fresh("a");
  return nd::all_i(c, c, a, b.refl(V(a)));
}

NDPtr frag_leibniz_ax() {
  Expr L0 = leibniz_ax();
  HB hb(0, L0);
  Var g = hb.fresh("g", Sort::cls()), a = hb.fresh("a"), b = hb.fresh("b"), z = hb.fresh("z", Sort::cls());
  Expr L1 = open_with(L0, g), L2 = open_with(L1, a), L3 = open_with(L2, b);
  Expr q = forall_(z, mk_imp(member(V(a), V(z)), member(V(b), V(z))));
  NDPtr ae = nd::all_e(L3->args[1], q, V(g), nd::hyp("i", L3->args[0]));
  NDPtr d = nd::imp_i(L3, "i", L3->args[0], ae);
  d = nd::all_i(L2, L2, b, d);
  d = nd::all_i(L1, L1, a, d);
  return nd::all_i(L0, L0, g, d);
}

Expr template_cls(const Template& t) {
  if (t.params.size() != 1) throw TranslationError("fragment templates must be unary");
  return template_class(t.body, t.params[0]);
}

NDPtr frag_leibniz(const Template& t, const Expr& c) {
  HB hb(0, c);
  Var a = hb.fresh("a"), b = hb.fresh("b"), z = hb.fresh("z", Sort::cls());
  Expr L1 = open_with(c, a), L2 = open_with(L1, b);
  Expr q = forall_(z, mk_imp(member(V(a), V(z)), member(V(b), V(z))));
  NDPtr ae = nd::all_e(L2->args[1], q, template_cls(t), nd::hyp("i", L2->args[0]));
  NDPtr d = nd::imp_i(L2, "i", L2->args[0], ae);
  d = nd::all_i(L1, L1, b, d);
  return nd::all_i(c, c, a, d);
}

NDPtr frag_0s() {
  Expr c = robinson_axiom("0!=s");
  HB hb(0, c);
  Var a = hb.fresh("a"), z = hb.fresh("z", Sort::cls());
  Expr L1 = open_with(c, a);
  Expr sa = succ(V(a));
  Expr Nl = dotnull(one(0));
  Expr q = forall_(z, mk_imp(member(zero(), V(z)), member(sa, V(z))));
  NDPtr ae = nd::all_e(mk_imp(member(zero(), Nl), member(sa, Nl)), q, Nl, nd::hyp("i", L1->args[0]));
  NDPtr e = nd::imp_e(mk_bot(), nd::top_i(null_atom(zero())), ae);
  return nd::all_i(c, c, a, nd::imp_i(L1, "i", L1->args[0], e));
}

NDPtr frag_injs() {
  Expr c = robinson_axiom("Inj_s");
  HB hb(0, c);
  Var a = hb.fresh("a"), b = hb.fresh("b"), z = hb.fresh("z", Sort::cls()), x = hb.fresh("x");
  Expr L1 = open_with(c, a), L2 = open_with(L1, b);
  Expr A = V(a), B = V(b);
  Expr E = HB::cls(eq(A, predf(V(x))), x);
  Expr q = forall_(z, mk_imp(member(succ(A), V(z)), member(succ(B), V(z))));
  NDPtr ae = nd::all_e(mk_imp(eq(A, A), eq(A, B)), q, E, nd::hyp("i", L2->args[0]));
  NDPtr e = nd::imp_e(eq(A, B), hb.refl(A), ae);
  NDPtr d = nd::imp_i(L2, "i", L2->args[0], e);
  d = nd::all_i(L1, L1, b, d);
  return nd::all_i(c, c, a, d);
}

NDPtr frag_onto() {
  Expr c = robinson_axiom("Onto_s");
  HB hb(0, c);
  Var x = hb.fresh("x");
  Expr px = open_with(c, x);
  Expr p0 = subst1(px, x, zero());
  std::string h = hb.label();
  NDPtr e = nd::imp_e(mk_bot(), hb.refl(zero()), nd::hyp(h, p0->args[0]));
  NDPtr base = nd::imp_i(p0, h, p0->args[0], nd::bot_e(p0->args[1], e));
  return hb.induction(x, px, base, [&](Var y, NDPtr) {
    Expr py = subst1(px, x, succ(V(y)));
    Expr q = py->args[1];
    NDPtr ex = nd::ex_i(q, q, V(y), hb.refl(succ(V(y))));
    std::string k = hb.label();
    return nd::imp_i(py, k, py->args[0], ex);
  });
}

NDPtr frag_plus0(HB& hb) {
  Expr c = robinson_axiom("+0");
  Var x = hb.fresh("x"), w = hb.fresh("w");
  Expr px = open_with(c, x);
  return hb.induction(x, px, hb.refl(zero()), [&](Var y, NDPtr ih) {
    Expr Y = V(y);
    return hb.cong(ih, Pl(Y, zero()), Y, w, succ(V(w)));
  });
}

NDPtr frag_pluss(HB& hb) {
  Expr c = robinson_axiom("+s");
  Var x = hb.fresh("x"), w = hb.fresh("w");
  Expr px = open_with(c, x);
  Var b0 = hb.fresh("b");
  NDPtr base = nd::all_i(b0, hb.refl(succ(V(b0))));
  return hb.induction(x, px, base, [&](Var y, NDPtr ih) {
    Expr Y = V(y);
    Var b = hb.fresh("b");
    Expr B = V(b);
    Expr u = Pl(Y, succ(B)), v = succ(Pl(Y, B));
    NDPtr hb1 = nd::all_e(eq(u, v), subst1(px, x, Y), B, ih);
    return nd::all_i(b, hb.cong(hb1, u, v, w, succ(V(w))));
  });
}

Expr assoc_stmt() {
  Var x = mkvar("x", N), b = mkvar("b", N), c = mkvar("c", N);
  Expr X = V(x), B = V(b), C = V(c);
  return forall_(x, forall_(b, forall_(c, eq(Pl(Pl(X, B), C), Pl(X, Pl(B, C))))));
}

Expr comm_stmt() {
  Var x = mkvar("x", N), b = mkvar("b", N);
  return forall_(x, forall_(b, eq(Pl(V(x), V(b)), Pl(V(b), V(x)))));
}

NDPtr frag_assoc(HB& hb) {
  Expr st = assoc_stmt();
  Var x = hb.fresh("x"), w = hb.fresh("w");
  Expr px = open_with(st, x);
  Var b0 = hb.fresh("b"), c0 = hb.fresh("c");
  NDPtr base = nd::all_i(b0, nd::all_i(c0, hb.refl(Pl(V(b0), V(c0)))));
  return hb.induction(x, px, base, [&](Var y, NDPtr ih) {
    Expr Y = V(y);
    Var b = hb.fresh("b"), c = hb.fresh("c");
    Expr B = V(b), C = V(c);
    NDPtr h = HB::inst_q(ih, subst1(px, x, Y), {B, C});
    NDPtr d = hb.cong(h, Pl(Pl(Y, B), C), Pl(Y, Pl(B, C)), w, succ(V(w)));
    return nd::all_i(b, nd::all_i(c, d));
  });
}

NDPtr frag_comm(HB& hb, const std::string& h0, const std::string& hs) {
  Expr st = comm_stmt();
  Var x = hb.fresh("x"), w = hb.fresh("w");
  Expr px = open_with(st, x);
  Var b0 = hb.fresh("b");
  Expr B0 = V(b0);
  NDPtr e0 = tr::inst_all(nd::hyp(h0, robinson_axiom("+0")), {B0});
  NDPtr base = nd::all_i(b0, hb.sym(e0, Pl(B0, zero()), B0));
  return hb.induction(x, px, base, [&](Var y, NDPtr ih) {
    Expr Y = V(y);
    Var b = hb.fresh("b");
    Expr B = V(b);
    NDPtr h = HB::inst_q(ih, subst1(px, x, Y), {B});
    NDPtr c = hb.cong(h, Pl(Y, B), Pl(B, Y), w, succ(V(w)));
    NDPtr e = tr::inst_all(nd::hyp(hs, robinson_axiom("+s")), {B, Y});
    NDPtr s = hb.sym(e, Pl(B, succ(Y)), succ(Pl(B, Y)));
    NDPtr t = hb.trans(c, s, succ(Pl(Y, B)), succ(Pl(B, Y)), Pl(B, succ(Y)));
    return nd::all_i(b, t);
  });
}

NDPtr frag_times0() {
  Expr c = robinson_axiom("x0");
  HB hb(0, c);
  Var x = hb.fresh("x"), w = hb.fresh("w");
  Expr px = open_with(c, x);
  return hb.induction(x, px, hb.refl(zero()), [&](Var y, NDPtr ih) {
    Expr u = times(V(y), zero());
    return hb.subst(ih, u, zero(), w, eq(Pl(u, zero()), Pl(V(w), zero())), hb.refl(Pl(u, zero())));
  });
}

NDPtr frag_timess() {
  Expr c = robinson_axiom("xs");
  HB hb(0, c);
  const std::string H0 = "lemma+0", Hs = "lemma+s", Ha = "lemma-assoc", Hc = "lemma-comm";
  NDPtr l0 = frag_plus0(hb);
  NDPtr ls = frag_pluss(hb);
  NDPtr la = frag_assoc(hb);
  NDPtr lc = frag_comm(hb, H0, Hs);
  auto use = [&](const std::string& l, const Expr& st, std::vector<Expr> ts) {
    return tr::inst_all(nd::hyp(l, st), ts);
  };
  Expr sp0 = robinson_axiom("+0"), sps = robinson_axiom("+s"), sa = assoc_stmt(), sc = comm_stmt();
  Var x = hb.fresh("x"), w = hb.fresh("w");
  Expr W = V(w);
  Expr px = open_with(c, x);
  Var b0 = hb.fresh("b");
  NDPtr base = nd::all_i(b0, hb.refl(zero()));
  NDPtr main = hb.induction(x, px, base, [&](Var y, NDPtr ih) {
    Expr Y = V(y);
    Var b = hb.fresh("b");
    Expr B = V(b);
    Expr u = times(Y, B);
    Expr sb = succ(B), sy = succ(Y);
    NDPtr ihb = HB::inst_q(ih, subst1(px, x, Y), {B});  // y x sb = u + y
    Expr lhs = Pl(times(Y, sb), sb);
    NDPtr e2 = hb.cong(ihb, times(Y, sb), Pl(u, Y), w, Pl(W, sb));
    NDPtr e3 = use(Ha, sa, {u, Y, sb});
    NDPtr t1 = hb.trans(e2, e3, lhs, Pl(Pl(u, Y), sb), Pl(u, Pl(Y, sb)));
    NDPtr e4 = use(Hs, sps, {Y, B});
    NDPtr c4 = hb.cong(e4, Pl(Y, sb), succ(Pl(Y, B)), w, Pl(u, W));
    NDPtr t2 = hb.trans(t1, c4, lhs, Pl(u, Pl(Y, sb)), Pl(u, succ(Pl(Y, B))));
    NDPtr e5 = use(Hc, sc, {Y, B});
    NDPtr c5 = hb.cong(e5, Pl(Y, B), Pl(B, Y), w, Pl(u, succ(W)));
    NDPtr t3 = hb.trans(t2, c5, lhs, Pl(u, succ(Pl(Y, B))), Pl(u, succ(Pl(B, Y))));
    NDPtr e6 = use(Hs, sps, {B, Y});
    NDPtr s6 = hb.sym(e6, Pl(B, sy), succ(Pl(B, Y)));
    NDPtr c6 = hb.cong(s6, succ(Pl(B, Y)), Pl(B, sy), w, Pl(u, W));
    NDPtr t4 = hb.trans(t3, c6, lhs, Pl(u, succ(Pl(B, Y))), Pl(u, Pl(B, sy)));
    NDPtr e7 = use(Ha, sa, {u, B, sy});
    NDPtr s7 = hb.sym(e7, Pl(Pl(u, B), sy), Pl(u, Pl(B, sy)));
    NDPtr t5 = hb.trans(t4, s7, lhs, Pl(u, Pl(B, sy)), Pl(Pl(u, B), sy));
    return nd::all_i(b, t5);
  });
  (void)sp0;
  NDPtr d = tr::let_cut(Hc, lc, main);
  d = tr::let_cut(Ha, la, d);
  d = tr::let_cut(Hs, ls, d);
  return tr::let_cut(H0, l0, d);
}

NDPtr hha_ind(const Template& t, const Expr& c) {
  HB hb(0, c);
  Expr E = template_cls(t);
  Var a = hb.fresh("a");
  auto [rhs, sigma] = hb.unfold(V(a), E);
  Expr rhs2 = rhs->args[1];
  Expr x0 = c->args[0], st = c->args[1]->args[0], goal = c->args[1]->args[1];
  NDPtr conj = nd::and_i(rhs2, nd::hyp("i", x0), nd::hyp("ii", st));
  Expr ma = member(V(a), E);
  NDPtr d = nd::all_i(goal, forall_(a, ma), a, HB::or_unfold(ma, rhs, sigma, conj));
  d = nd::imp_i(c->args[1], "ii", st, d);
  return nd::imp_i(c, "i", x0, d);
}

NDPtr robinson_fragment(const std::string& n) {
  if (n == "0!=s") return frag_0s();
  if (n == "Inj_s") return frag_injs();
  if (n == "Onto_s") return frag_onto();
  if (n == "+0" || n == "+s") {
    HB hb(0, robinson_axiom(n));
    return n == "+0" ? frag_plus0(hb) : frag_pluss(hb);
  }
  if (n == "x0") return frag_times0();
  if (n == "xs") return frag_timess();
  throw TranslationError("no fragment for " + n);
}

Expr statement(const std::string& schema, const Template& t, int j, int i) {
  SchemaInstance in;
  in.schema = schema;
  in.j = j;
  in.props["A"] = t;
  return instantiate_schema(in, HilbertConfig{i + 1, false});
}

NDPtr instance_proof(const RecognizedInstance& r) {
  const std::string& s = r.schema;
  if (s == "Refl") return frag_refl();
  if (s == "Leibniz") return frag_leibniz(r.tmpl, r.instance);
  if (s == "Ind") return hha_ind(r.tmpl, r.instance);
  if (s == "Comp") return tr::comp_fragment(r.tmpl, r.j, r.instance);
  return robinson_fragment(s);
}

std::optional<RecognizedInstance> recognize_open(const Expr& p, int order) {
  HilbertConfig cfg{order, false};
  std::set<Var> avoid = free_vars(p);
  auto fresh = [&](Sort s, const char* base) {
    Var v = fresh_var(base, s, avoid);
    avoid.insert(v);
    return v;
  };
  auto try_tmpl = [&](const std::string& s, int j, Template t) -> std::optional<RecognizedInstance> {
    SchemaInstance in;
    in.schema = s;
    in.j = j;
    in.props["A"] = t;
    try {
      if (alpha_equal(instantiate_schema(in, cfg), p)) return RecognizedInstance{s, j, t, {}, p};
    } catch (const KernelError&) {
    }
    return std::nullopt;
  };
  if (alpha_equal(p, refl_axiom())) return RecognizedInstance{"Refl", 0, {}, {}, p};
  for (const auto& n : robinson_names())
    if (alpha_equal(p, robinson_axiom(n))) return RecognizedInstance{n, 0, {}, {}, p};
  // Leibniz: forall a b. a = b => A(a) => A(b)
  if (p->kind == Kind::Forall && p->sort == N && p->args[0]->kind == Kind::Forall) {
    Var a = fresh(N, "a"), b = fresh(N, "b");
    Expr body = open_with(open_with(p, a), b);
    if (body->kind == Kind::Imp && body->args[1]->kind == Kind::Imp) {
      Var h = fresh(N, "h");
      if (auto r = try_tmpl("Leibniz", 0, Template::unary(h, subst1(body->args[1]->args[0], a, V(h))))) return r;
    }
  }
  // Ind: A(0) => (...) => forall a. A(a)
  if (p->kind == Kind::Imp && p->args[1]->kind == Kind::Imp && p->args[1]->args[1]->kind == Kind::Forall) {
    Expr g = p->args[1]->args[1];
    if (g->sort == N) {
      Var h = fresh(N, "h");
      if (auto r = try_tmpl("Ind", 0, Template::unary(h, open_with(g, h)))) return r;
    }
  }
  // Comp: exists a. forall b. (b in a) <=> A(b)
  if (p->kind == Kind::Exists && p->args[0]->kind == Kind::Forall) {
    int j = p->args[0]->sort.level();
    if (j >= 0 && p->sort == Sort::arith(j + 1)) {
      Var a = fresh(p->sort, "a"), b = fresh(Sort::arith(j), "b");
      Expr body = open_with(open_with(p, a), b);
      if (body->kind == Kind::And && body->args[0]->kind == Kind::Imp) {
        Var h = fresh(Sort::arith(j), "h");
        if (auto r = try_tmpl("Comp", j, Template::unary(h, subst1(body->args[0]->args[1], b, V(h))))) return r;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------- library

const std::vector<Fragment>& fragment_library() {
  static const std::vector<Fragment> lib = [] {
    std::vector<Fragment> v;
    auto fixed = [&](std::string name, std::string sys, std::function<NDPtr()> b, std::function<Expr()> st) {
      v.push_back(Fragment{std::move(name), std::move(sys), false, false,
                           [b](const Template&, int, int) { return b(); },
                           [st](const Template&, int, int) { return st(); }});
    };
    v.push_back(Fragment{"ho:Leibniz", "ho", true, false,
                         [](const Template& t, int j, int i) { return tr::ho_leibniz(t, statement("Leibniz", t, j, i)); },
                         [](const Template& t, int j, int i) { return statement("Leibniz", t, j, i); }});
    v.push_back(Fragment{"ho:Ind", "ho", true, false,
                         [](const Template& t, int j, int i) { return tr::ho_ind(t, statement("Ind", t, j, i)); },
                         [](const Template& t, int j, int i) { return statement("Ind", t, j, i); }});
    v.push_back(Fragment{"ho:Comp", "ho", true, true,
                         [](const Template& t, int j, int i) { return tr::comp_fragment(t, j, statement("Comp", t, j, i)); },
                         [](const Template& t, int j, int i) { return statement("Comp", t, j, i); }});
    fixed("hha:Refl", "hha", frag_refl, refl_axiom);
    fixed("hha:Leibniz_ax", "hha", frag_leibniz_ax, leibniz_ax);
    v.push_back(Fragment{"hha:Leibniz", "hha", true, false,
                         [](const Template& t, int j, int i) { return frag_leibniz(t, statement("Leibniz", t, j, i)); },
                         [](const Template& t, int j, int i) { return statement("Leibniz", t, j, i); }});
    for (const auto& n : robinson_names())
      fixed("hha:" + n, "hha", [n] { return robinson_fragment(n); }, [n] { return robinson_axiom(n); });
    v.push_back(Fragment{"hha:Ind", "hha", true, false,
                         [](const Template& t, int j, int i) { return hha_ind(t, statement("Ind", t, j, i)); },
                         [](const Template& t, int j, int i) { return statement("Ind", t, j, i); }});
    v.push_back(Fragment{"hha:Comp", "hha", true, true,
                         [](const Template& t, int j, int i) { return tr::comp_fragment(t, j, statement("Comp", t, j, i)); },
                         [](const Template& t, int j, int i) { return statement("Comp", t, j, i); }});
    return v;
  }();
  return lib;
}

const Fragment* find_fragment(std::string_view name) {
  for (const auto& f : fragment_library())
    if (f.name == name) return &f;
  return nullptr;
}

std::vector<Axiom> fragment_assumptions(const Fragment& f, int i) {
  if (f.system == "ho") return fz_axioms(i).axioms;
  return {};
}

RewriteSystem fragment_system(const Fragment& f, int i) { return f.system == "ho" ? ho(i) : hha(i); }

NDPtr instantiate_fragment(const Fragment& f, const Template& t, int j, int i) {
  NDPtr p = f.build(t, j, i);
  NDCheckOptions opt;
  opt.mode = f.system == "hha" ? CongruenceMode::Mixed : CongruenceMode::Auto;
  const RewriteSystem& R = f.system == "ho" ? ho(i) : hha(i);
  Verdict v = check_nd(p, fragment_assumptions(f, i), R, opt);
  if (!v) throw TranslationError(f.name + " fragment fails to check at " + v.where + ": " + v.error);
  Expr want = f.statement(t, j, i);
  if (!alpha_equal(p->concl, want))
    throw TranslationError(f.name + " fragment proves " + print(p->concl) + " instead of " + print(want));
  return p;
}

std::optional<RecognizedInstance> recognize_instance(const Expr& prop, int order) {
  Expr p = prop;
  std::vector<Var> params;
  std::set<Var> avoid = free_vars(prop);
  while (true) {
    if (auto r = recognize_open(p, order)) {
      r->params = params;
      return r;
    }
    if (p->kind != Kind::Forall) return std::nullopt;
    Var v = fresh_var(name_of(p->sym), p->sort, avoid);
    avoid.insert(v);
    params.push_back(v);
    p = open_with(p, v);
  }
}

NDTranslation zi_nd_to_hha(const NDPtr& p, const std::vector<Axiom>& assumptions, int order) {
  Verdict in = check_nd(p, assumptions, empty_system(zi_signature(order)));
  if (!in) throw TranslationError("input is not a pure natural deduction proof: " + in.error + " at " + in.where);
  int i = class_level(order);
  NDTranslation out;
  std::map<std::string, NDPtr> done;
  for (const auto& a : assumptions) {
    auto r = recognize_instance(a.prop, order);
    if (!r) continue;
    NDPtr d = instance_proof(*r);
    std::vector<Expr> props{a.prop};
    for (const auto& v : r->params) props.push_back(open_with(props.back(), v));
    for (std::size_t k = r->params.size(); k-- > 0;) d = nd::all_i(props[k], props[k], r->params[k], d);
    out.report.fragments[r->schema].note(nd_length(d));
    done[a.name] = d;
  }
  std::function<NDPtr(const NDPtr&)> walk = [&](const NDPtr& n) -> NDPtr {
    if (n->rule == NDRule::Ax) {
      auto it = done.find(n->name);
      if (it == done.end()) throw TranslationError("assumption " + n->name + " is not an instance of a Z_i axiom");
      return it->second;
    }
    if (n->prem.empty()) return n;
    std::vector<NDPtr> prem;
    for (const auto& q : n->prem) prem.push_back(walk(q));
    return nd::with_prem(n, std::move(prem));
  };
  out.proof = walk(p);
  out.report.input_length = nd_length(p);
  out.report.output_length = nd_length(out.proof);
  NDCheckOptions opt;
  opt.mode = CongruenceMode::Mixed;
  Verdict v = check_nd(out.proof, {}, hha(i), opt);
  if (!v) throw TranslationError("translated proof fails to check at " + v.where + ": " + v.error);
  return out;
}

}  // namespace dm
