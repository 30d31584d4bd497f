#include <algorithm>
#include <functional>

#include "dm/bench.hpp"

namespace dm {

// ---------------------------------------------------------------- props

std::vector<Var> RandomGen::pool(int j, std::size_t n) const {
  static const char* const low[] = {"x", "y", "z", "w"};
  static const char* const high[] = {"X", "Y", "Z", "W"};
  std::vector<Var> out;
  for (std::size_t k = 0; k < n && k < 4; ++k) {
    std::string name = j == 0 ? low[k] : std::string(high[k]) + std::to_string(j);
    out.push_back(mkvar(name, Sort::arith(j)));
  }
  return out;
}

Expr RandomGen::term(int j, std::size_t budget, const std::vector<Var>& scope) {
  std::vector<Var> vs;
  for (const auto& v : scope)
    if (v.sort == Sort::arith(j)) vs.push_back(v);
  if (j > 0) {
    if (vs.empty()) throw KernelError("no variable of sort " + std::to_string(j) + " in scope");
    return mk_var(vs[below(vs.size())]);
  }
  if (budget <= 1 || coin(0.35)) {
    if (!vs.empty() && coin(0.65)) return mk_var(vs[below(vs.size())]);
    return zero();
  }
  if (budget < 3 || coin(0.4)) return succ(term(0, budget - 1, scope));
  std::size_t l = 1 + below(budget - 2);
  Expr a = term(0, l, scope);
  Expr b = term(0, budget - 1 - a->size, scope);
  return coin() ? plus(a, b) : times(a, b);
}

Expr RandomGen::atom(int order, std::size_t budget, const std::vector<Var>& scope) {
  if (order >= 2 && coin(0.3)) {
    int j = static_cast<int>(below(order - 1));
    bool has_hi = std::any_of(scope.begin(), scope.end(), [&](const Var& v) { return v.sort == Sort::arith(j + 1); });
    bool has_lo = j == 0 || std::any_of(scope.begin(), scope.end(), [&](const Var& v) { return v.sort == Sort::arith(j); });
    if (has_hi && has_lo) {
      Expr a = term(j, budget > 3 ? budget - 2 : 1, scope);
      return in(j, a, term(j + 1, 1, scope));
    }
  }
  std::size_t l = budget >= 3 ? 1 + below(budget - 2) : 1;
  Expr a = term(0, l, scope);
  std::size_t rest = budget > 1 + a->size ? budget - 1 - a->size : 1;
  return eq(a, term(0, rest, scope));
}

Expr RandomGen::prop(const PropGenOptions& o, std::size_t budget, std::vector<Var> scope) {
  if (budget < 3) return o.allow_top && coin() ? mk_top() : mk_bot();
  std::size_t r = below(12);
  if (r < 4 || budget < 5) return atom(o.order, budget, scope);
  if (r == 4) return o.allow_top && coin() ? mk_top() : mk_bot();
  if (r <= 8 || !o.allow_quant) {
    std::size_t l = 1 + below(budget - 2);
    Expr a = prop(o, l, scope);
    Expr b = prop(o, budget - 1 - a->size, scope);
    Kind k = r == 5 ? Kind::And : r == 6 ? Kind::Or : Kind::Imp;
    return mk_binop(k, a, b);
  }
  int j = static_cast<int>(below(o.order));
  Var v = mkvar((j == 0 ? "u" : "U") + std::to_string(binders_++), Sort::arith(j));
  scope.push_back(v);
  Expr body = prop(o, budget - 1, scope);
  return r <= 10 ? forall_(v, body) : exists_(v, body);
}

Expr RandomGen::prop(const PropGenOptions& o) {
  std::vector<Var> scope;
  for (int j = 0; j < o.order; ++j)
    for (const auto& v : pool(j, o.free_per_sort)) scope.push_back(v);
  std::size_t budget = 3 + below(o.max_size > 3 ? o.max_size - 2 : 1);
  return prop(o, budget, scope);
}

Template RandomGen::unary_template(int order, int j, std::size_t max_size) {
  Var h = mkvar("h", Sort::arith(j));
  PropGenOptions o;
  o.order = order;
  o.allow_top = false;
  std::vector<Var> scope{h};
  for (int k = 0; k < order; ++k)
    for (const auto& v : pool(k, 1)) scope.push_back(v);
  Expr body;
  for (int tries = 0; tries < 20; ++tries) {
    body = prop(o, 3 + below(max_size > 3 ? max_size - 2 : 1), scope);
    if (occurs_free(h, body)) break;
  }
  return Template::unary(h, body);
}

// ---------------------------------------------------------------- Hilbert

namespace {

std::vector<std::string> prop_names(const std::string& s) {
  if (s == "I" || s == "TND") return {"A"};
  if (s == "C" || s == "B" || s == "Pair" || s == "Case") return {"A", "B", "C"};
  return {"A", "B"};
}

const char* const kLogical[] = {"I",     "K",     "W",    "C",             "B",    "Proj_l", "Proj_r",
                                "Pair",  "Inj_l", "Inj_r", "Contradiction", "EFSQ", "Case"};

}  // namespace

HilbertProof random_hilbert_proof(RandomGen& g, int order, std::size_t lines, bool theory) {
  HilbertBuilder b({order, false});
  PropGenOptions small;
  small.order = order;
  small.max_size = 8;
  small.allow_top = !theory;
  auto pick_line = [&]() { return b.last() - static_cast<int>(g.below(std::min<std::size_t>(b.last(), 6))); };
  auto schema_line = [&]() {
    std::string s = kLogical[g.below(std::size(kLogical))];
    std::vector<std::pair<std::string, Expr>> ps;
    for (const auto& n : prop_names(s)) ps.push_back({n, g.prop(small)});
    b.schema(schema0(s, ps));
  };
  auto theory_line = [&]() {
    std::size_t r = g.below(order >= 2 ? 6 : 4);
    if (r == 0) {
      b.schema(schema0("Refl"));
    } else if (r == 1) {
      auto names = robinson_names();
      b.schema(schema0(names[g.below(names.size())]));
    } else if (r == 2 || r == 3) {
      SchemaInstance in;
      in.schema = r == 2 ? "Leibniz" : "Ind";
      in.props["A"] = g.unary_template(order, 0, 10);
      b.schema(in);
    } else {
      SchemaInstance in;
      in.schema = "Comp";
      in.j = static_cast<int>(g.below(order - 1));
      in.props["A"] = g.unary_template(order, in.j, 10);
      b.schema(in);
    }
  };
  schema_line();
  while (static_cast<std::size_t>(b.last()) < lines) {
    std::size_t r = g.below(12);
    try {
      if (r <= 2) {
        schema_line();
      } else if (r == 3) {
        int j = static_cast<int>(g.below(order));
        Template t = g.unary_template(order, j, 8);
        std::vector<Var> scope;
        for (int k = 0; k < order; ++k)
          for (const auto& v : g.pool(k, 2)) scope.push_back(v);
        Expr tau = g.term(j, 3, scope);
        b.schema(g.coin() ? schema_ui(j, t, tau) : schema_ei(j, t, tau));
      } else if (r == 4 && theory) {
        theory_line();
      } else if (r <= 7) {
        int m = pick_line();
        int major = 0;
        for (int k = b.last(); k >= 1 && !major; --k) {
          const Expr& p = b.prop(k);
          if (p->kind == Kind::Imp && alpha_equal(p->args[0], b.prop(m))) major = k;
        }
        if (!major) major = b.schema(schema0("K", {{"A", b.prop(m)}, {"B", g.prop(small)}}));
        b.mp(m, major);
      } else if (r == 8 || r == 9) {
        int m = pick_line();
        const Expr& p = b.prop(m);
        if (p->kind != Kind::Imp) continue;
        bool gen = r == 8;
        const Expr& keep = gen ? p->args[0] : p->args[1];
        const Expr& from = gen ? p->args[1] : p->args[0];
        std::set<Var> fv = free_vars(from), kept = free_vars(keep);
        std::vector<Var> cand;
        for (const auto& v : fv)
          if (!kept.count(v)) cand.push_back(v);
        Var v;
        if (!cand.empty()) {
          v = cand[g.below(cand.size())];
        } else {
          std::set<Var> avoid = free_vars(p);
          v = fresh_var("e", Sort::arith(static_cast<int>(g.below(order))), avoid);
        }
        gen ? b.gen(m, v) : b.part(m, v);
      } else if (r == 10) {
        b.schema(schema0("TND", {{"A", g.prop(small)}}));
      } else if (!theory) {
        b.schema(schema0("T"));
      }
    } catch (const SideConditionError&) {
      // unlucky instance, draw again
    }
  }
  // make every line live: from Y and X, K gives X => Y and then Y again
  std::vector<bool> live(b.last() + 1, false);
  std::function<void(int)> mark = [&](int k) {
    if (live[k]) return;
    live[k] = true;
    const HLine& l = b.proof().lines[k - 1];
    if (l.kind == HKind::MP) {
      mark(l.ref1);
      mark(l.ref2);
    } else if (l.kind == HKind::Gen || l.kind == HKind::Part) {
      mark(l.ref1);
    }
  };
  int n = b.last();
  mark(n);
  int cur = n;
  for (int k = n - 1; k >= 1; --k) {
    if (live[k]) continue;
    mark(k);
    int kl = b.schema(schema0("K", {{"A", b.prop(cur)}, {"B", b.prop(k)}}));
    int xy = b.mp(cur, kl);
    cur = b.mp(k, xy);
  }
  return b.take();
}

// ---------------------------------------------------------------- ND

NDSample random_nd_proof(RandomGen& g, int order, std::size_t steps, bool discharge_free) {
  using namespace nd;
  NDSample s;
  s.order = order;
  PropGenOptions o;
  o.order = order;
  o.max_size = 10;
  o.allow_top = false;
  auto close = [](Expr p) {
    std::set<Var> fv = free_vars(p);
    for (auto it = fv.rbegin(); it != fv.rend(); ++it) p = forall_(*it, p);
    return p;
  };
  for (int k = 0; k < 3; ++k) s.assumptions.push_back(Axiom{"G" + std::to_string(k), close(g.prop(o))});
  std::vector<NDPtr> pool;
  std::size_t labels = 0;
  std::set<Var> used;
  auto fresh = [&](int j) {
    Var v = fresh_var("e", Sort::arith(j), used);
    used.insert(v);
    return v;
  };
  auto recent = [&]() -> const NDPtr& { return pool[pool.size() - 1 - g.below(std::min<std::size_t>(pool.size(), 5))]; };
  std::vector<Var> scope;
  for (int k = 0; k < order; ++k)
    for (const auto& v : g.pool(k, 1)) scope.push_back(v);
  auto leaf = [&]() {
    const Axiom& a = s.assumptions[g.below(s.assumptions.size())];
    return ax(a.name, a.prop);
  };
  pool.push_back(leaf());
  std::size_t guard = 0;
  while (pool.size() < steps + 1 && guard++ < steps * 20) {
    std::size_t r = g.below(discharge_free ? 9 : 12);
    const NDPtr& p = recent();
    const Expr& c = p->concl;
    NDPtr out;
    switch (r) {
      case 0:
        out = leaf();
        break;
      case 1:
        out = and_i(p, recent());
        break;
      case 2:
        if (c->kind == Kind::And) out = and_e(g.coin() ? Side::Left : Side::Right, p);
        break;
      case 3:
        out = or_i(g.coin() ? Side::Left : Side::Right, g.prop(o), p);
        break;
      case 4:
        if (c->kind == Kind::Forall) {
          int j = c->sort.level();
          std::vector<Var> sc = scope;
          if (j > 0 && std::none_of(sc.begin(), sc.end(), [&](const Var& v) { return v.sort == c->sort; }))
            sc.push_back(g.pool(j, 1)[0]);
          out = all_e(g.term(j, 3, sc), p);
        }
        break;
      case 5: {
        int j = static_cast<int>(g.below(order));
        Var v = fresh(j);
        Expr q = exists_(v, c);
        out = ex_i(q, q, mk_var(v), p);
        break;
      }
      case 6: {
        std::set<Var> blocked = open_leaf_vars(p);
        std::vector<Var> cand;
        for (const auto& v : free_vars(c))
          if (!blocked.count(v)) cand.push_back(v);
        Var v = cand.empty() ? fresh(static_cast<int>(g.below(order))) : cand[g.below(cand.size())];
        out = all_i(v, p);
        break;
      }
      case 7:
        out = top_i(mk_top());
        break;
      case 8: {
        // A, A => B from an implication assumption when one fits
        for (const auto& q : pool)
          if (q->concl->kind == Kind::Imp && alpha_equal(q->concl->args[0], c)) {
            out = imp_e(p, q);
            break;
          }
        if (!out && c->kind == Kind::Imp) {
          for (const auto& q : pool)
            if (alpha_equal(q->concl, c->args[0])) {
              out = imp_e(q, p);
              break;
            }
        }
        break;
      }
      case 9: {
        std::string l = "h" + std::to_string(labels++);
        Expr a = g.prop(o);
        out = g.coin() ? imp_i(l, a, p) : imp_i(l, c, and_i(hyp(l, c), p));
        break;
      }
      case 10:
        if (c->kind == Kind::Or) {
          std::string la = "h" + std::to_string(labels++), lb = "h" + std::to_string(labels++);
          const Expr& A = c->args[0];
          const Expr& B = c->args[1];
          out = or_e(c, p, la, A, or_i(Side::Left, B, hyp(la, A)), lb, B, or_i(Side::Right, A, hyp(lb, B)));
        }
        break;
      case 11:
        if (c->kind == Kind::Exists) {
          std::set<Var> avoid = free_vars(c);
          avoid.insert(used.begin(), used.end());
          Var y = fresh_var("e", c->sort, avoid);
          used.insert(y);
          std::string k = "h" + std::to_string(labels++);
          out = ex_e(c, c, y, k, p, ex_i(c, c, mk_var(y), hyp(k, open_with(c, y))));
        }
        break;
    }
    if (out) pool.push_back(out);
  }
  // fold the unused pool entries into the conclusion
  std::set<const NDNode*> seen;
  std::function<void(const NDPtr&)> mark = [&](const NDPtr& p) {
    if (!seen.insert(p.get()).second) return;
    for (const auto& q : p->prem) mark(q);
  };
  NDPtr acc = pool.back();
  mark(acc);
  for (std::size_t k = pool.size() - 1; k-- > 0;) {
    if (seen.count(pool[k].get()) || !nd_open_hyps(pool[k]).empty()) continue;
    mark(pool[k]);
    acc = and_i(acc, pool[k]);
  }
  s.proof = acc;
  return s;
}

Corpus generate_corpus(std::size_t per_kind, std::uint64_t seed) {
  RandomGen g(seed);
  Corpus c;
  for (std::size_t k = 0; k < per_kind; ++k) {
    int order = 1 + static_cast<int>(k % 2);
    std::size_t lines = 4 + g.below(36);
    c.hilbert.push_back(random_hilbert_proof(g, order, lines, false));
    c.hilbert_zi.push_back(random_hilbert_proof(g, 2, 4 + g.below(36), true));
    c.nd.push_back(random_nd_proof(g, order, 3 + g.below(30), k % 2 == 0));
  }
  return c;
}

// ---------------------------------------------------------------- enumeration

namespace {

struct Enumerator {
  const Signature& sig;
  const std::vector<Var>& vars;
  std::map<std::pair<int, std::size_t>, std::vector<Expr>> cache;
  std::size_t cache_limit = 5;

  bool exact(Sort s, std::size_t n, const std::function<bool(const Expr&)>& f) {
    if (n <= cache_limit) {
      for (const auto& e : cached(s, n))
        if (!f(e)) return false;
      return true;
    }
    return generate(s, n, f);
  }

  const std::vector<Expr>& cached(Sort s, std::size_t n) {
    auto key = std::make_pair(s.code(), n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<Expr> out;
    generate(s, n, [&](const Expr& e) {
      out.push_back(e);
      return true;
    });
    return cache[key] = std::move(out);
  }

  bool generate(Sort s, std::size_t n, const std::function<bool(const Expr&)>& f) {
    if (n == 1)
      for (const auto& v : vars)
        if (v.sort == s && !f(mk_var(v))) return false;
    for (const auto& d : sig.funs()) {
      if (d.result != s) continue;
      if (d.args.empty()) {
        if (n == 1 && !f(mk_app(d.name, s, {}))) return false;
        continue;
      }
      std::vector<Expr> args;
      if (!args_of(d.args, 0, n - 1, args, [&](const std::vector<Expr>& as) { return f(mk_app(d.name, s, as)); }))
        return false;
    }
    return true;
  }

  bool args_of(const std::vector<Sort>& sorts, std::size_t k, std::size_t left, std::vector<Expr>& acc,
               const std::function<bool(const std::vector<Expr>&)>& f) {
    if (k == sorts.size()) return left == 0 ? f(acc) : true;
    std::size_t rest = sorts.size() - k - 1;
    if (left < rest + 1) return true;
    for (std::size_t m = 1; m + rest <= left; ++m) {
      bool go = exact(sorts[k], m, [&](const Expr& e) {
        acc.push_back(e);
        bool r = args_of(sorts, k + 1, left - m, acc, f);
        acc.pop_back();
        return r;
      });
      if (!go) return false;
    }
    return true;
  }
};

}  // namespace

void enumerate_terms(const Signature& sig, Sort s, std::size_t max_size, const std::vector<Var>& vars,
                     const std::function<bool(const Expr&)>& f) {
  Enumerator en{sig, vars, {}};
  for (std::size_t n = 1; n <= max_size; ++n)
    if (!en.exact(s, n, f)) return;
}

void enumerate_atoms(const Signature& sig, std::size_t max_size, const std::vector<Var>& vars,
                     const std::function<bool(const Expr&)>& f) {
  Enumerator en{sig, vars, {}};
  for (std::size_t n = 1; n <= max_size; ++n)
    for (const auto& p : sig.preds()) {
      if (p.args.empty()) {
        if (n == 1 && !f(mk_atom(p.name, {}))) return;
        continue;
      }
      std::vector<Expr> acc;
      bool go = en.args_of(p.args, 0, n - 1, acc, [&](const std::vector<Expr>& as) { return f(mk_atom(p.name, as)); });
      if (!go) return;
    }
}

}  // namespace dm
