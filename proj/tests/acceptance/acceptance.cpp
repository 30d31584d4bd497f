// Acceptance run: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "dm/bench.hpp"
#include "dm/encodings.hpp"
#include "dm/files.hpp"
#include "dm/hilbert.hpp"
#include "dm/nd.hpp"
#include "dm/rewrite.hpp"
#include "dm/syntax.hpp"
#include "dm/translators.hpp"

using namespace dm;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string data_path(const std::string& f) { return std::string(DM_TEST_DATA) + "/" + f; }

struct Outcome {
  bool ok = true;
  std::ostringstream note;
  void fail(const std::string& why) {
    if (ok) note << why;
    ok = false;
  }
};

std::vector<Expr> var_terms(const std::vector<Var>& vs) {
  std::vector<Expr> ts;
  for (Var v : vs) ts.push_back(mk_var(v));
  return ts;
}

std::size_t tree_size(const NDPtr& p) {
  std::size_t n = 1;
  for (const auto& q : p->prem) n += tree_size(q);
  return n;
}

// 1. Add: one inference modulo, affine growth without.
void c1(Outcome& o) {
  auto t0 = Clock::now();
  RewriteSystem R = add_system();
  RewriteSystem pure = empty_system(R.sig());
  auto pres = add_presentation1().axioms;
  std::optional<long> slope;
  std::size_t prev = 0;
  for (unsigned n = 1; n <= 64; ++n) {
    Verdict m = check_nd(gen_add_modulo_proof(n), {}, R);
    if (!m.ok || m.length != 1) o.fail("modulo n=" + std::to_string(n) + " length " + std::to_string(m.length));
    Verdict a = check_nd(gen_add_axiomatic_proof(n), pres, pure);
    if (!a.ok || a.length < n) o.fail("axiomatic n=" + std::to_string(n) + ": " + a.error);
    if (!alpha_equal(a.conclusion, add_atom(numeral(n), numeral(n), numeral(2 * n)))) o.fail("wrong conclusion");
    if (n > 1) {
      long d = long(a.length) - long(prev);
      if (slope && *slope != d) o.fail("slope changes at n=" + std::to_string(n));
      slope = d;
    }
    prev = a.length;
  }
  double s = seconds_since(t0);
  if (s >= 5) o.fail("took " + std::to_string(s) + " s");
  if (o.ok) o.note << "slope " << *slope << ", " << s << " s";
}

// 2. The worked decoding example.
void c2(Outcome& o) {
  auto t0 = Clock::now();
  Var x = mkvar("x", Sort::arith(0));
  Expr P = parse_prop(zi_signature(2), "(or (= x 0) (exists (y 1) (in0 x y)))");
  Normalized n = normalize(member(v0("t"), encode_prop(P, {x}).cls), ho_system(1));
  double s = seconds_since(t0);
  Expr want = parse_prop(classes_signature(1), "(or (= t 0) (exists (x 1) (in0 t x)))");
  if (!alpha_equal(n.nf, want)) o.fail("normal form " + print(n.nf));
  if (n.trace.steps.size() != 10) o.fail(std::to_string(n.trace.steps.size()) + " steps");
  if (s >= 0.1) o.fail("took " + std::to_string(s) + " s");
  if (o.ok) o.note << "10 steps, " << s << " s";
}

// 3. HO_i structure.
void c3(Outcome& o) {
  const std::string s_name = name_of(succ(zero())->sym), p_name = name_of(plus(zero(), zero())->sym),
                    t_name = name_of(times(zero(), zero())->sym);
  std::size_t total = 0;
  for (int i = 0; i <= 3; ++i) {
    RewriteSystem R = ho_system(i);
    if (!check_left_linear(R)) o.fail("HO_" + std::to_string(i) + " not left-linear");
    for (const auto& cp : critical_pairs(R)) {
      ++total;
      const Expr& pk = cp.peak;
      bool shape = pk->kind == Kind::App && pk->args.size() == 2 && name_of(pk->sym).rfind("sub", 0) == 0 &&
                   alpha_equal(pk->args[1], nil()) && pk->args[0]->kind == Kind::App;
      if (shape) {
        const std::string& f = name_of(pk->args[0]->sym);
        shape = f == s_name || f == p_name || f == t_name;
      }
      if (!shape) o.fail("unexpected peak " + print(pk));
      if (!joinable(cp, R, 10)) o.fail("not joinable: " + print(pk));
    }
  }
  if (o.ok) o.note << total << " peaks over HO_0..HO_3, all joinable";
}

// 4. Encoder round trip.
void c4(Outcome& o) {
  auto t0 = Clock::now();
  RandomGen g(2024);
  std::vector<RewriteSystem> ho;
  for (int i = 0; i <= 3; ++i) ho.push_back(ho_system(i));
  int passed = 0;
  for (int k = 0; k < 1000; ++k) {
    PropGenOptions opt;
    opt.order = 1 + k % 4;
    opt.max_size = 30;
    opt.allow_top = false;
    Expr p = g.prop(opt);
    std::set<Var> fvs = free_vars(p);
    std::vector<Var> fv(fvs.begin(), fvs.end());
    // fresh terms for the free variables
    std::vector<Var> ts;
    std::set<Var> avoid = fvs;
    for (Var v : fv) {
      Var t = fresh_var("t", v.sort, avoid);
      avoid.insert(t);
      ts.push_back(t);
    }
    Subst sigma;
    for (std::size_t n = 0; n < fv.size(); ++n) sigma[fv[n]] = mk_var(ts[n]);
    Expr want = apply_subst(p, sigma);
    Expr got = normalize(member(var_terms(ts), encode_prop(p, fv).cls), ho[opt.order - 1]).nf;
    if (alpha_equal(got, want))
      ++passed;
    else
      o.fail(print(p) + " decoded to " + print(got));
  }
  double s = seconds_since(t0);
  if (s >= 30) o.fail("took " + std::to_string(s) + " s");
  o.note << (o.ok ? "" : "; ") << passed << "/1000, " << s << " s";
}

// 5. WS_0 derivation lengths against size, exhaustively.
void c5(Outcome& o) {
  const std::size_t max_size = 10;
  RewriteSystem R = ws_system(0);
  const Signature& sig = R.sig();
  std::vector<Var> vars;
  for (Sort s : sig.sorts()) vars.push_back(mkvar("v" + s.str(), s));
  std::size_t seen = 0, bad = 0, worst = 0;
  Expr example;
  auto oracle = std::make_unique<DerivationOracle>(R, 1000);
  auto f = [&](const Expr& x) {
    ++seen;
    if (is_normal(x, R)) return true;
    if (oracle->memo_size() > 2000000) oracle = std::make_unique<DerivationOracle>(R, 1000);
    std::size_t len = oracle->longest(x);
    worst = std::max(worst, len);
    if (len > x->size) {
      if (!example || x->size < example->size) example = x;
      ++bad;
    }
    return true;
  };
  for (Sort s : sig.sorts()) enumerate_terms(sig, s, max_size, vars, f);
  enumerate_atoms(sig, max_size, vars, f);
  if (bad) {
    std::size_t el = DerivationOracle(R, 1000).longest(example);
    o.fail(std::to_string(bad) + " of " + std::to_string(seen) + " objects exceed their size, e.g. " +
           print(example) + " (size " + std::to_string(example->size) + ", length " + std::to_string(el) + ")");
  }
  o.note << (o.ok ? "" : "; ") << seen << " objects, longest " << worst;
}

// 6. Fixture corpus.
void c6(Outcome& o) {
  std::size_t checked = 0;
  auto expect = [&](const std::string& file, const Verdict& v, std::size_t len) {
    ++checked;
    if (!v.ok) o.fail(file + ": " + v.error + " at " + v.where);
    else if (v.length != len)
      o.fail(file + ": length " + std::to_string(v.length) + ", expected " + std::to_string(len));
  };
  {
    SExp s = read_sexp_file(data_path("or_compat.sexp"));
    Signature sig = parse_signature(s[1]);
    NDFile f = parse_nd_file(s, sig);
    expect("or_compat", check_nd(f.proof, f.axioms, empty_system(sig)), 6);
  }
  {
    RewriteSystem R = parse_system(read_sexp_file(data_path("or_system.sexp")));
    NDFile f = parse_nd_file(read_sexp_file(data_path("or_modulo.sexp")), R.sig());
    NDCheckOptions w;
    w.mode = CongruenceMode::Witnessed;
    expect("or_modulo", check_nd(f.proof, f.axioms, R, w), 2);
  }
  {
    RewriteSystem R = add_system();
    NDFile f = parse_nd_file(read_sexp_file(data_path("add_top.sexp")), R.sig());
    expect("add_top", check_nd(f.proof, f.axioms, R), 1);
  }
  const std::pair<const char*, std::size_t> frags[] = {
      {"ho:Leibniz", 1},  {"ho:Ind", 1},    {"ho:Comp", 5},  {"hha:Refl", 3},  {"hha:Leibniz_ax", 5},
      {"hha:Leibniz", 4}, {"hha:0!=s", 5},  {"hha:Inj_s", 7}, {"hha:Onto_s", 14}, {"hha:Ind", 5},
      {"hha:Comp", 5}};
  for (const auto& [name, len] : frags) {
    const Fragment* fr = find_fragment(name);
    if (!fr) {
      o.fail(std::string("no fragment ") + name);
      continue;
    }
    std::string file(name);
    for (char& c : file)
      if (c == ':') c = '_';
    if (file == "hha_0!=s") file = "hha_zero_ne_s";
    file = "frag_" + file + ".sexp";
    RewriteSystem R = fragment_system(*fr, 1);
    NDFile f = parse_nd_file(read_sexp_file(data_path(file)), R.sig());
    std::vector<Axiom> ax = fragment_assumptions(*fr, 1);
    ax.insert(ax.end(), f.axioms.begin(), f.axioms.end());
    NDCheckOptions opt;
    if (fr->system == "hha") {
      opt.mode = CongruenceMode::Mixed;
      opt.allow_ind = true;
    }
    expect(file, check_nd(f.proof, ax, R, opt), len);
  }
  if (o.ok) o.note << checked << " fixtures";
}

// 7. Translation bounds over a generated corpus.
void c7(Outcome& o) {
  Corpus c = generate_corpus(70, 7);
  std::size_t n = 0;
  double h2nd = 0, fz = 0, nd2h_df = 0;
  const double K = double(TranslationConstants::nd2h_k());
  for (const auto& p : c.hilbert) {
    ++n;
    try {
      NDTranslation t = hilbert_to_nd(p);
      RewriteSystem pure = empty_system(zi_signature(p.cfg.order));
      Verdict v = recheck_serialized(t.proof, t.assumptions, pure);
      if (!v.ok) o.fail("h2nd output fails to recheck: " + v.error);
      h2nd = std::max(h2nd, double(v.length) / double(p.lines.size()));
    } catch (const std::exception& e) {
      o.fail(std::string("h2nd: ") + e.what());
    }
  }
  for (const auto& p : c.hilbert_zi) {
    ++n;
    try {
      NDTranslation t = zi_hilbert_to_fz_modulo(p);
      RewriteSystem R = ho_system(class_level(p.cfg.order));
      Verdict v = recheck_serialized(t.proof, t.assumptions, R);
      if (!v.ok) o.fail("fz output fails to recheck: " + v.error);
      fz = std::max(fz, double(v.length) / double(p.lines.size()));
    } catch (const std::exception& e) {
      o.fail(std::string("fz: ") + e.what());
    }
  }
  for (const auto& s : c.nd) {
    ++n;
    try {
      HilbertTranslation t = nd_to_hilbert(s.proof, s.assumptions, {s.order, false});
      HVerdict v = recheck_serialized(t.proof);
      if (!v.ok) o.fail("nd2h output fails to recheck at line " + std::to_string(v.line) + ": " + v.error);
      double in = double(tree_size(s.proof));
      if (std::log(double(v.length)) > in * std::log(K) + 1e-9) o.fail("nd2h exceeds K^|pi|");
      if (discharge_free(s.proof)) {
        if (double(v.length) > K * in) o.fail("nd2h exceeds K*|pi| on a discharge-free proof");
        nd2h_df = std::max(nd2h_df, double(v.length) / in);
      }
    } catch (const std::exception& e) {
      o.fail(std::string("nd2h: ") + e.what());
    }
  }
  if (n < 200) o.fail("corpus has only " + std::to_string(n) + " proofs");
  if (h2nd > TranslationConstants::h2nd) o.fail("h2nd ratio " + std::to_string(h2nd));
  if (fz > TranslationConstants::fz) o.fail("fz ratio " + std::to_string(fz));
  o.note << (o.ok ? "" : "; ") << n << " proofs, h2nd ratio " << h2nd << ", fz ratio " << fz
         << ", nd2h discharge-free ratio " << nd2h_df << " (K = " << K << ")";
}

// 8. Fragment constancy.
void c8(Outcome& o) {
  BenchReport r = bench_fragments(100, 8);
  if (!r.ok) o.fail(r.error);
  for (const auto& row : r.rows)
    if (row.min_length != row.max_length)
      o.fail(row.system + ": " + std::to_string(row.min_length) + ".." + std::to_string(row.max_length));
  if (o.ok) o.note << r.rows.size() << " fragments constant over 100 samples";
}

// 9. Non-termination guard.
void c9(Outcome& o) {
  RewriteSystem R = hha_system(1);
  Expr start = member(v0("x"), vc("p"));
  for (std::size_t fuel : {10u, 100u, 1000u, 10000u}) {
    NormalizeOptions n;
    n.fuel = fuel;
    try {
      normalize(start, R, n);
      o.fail("terminated within fuel " + std::to_string(fuel));
    } catch (const FuelExhausted&) {
    }
  }
  const Fragment* ind = find_fragment("hha:Ind");
  NDFile f = parse_nd_file(read_sexp_file(data_path("frag_hha_Ind.sexp")), R.sig());
  NDCheckOptions w;
  w.mode = CongruenceMode::Witnessed;
  w.allow_ind = true;
  try {
    NDPtr wit = witness_all(f.proof, R);
    Verdict v = check_nd(wit, fragment_assumptions(*ind, 1), R, w);
    if (!v.ok) o.fail("witnessed Ind fragment: " + v.error + " at " + v.where);
  } catch (const std::exception& e) {
    o.fail(std::string("witnessing the Ind fragment: ") + e.what());
  }
  if (o.ok) o.note << "fuel 10..10000 exhausted, Ind fragment checks witnessed";
}

// 10. Negative cases.
void c10(Outcome& o) {
  const Sort N = Sort::arith(0);
  Signature z = zi_signature(1);
  RewriteSystem pure = empty_system(z);
  Var x = mkvar("x", N), y = mkvar("y", N);
  {
    Expr Ax = parse_prop(z, "(= x 0)");
    Verdict v = check_nd(nd::imp_i("h", Ax, nd::all_i(x, nd::hyp("h", Ax))), {}, pure);
    if (v.ok) o.fail("all-i with a non-fresh eigenvariable accepted");
  }
  {
    Expr A = parse_prop(z, "(= x 0)");
    HilbertBuilder b({1, false});
    int l = b.schema(schema0("I", {{"A", A}}));
    b.gen(l, x);
    if (check_hilbert(b.take()).ok) o.fail("Gen with the variable free in A accepted");
  }
  {
    Template A = Template::unary(x, parse_prop(z, "(exists (y 0) (= x (s y)))"));
    HilbertProof p;
    p.cfg = {1, false};
    HLine l;
    l.kind = HKind::Schema;
    l.inst = schema_ui(0, A, mk_var(y));
    l.prop = mk_imp(forall_(x, A.body), parse_prop(z, "(exists (y 0) (= y (s y)))"));
    p.lines.push_back(l);
    if (check_hilbert(p).ok) o.fail("UI capture accepted");
    HilbertBuilder b({1, false});
    try {
      b.schema(schema_ui(0, A, mk_var(y)));
      o.fail("builder accepted UI capture");
    } catch (const SideConditionError&) {
    }
  }
  {
    RewriteSystem R = add_system();
    Expr bad = add_atom(numeral(1), numeral(1), numeral(1));
    Normalized n = normalize(add_atom(numeral(1), numeral(1), numeral(2)), R);
    for (auto mode : {CongruenceMode::Auto, CongruenceMode::Witnessed, CongruenceMode::Mixed}) {
      NDCheckOptions opt;
      opt.mode = mode;
      if (check_nd(nd::top_i(bad), {}, R, opt).ok) o.fail("Add(1,1,1) accepted as top");
      if (check_nd(nd::with_via(nd::top_i(bad), 0, n.trace), {}, R, opt).ok) o.fail("forged trace accepted");
    }
  }
  if (o.ok) o.note << "all rejected";
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Outcome&)>> criteria[] = {
      {"add speed-up", c1},         {"worked decoding example", c2}, {"HO_i structure", c3},
      {"encoder round trip", c4},   {"WS_0 length <= size", c5},     {"fixture corpus", c6},
      {"translation bounds", c7},   {"fragment constancy", c8},      {"non-termination guard", c9},
      {"negative tests", c10}};
  int failed = 0, k = 0;
  for (const auto& [name, run] : criteria) {
    ++k;
    Outcome o;
    try {
      run(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    if (!o.ok) ++failed;
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << k << " " << name << ": " << o.note.str() << std::endl;
  }
  std::cout << (10 - failed) << "/10 criteria pass" << std::endl;
  return failed ? 1 : 0;
}
