#include "doctest.h"

#include "dm/bench.hpp"
#include "dm/files.hpp"
#include "dm/syntax.hpp"
#include "dm/translators.hpp"

using namespace dm;

namespace {

const Sort N = Sort::arith(0);

Expr P(const char* text, int order = 1) { return parse_prop(zi_signature(order), text); }

}  // namespace

TEST_CASE("h2nd on a K / MP proof") {
  HilbertBuilder b({1, false});
  Expr A = P("(= 0 0)"), B = P("(= (s 0) 0)");
  int l1 = b.schema(schema0("I", {{"A", A}}));
  int l2 = b.schema(schema0("K", {{"A", mk_imp(A, A)}, {"B", B}}));
  b.mp(l1, l2);
  HilbertProof h = b.take();
  REQUIRE(check_hilbert(h));
  NDTranslation t = hilbert_to_nd(h);
  Verdict v = check_nd(t.proof, t.assumptions, empty_system(zi_signature(1)));
  CHECK_MESSAGE(v.ok, v.error << " at " << v.where);
}

TEST_CASE("nd2h on identity") {
  Expr A = P("(= 0 0)");
  NDPtr p = nd::imp_i("a", A, nd::hyp("a", A));
  HilbertTranslation h = nd_to_hilbert(p, {}, {1, false});
  HVerdict v = check_hilbert(h.proof);
  CHECK_MESSAGE(v.ok, v.error << " line " << v.line);
}

TEST_CASE("fragments instantiate") {
  for (const auto& f : fragment_library()) {
    Var x = mkvar("x", N);
    Template t = Template::unary(x, P("(= x x)"));
    if (f.name.find("Comp") != std::string::npos) t = Template::unary(x, P("(= x 0)"));
    INFO(f.name);
    try {
      NDPtr p = instantiate_fragment(f, t, 0, 1);
      MESSAGE(f.name << " " << nd_length(p));
    } catch (const std::exception& e) {
      FAIL(e.what());
    }
  }
}

TEST_CASE("eliminate add axioms") {
  auto c1 = add_certificate1(), c2 = add_certificate2();
  RewriteSystem R = add_system();
  auto e1 = check_certificate(c1, R);
  CHECK_MESSAGE(!e1, *e1);
  auto e2 = check_certificate(c2, R);
  CHECK_MESSAGE(!e2, *e2);
}

TEST_CASE("h2nd: a C instance becomes its 5-inference template") {
  Expr A = P("(= x 0)"), B = P("(= y 0)"), C = P("(= 0 0)");
  HilbertBuilder b({1, false});
  b.schema(schema0("C", {{"A", A}, {"B", B}, {"C", C}}));
  HilbertProof h = b.take();
  REQUIRE(check_hilbert(h));
  NDTranslation t = hilbert_to_nd(h);
  CHECK(nd_length(t.proof) == 5);
  CHECK(gentzen_template_length("C") == 5);
  CHECK(alpha_equal(t.proof->concl, h.conclusion()));
  CHECK(check_nd(t.proof, t.assumptions, empty_system(zi_signature(1))).ok);
}

TEST_CASE("h2nd: a Refl instance stays an assumption") {
  HilbertBuilder b({1, false});
  b.schema(schema0("Refl"));
  NDTranslation t = hilbert_to_nd(b.take());
  CHECK(nd_length(t.proof) == 0);
  CHECK(t.proof->rule == NDRule::Ax);
  REQUIRE(t.assumptions.size() == 1);
  CHECK(alpha_equal(t.assumptions[0].prop, refl_axiom()));
}

TEST_CASE("h2nd: K, an axiom and MP join with one imp-e") {
  Expr A = P("(= 0 0)"), B = P("(= x 0)");
  HilbertBuilder b({1, false});
  int a = b.axiom("a", A);
  int k = b.schema(schema0("K", {{"A", A}, {"B", B}}));
  b.mp(a, k);
  HilbertProof h = b.take();
  h.axioms.push_back({"a", A});
  REQUIRE(check_hilbert(h));
  NDTranslation t = hilbert_to_nd(h);
  CHECK(t.proof->rule == NDRule::ImpE);
  CHECK(nd_length(t.proof) == gentzen_template_length("K") + 1);
  CHECK(check_nd(t.proof, t.assumptions, empty_system(zi_signature(1))).ok);
}

TEST_CASE("h2nd: every propositional template checks and has its pinned length") {
  Expr A = P("(= x 0)"), B = P("(= y 0)"), C = P("(= 0 0)");
  for (const char* s : {"I", "K", "W", "C", "B", "Proj_l", "Proj_r", "Pair", "Inj_l", "Inj_r", "Case", "EFSQ",
                        "Contradiction", "T", "TND"}) {
    INFO(s);
    HilbertBuilder b({1, false});
    b.schema(schema0(s, {{"A", A}, {"B", B}, {"C", C}}));
    HilbertProof h = b.take();
    REQUIRE(check_hilbert(h));
    NDTranslation t = hilbert_to_nd(h);
    CHECK(nd_length(t.proof) == gentzen_template_length(s));
    Verdict v = check_nd(t.proof, t.assumptions, empty_system(zi_signature(1)));
    CHECK_MESSAGE(v.ok, v.error);
  }
}

TEST_CASE("nd2h: abstracting a hypothesis gives one I line") {
  Expr A = P("(= 0 0)");
  HilbertProof h = nd_abstract(nd::hyp("a", A), "a", A, {}, {1, false});
  REQUIRE(h.lines.size() == 1);
  CHECK(h.lines[0].inst.schema == "I");
  CHECK(check_hilbert(h));
}

TEST_CASE("nd2h: a TND node is one TND line") {
  Expr A = P("(= x 0)");
  HilbertTranslation t = nd_to_hilbert(nd::tnd(mk_or(A, neg(A)), A), {}, {1, false});
  REQUIRE(t.proof.lines.size() == 1);
  CHECK(t.proof.lines[0].inst.schema == "TND");
}

TEST_CASE("nd2h: abstracting A over imp-e replays the C, T, W case") {
  // B from A and A => B, abstracting A:
  // T_A(A) = I (1 line), T_A(A => B) = axiom, K, MP (3 lines), then
  // C, MP, T, MP, MP, W, MP (7 lines)
  Expr A = P("(= 0 0)"), B = P("(= x 0)");
  std::vector<Axiom> ax{{"ab", mk_imp(A, B)}};
  NDPtr p = nd::imp_e(nd::hyp("a", A), nd::ax("ab", mk_imp(A, B)));
  HilbertProof h = nd_abstract(p, "a", A, ax, {1, false});
  h.axioms = ax;
  HVerdict v = check_hilbert(h);
  CHECK_MESSAGE(v.ok, v.error << " line " << v.line);
  CHECK(h.lines.size() == 11);
  CHECK(alpha_equal(h.conclusion(), mk_imp(A, B)));
}

TEST_CASE("nd2h: the fixed lemma proofs") {
  Expr A = P("(= 0 0)"), B = P("(= x 0)"), C = P("(= y 0)");
  HilbertProof v1 = varpi1(A, B, C, {1, false}), v2 = varpi2(A, B, C, {1, false});
  CHECK(check_hilbert(v1));
  CHECK(check_hilbert(v2));
  CHECK(alpha_equal(v1.conclusion(), mk_imp(mk_imp(A, mk_imp(B, C)), mk_imp(mk_and(A, B), C))));
  CHECK(alpha_equal(v2.conclusion(), mk_imp(mk_imp(mk_and(A, B), C), mk_imp(A, mk_imp(B, C)))));
  CHECK(v1.lines.size() == 17);
  CHECK(v2.lines.size() == 17);
  CHECK(nd_to_hilbert_case_constant() == 37);
}

TEST_CASE("nd2h rejects proofs that need congruence") {
  RewriteSystem R = add_system();
  CHECK_THROWS_AS(nd_to_hilbert(gen_add_modulo_proof(2), {}, {1, false}), TranslationError);
}

TEST_CASE("fz: a Leibniz instance is one all-e on Leibniz_ax") {
  Var x = mkvar("x", N);
  HilbertBuilder b({1, false});
  SchemaInstance in = schema0("Leibniz");
  in.props["A"] = Template::unary(x, P("(= x x)"));
  b.schema(in);
  HilbertProof h = b.take();
  REQUIRE(check_hilbert(h));
  NDTranslation t = zi_hilbert_to_fz_modulo(h);
  CHECK(nd_length(t.proof) == 1);
  CHECK(alpha_equal(t.proof->concl, h.conclusion()));
  REQUIRE(t.assumptions.size() == 1);
  CHECK(t.assumptions[0].name == "Leibniz_ax");
  CHECK(check_nd(t.proof, t.assumptions, ho_system(0)).ok);
}

TEST_CASE("fz: a Comp instance is the 5-inference fragment") {
  Var x = mkvar("x", N);
  HilbertBuilder b({2, false});
  SchemaInstance in = schema0("Comp");
  in.j = 0;
  in.props["A"] = Template::unary(x, P("(= x 0)", 2));
  b.schema(in);
  NDTranslation t = zi_hilbert_to_fz_modulo(b.take());
  CHECK(nd_length(t.proof) == 5);
  CHECK(t.assumptions.empty());
  CHECK(check_nd(t.proof, t.assumptions, ho_system(1)).ok);
}

TEST_CASE("fz: purely propositional input uses no FZ axiom") {
  RandomGen g(3);
  HilbertProof h = random_hilbert_proof(g, 1, 10, false);
  NDTranslation t = zi_hilbert_to_fz_modulo(h);
  for (const auto& a : t.assumptions) CHECK_FALSE(fz_axioms(1).find(a.name));
}

TEST_CASE("hha: Refl and 0!=s fragments") {
  const Fragment* refl = find_fragment("hha:Refl");
  const Fragment* zs = find_fragment("hha:0!=s");
  REQUIRE(refl);
  REQUIRE(zs);
  Template none = Template::nullary(mk_top());
  NDPtr r = instantiate_fragment(*refl, none, 0, 1);
  CHECK(nd_length(r) == 3);
  CHECK(alpha_equal(r->concl, refl_axiom()));
  NDPtr z = instantiate_fragment(*zs, none, 0, 1);
  CHECK(alpha_equal(z->concl, robinson_axiom("0!=s")));
  CHECK(print(z->concl) == "(forall (a 0) (imp (= 0 (s a)) bot))");
}

TEST_CASE("hha: Z_i assumptions are all discharged") {
  std::vector<Axiom> ax{{"refl", refl_axiom()}, {"zs", robinson_axiom("0!=s")}};
  NDPtr p = nd::and_i(nd::ax("refl", refl_axiom()), nd::ax("zs", robinson_axiom("0!=s")));
  NDTranslation t = zi_nd_to_hha(p, ax, 1);
  CHECK(t.assumptions.empty());
  NDCheckOptions o;
  o.mode = CongruenceMode::Mixed;
  o.allow_ind = true;
  Verdict v = check_nd(t.proof, {}, hha_system(0), o);
  CHECK_MESSAGE(v.ok, v.error << " at " << v.where);
}

TEST_CASE("hha: an unknown assumption is refused") {
  Expr A = P("(= 0 (s 0))");
  std::vector<Axiom> ax{{"bogus", A}};
  CHECK_THROWS_AS(zi_nd_to_hha(nd::ax("bogus", A), ax, 1), TranslationError);
}

TEST_CASE("eliminate: a proof without presentation axioms is unchanged") {
  auto c1 = add_certificate1(), c2 = add_certificate2();
  Expr A = add_atom(numeral(0), numeral(0), numeral(0));
  NDPtr p = nd::imp_i("h", A, nd::hyp("h", A));
  NDTranslation t = eliminate_axioms(p, c1, c2, add_system());
  CHECK(nd_length(t.proof) == nd_length(p));
  CHECK(alpha_equal(t.proof->concl, p->concl));
}

TEST_CASE("eliminate: presentation 1 to presentation 2 round trip") {
  auto c1 = add_certificate1(), c2 = add_certificate2();
  RewriteSystem R = add_system();
  for (unsigned n : {0u, 1u, 3u}) {
    NDPtr p = gen_add_axiomatic_proof(n);
    NDTranslation t = eliminate_axioms(p, c1, c2, R);
    Verdict v = check_nd(t.proof, c2.presentation, empty_system(R.sig()));
    CHECK_MESSAGE(v.ok, v.error << " at " << v.where);
    CHECK(alpha_equal(t.proof->concl, p->concl));
    NDTranslation back = eliminate_axioms(t.proof, c2, c1, R);
    Verdict w = check_nd(back.proof, c1.presentation, empty_system(R.sig()));
    CHECK_MESSAGE(w.ok, w.error << " at " << w.where);
  }
}

TEST_CASE("eliminate: a missing certificate entry is an error") {
  auto c1 = add_certificate1(), c2 = add_certificate2();
  c1.axiom_proofs.erase("adds");
  NDPtr p = gen_add_axiomatic_proof(2);
  CHECK_THROWS(eliminate_axioms(p, c1, c2, add_system()));
  auto bad = add_certificate2();
  bad.rule_proofs.erase(bad.rule_proofs.begin());
  CHECK(check_certificate(bad, add_system()));
}

TEST_CASE("rule statements") {
  RewriteSystem R = add_system();
  CHECK(print(rule_statement(*R.rule("add0"))) == "(forall (y 0) (and (imp (Add 0 y y) top) (imp top (Add 0 y y))))");
  Rule t = ho_system(0).rules().front();
  CHECK(rule_statement(t)->kind == Kind::Forall);
}

TEST_CASE("property: translations preserve conclusions and recheck") {
  Corpus c = generate_corpus(15, 99);
  for (const auto& h : c.hilbert) {
    NDTranslation t = hilbert_to_nd(h);
    CHECK(alpha_equal(t.proof->concl, h.conclusion()));
    CHECK(check_nd(t.proof, t.assumptions, empty_system(zi_signature(h.cfg.order))).ok);
  }
  for (const auto& h : c.hilbert_zi) {
    NDTranslation t = zi_hilbert_to_fz_modulo(h);
    CHECK(alpha_equal(t.proof->concl, h.conclusion()));
    Verdict v = check_nd(t.proof, t.assumptions, ho_system(class_level(h.cfg.order)));
    CHECK_MESSAGE(v.ok, v.error << " at " << v.where);
  }
  for (const auto& s : c.nd) {
    HilbertTranslation t = nd_to_hilbert(s.proof, s.assumptions, {s.order, false});
    t.proof.axioms = s.assumptions;
    HVerdict v = check_hilbert(t.proof);
    CHECK_MESSAGE(v.ok, v.error << " line " << v.line);
    CHECK(alpha_equal(t.proof.conclusion(), s.proof->concl));
  }
}
