#include "doctest.h"

#include <cmath>

#include "dm/bench.hpp"
#include "dm/files.hpp"
#include "json.hpp"

using namespace dm;

TEST_CASE("Add generators") {
  RewriteSystem R = add_system();
  auto pres = add_presentation1().axioms;
  NDPtr z = gen_add_axiomatic_proof(0);
  CHECK(nd_length(z) == 1);
  CHECK(z->rule == NDRule::AllE);
  for (unsigned n = 0; n <= 6; ++n) {
    CHECK(nd_length(gen_add_modulo_proof(n)) == 1);
    NDPtr a = gen_add_axiomatic_proof(n);
    CHECK(nd_length(a) == 1 + 5 * n);
    Verdict v = check_nd(a, pres, empty_system(R.sig()));
    CHECK_MESSAGE(v.ok, v.error << " at " << v.where);
    CHECK(alpha_equal(v.conclusion, add_atom(numeral(n), numeral(n), numeral(2 * n))));
  }
}

TEST_CASE("growth fitting") {
  std::vector<std::pair<double, double>> c, l, q, e;
  for (int n = 1; n <= 30; ++n) {
    c.push_back({double(n), 7.0});
    l.push_back({double(n), 3.0 * n + 1});
    q.push_back({double(n), 2.0 * n * n});
    e.push_back({double(n), std::pow(2.0, n)});
  }
  CHECK(fit_growth(c).cls == "constant");
  CHECK(fit_growth(l).cls == "linear");
  GrowthFit fq = fit_growth(q);
  CHECK(fq.cls == "poly-2");
  CHECK(fq.exponent == doctest::Approx(2.0).epsilon(0.01));
  CHECK(fit_growth(e).cls == "exponential");
}

TEST_CASE("bench_add rows") {
  BenchReport r = bench_add(8);
  CHECK(r.ok);
  std::size_t last = 0;
  for (const auto& row : r.rows) {
    if (row.system == "modulo") CHECK(row.length == 1);
    if (row.system == "axiomatic") {
      CHECK(row.length > last);
      last = row.length;
    }
  }
  CHECK(r.fits.at("modulo").cls == "constant");
  CHECK(r.fits.at("axiomatic").cls == "linear");
  CHECK(r.constants.at("axiomatic.slope") == 5);
}

TEST_CASE("reports serialize deterministically") {
  BenchReport r = bench_add(3);
  std::string j1 = report_json(r), j2 = report_json(bench_add(3));
  auto a = nlohmann::json::parse(j1), b = nlohmann::json::parse(j2);
  for (auto& row : a["rows"]) row.erase("wall_ms");
  for (auto& row : b["rows"]) row.erase("wall_ms");
  CHECK(a == b);
  CHECK(a["experiment"] == "add");
  CHECK(a["rows"].size() == 6);
  std::string csv = report_csv(r);
  CHECK(csv.rfind("experiment,n,system,length", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
}

TEST_CASE("fragment constancy on a few samples") {
  BenchReport r = bench_fragments(5, 3);
  CHECK_MESSAGE(r.ok, r.error);
  for (const auto& row : r.rows) CHECK(row.min_length == row.max_length);
}

TEST_CASE("growth on a small corpus") {
  BenchReport r = bench_growth(generate_corpus(10, 4));
  CHECK_MESSAGE(r.ok, r.error);
  CHECK(r.constants.at("h2nd.max_ratio") <= TranslationConstants::h2nd);
  CHECK(r.constants.at("fz.max_ratio") <= TranslationConstants::fz);
}

TEST_CASE("probes") {
  BenchReport ws = probe("ws", 1, 14, 20, 1000);
  CHECK_MESSAGE(ws.ok, ws.error);
  CHECK(ws.constants.at("ws.max_length_over_size") <= 1.0);
  BenchReport h = probe("hha", 1, 10, 1, 200);
  CHECK(h.ok);
  CHECK(h.constants.at("fuel_guard") == 200);
  CHECK_THROWS(probe("nope", 1, 10, 1, 10));
}

TEST_CASE("enumeration counts small terms") {
  Signature s = zi_signature(1);
  std::vector<Var> vars{mkvar("x", Sort::arith(0))};
  std::size_t n = 0;
  // size <= 2 over 0, s, + , * and x: 0, x, s(0), s(x)
  enumerate_terms(s, Sort::arith(0), 2, vars, [&](const Expr&) {
    ++n;
    return true;
  });
  CHECK(n == 4);
  std::size_t m = 0;
  enumerate_terms(s, Sort::arith(0), 3, vars, [&](const Expr& e) {
    CHECK(e->size <= 3);
    ++m;
    return m < 5;
  });
  CHECK(m == 5);
}

TEST_CASE("corpus sizes") {
  Corpus c = generate_corpus(4, 1);
  CHECK(c.hilbert.size() == 4);
  CHECK(c.hilbert_zi.size() == 4);
  CHECK(c.nd.size() >= 4);
}
