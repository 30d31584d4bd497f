#include <chrono>

#include "dm/bench.hpp"
#include "dm/files.hpp"

namespace dm {

NDPtr gen_add_modulo_proof(unsigned n) { return nd::top_i(add_atom(numeral(n), numeral(n), numeral(2 * n))); }

NDPtr gen_add_axiomatic_proof(unsigned n) {
  Presentation p = add_presentation1();
  Expr a0 = p.find("add0")->prop;
  Expr as = p.find("adds")->prop;
  Expr m = numeral(n);
  NDPtr cur = nd::all_e(m, nd::ax("add0", a0));
  for (unsigned k = 0; k < n; ++k) {
    NDPtr inst = nd::ax("adds", as);
    for (const Expr& t : {numeral(k), m, numeral(n + k)}) inst = nd::all_e(t, inst);
    cur = nd::imp_e(cur, nd::and_e(Side::Right, inst));
  }
  return cur;
}

Verdict recheck_serialized(const NDPtr& p, const std::vector<Axiom>& assumptions, const RewriteSystem& R,
                           const NDCheckOptions& opt) {
  std::string text = write_sexp(nd_file_to_sexp(NDFile{assumptions, p}));
  NDFile back = parse_nd_file(read_sexp(text), R.sig());
  return check_nd(back.proof, back.axioms, R, opt);
}

HVerdict recheck_serialized(const HilbertProof& p) {
  std::string text = write_sexp(hilbert_to_sexp(p));
  return check_hilbert(parse_hilbert(read_sexp(text)));
}

BenchReport bench_add(unsigned n_max) {
  using clock = std::chrono::steady_clock;
  BenchReport r;
  r.experiment = "add";
  RewriteSystem mod = add_system();
  RewriteSystem pure = empty_system(add_signature());
  std::vector<Axiom> gamma = add_presentation1().axioms;
  std::vector<std::pair<double, double>> pm, pa;
  std::size_t prev = 0;
  for (unsigned n = 1; n <= n_max; ++n) {
    for (int which = 0; which < 2; ++which) {
      auto t0 = clock::now();
      NDPtr p = which == 0 ? gen_add_modulo_proof(n) : gen_add_axiomatic_proof(n);
      Verdict v = which == 0 ? recheck_serialized(p, {}, mod) : recheck_serialized(p, gamma, pure);
      double ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
      BenchRow row;
      row.n = n;
      row.system = which == 0 ? "modulo" : "axiomatic";
      row.length = v.length;
      row.rewrite_steps = v.rewrite_steps;
      row.wall_ms = ms;
      if (!v) {
        r.ok = false;
        r.error = row.system + " proof for n=" + std::to_string(n) + " fails: " + v.error;
        return r;
      }
      r.rows.push_back(row);
      (which == 0 ? pm : pa).push_back({double(n), double(v.length)});
      if (which == 0 && v.length != 1) {
        r.ok = false;
        r.error = "modulo proof longer than 1 at n=" + std::to_string(n);
      }
      if (which == 1) {
        if (n > 1 && v.length <= prev) {
          r.ok = false;
          r.error = "axiomatic column not increasing at n=" + std::to_string(n);
        }
        prev = v.length;
      }
    }
  }
  r.fits["modulo"] = fit_growth(pm);
  r.fits["axiomatic"] = fit_growth(pa);
  if (pa.size() >= 2) r.constants["axiomatic.slope"] = pa[1].second - pa[0].second;
  return r;
}

}  // namespace dm
