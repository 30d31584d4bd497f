#include <chrono>
#include <cmath>
#include <sstream>

#include "dm/bench.hpp"
#include "dm/files.hpp"
#include "dm/syntax.hpp"
#include "json.hpp"

namespace dm {

namespace {

using clock_t_ = std::chrono::steady_clock;

double ms_since(clock_t_::time_point t0) {
  return std::chrono::duration<double, std::milli>(clock_t_::now() - t0).count();
}

// y = a + b x by least squares; returns (a, b, sum of squared residuals)
std::tuple<double, double, double> regress(const std::vector<double>& x, const std::vector<double>& y) {
  double n = double(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sx += x[k];
    sy += y[k];
    sxx += x[k] * x[k];
    sxy += x[k] * y[k];
  }
  double den = n * sxx - sx * sx;
  double b = den == 0 ? 0 : (n * sxy - sx * sy) / den;
  double a = (sy - b * sx) / n;
  double res = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    double d = y[k] - a - b * x[k];
    res += d * d;
  }
  return {a, b, res};
}

std::size_t tree_size(const NDPtr& p) {
  std::size_t n = 1;
  for (const auto& q : p->prem) n += tree_size(q);
  return n;
}

}  // namespace

GrowthFit fit_growth(const std::vector<std::pair<double, double>>& pts) {
  std::vector<double> n, logn, logy;
  for (const auto& [x, y] : pts)
    if (x > 0 && y > 0) {
      n.push_back(x);
      logn.push_back(std::log(x));
      logy.push_back(std::log(y));
    }
  GrowthFit f;
  if (logy.empty()) {
    f.cls = "constant";
    return f;
  }
  double mean = 0;
  for (double v : logy) mean += v;
  mean /= double(logy.size());
  double rc = 0;
  for (double v : logy) rc += (v - mean) * (v - mean);
  double m = double(logy.size());
  if (rc / m < 1e-6 || logy.size() < 3) {
    f.cls = "constant";
    f.coef = std::exp(mean);
    f.residual = std::sqrt(rc / m);
    return f;
  }
  auto [pa, pb, pr] = regress(logn, logy);
  auto [ea, eb, er] = regress(n, logy);
  if (pr <= er) {
    long d = std::lround(pb);
    f.cls = d <= 0 ? "constant" : d == 1 ? "linear" : "poly-" + std::to_string(d);
    f.exponent = pb;
    f.coef = std::exp(pa);
    f.residual = std::sqrt(pr / m);
  } else {
    f.cls = "exponential";
    f.exponent = std::exp(eb);
    f.coef = std::exp(ea);
    f.residual = std::sqrt(er / m);
  }
  return f;
}

std::string report_json(const BenchReport& r) {
  nlohmann::json j;
  j["experiment"] = r.experiment;
  j["ok"] = r.ok;
  if (!r.error.empty()) j["error"] = r.error;
  j["rows"] = nlohmann::json::array();
  for (const auto& row : r.rows)
    j["rows"].push_back({{"n", row.n},
                         {"system", row.system},
                         {"length", row.length},
                         {"input_length", row.input_length},
                         {"rewrite_steps", row.rewrite_steps},
                         {"wall_ms", row.wall_ms},
                         {"min_length", row.min_length},
                         {"max_length", row.max_length}});
  j["fits"] = nlohmann::json::object();
  for (const auto& [k, f] : r.fits)
    j["fits"][k] = {{"class", f.cls}, {"exponent", f.exponent}, {"coef", f.coef}, {"residual", f.residual}};
  j["constants"] = r.constants;
  return j.dump(2);
}

std::string report_csv(const BenchReport& r) {
  std::ostringstream o;
  o << "experiment,n,system,length,input_length,rewrite_steps,wall_ms,min_length,max_length\n";
  for (const auto& row : r.rows)
    o << r.experiment << ',' << row.n << ',' << row.system << ',' << row.length << ',' << row.input_length << ','
      << row.rewrite_steps << ',' << row.wall_ms << ',' << row.min_length << ',' << row.max_length << '\n';
  return o.str();
}

// ---------------------------------------------------------------- fragments

BenchReport bench_fragments(unsigned samples, std::uint64_t seed) {
  BenchReport r;
  r.experiment = "fragments";
  RandomGen g(seed);
  for (const auto& f : fragment_library()) {
    FragmentStat st;
    std::size_t steps = 0;
    auto t0 = clock_t_::now();
    try {
      for (unsigned s = 0; s < samples; ++s) {
        int i = 1 + static_cast<int>(s % 2);
        int j = f.sorted ? static_cast<int>(g.below(i)) : 0;
        Template t = f.templated ? g.unary_template(i + 1, j, 12) : Template::nullary(mk_bot());
        NDPtr p = instantiate_fragment(f, t, j, i);
        if (s == 0) {
          RewriteSystem R = fragment_system(f, i);
          NDCheckOptions opt;
          opt.mode = f.system == "hha" ? CongruenceMode::Mixed : CongruenceMode::Auto;
          Verdict v = recheck_serialized(p, fragment_assumptions(f, i), R, opt);
          if (!v) throw TranslationError("serialized recheck fails: " + v.error);
          steps = v.rewrite_steps;
        }
        st.note(nd_length(p));
      }
    } catch (const std::exception& e) {
      r.ok = false;
      r.error = f.name + ": " + e.what();
      return r;
    }
    BenchRow row;
    row.n = samples;
    row.system = f.name;
    row.length = st.max_len;
    row.min_length = st.min_len;
    row.max_length = st.max_len;
    row.rewrite_steps = steps;
    row.wall_ms = ms_since(t0);
    if (st.min_len != st.max_len) {
      r.ok = false;
      r.error = f.name + " is not constant";
    }
    r.rows.push_back(row);
  }
  return r;
}

// ---------------------------------------------------------------- growth

BenchReport bench_growth(const Corpus& c) {
  BenchReport r;
  r.experiment = "growth";
  std::map<std::string, std::vector<std::pair<double, double>>> pts;
  std::map<std::string, double> worst;
  auto fail = [&](const std::string& msg) {
    r.ok = false;
    if (r.error.empty()) r.error = msg;
  };
  auto add_row = [&](const std::string& sys, std::size_t in, std::size_t out, std::size_t steps, double ms) {
    BenchRow row;
    row.n = r.rows.size();
    row.system = sys;
    row.input_length = in;
    row.length = out;
    row.rewrite_steps = steps;
    row.wall_ms = ms;
    r.rows.push_back(row);
    pts[sys].push_back({double(in), double(out)});
    double ratio = in ? double(out) / double(in) : double(out);
    worst[sys] = std::max(worst[sys], ratio);
  };
  auto run_h2nd = [&](const std::vector<HilbertProof>& ps, bool fz) {
    const char* sys = fz ? "fz" : "h2nd";
    for (const auto& h : ps) {
      auto t0 = clock_t_::now();
      try {
        NDTranslation t = fz ? zi_hilbert_to_fz_modulo(h) : hilbert_to_nd(h);
        RewriteSystem R = fz ? ho_system(class_level(h.cfg.order)) : empty_system(zi_signature(h.cfg.order));
        Verdict v = recheck_serialized(t.proof, t.assumptions, R);
        if (!v) {
          fail(std::string(sys) + " output fails to recheck: " + v.error);
          continue;
        }
        add_row(sys, h.length(), v.length, v.rewrite_steps, ms_since(t0));
      } catch (const std::exception& e) {
        fail(std::string(sys) + ": " + e.what());
      }
    }
  };
  run_h2nd(c.hilbert, false);
  run_h2nd(c.hilbert_zi, true);
  double K = double(nd_to_hilbert_case_constant());
  for (const auto& s : c.nd) {
    auto t0 = clock_t_::now();
    try {
      HilbertTranslation h = nd_to_hilbert(s.proof, s.assumptions, {s.order, false});
      HVerdict v = recheck_serialized(h.proof);
      if (!v) {
        fail("nd2h output fails to recheck at line " + std::to_string(v.line) + ": " + v.error);
        continue;
      }
      std::size_t in = tree_size(s.proof);
      bool df = discharge_free(s.proof);
      std::string sys = df ? "nd2h-df" : "nd2h";
      add_row(sys, in, v.length, 0, ms_since(t0));
      if (std::log(double(v.length)) > double(in) * std::log(K) + 1e-9) fail("nd2h exceeds K^|pi|");
      if (df && double(v.length) > K * double(in)) fail("nd2h exceeds K*|pi| on a discharge-free proof");
    } catch (const std::exception& e) {
      fail(std::string("nd2h: ") + e.what());
    }
  }
  for (const auto& [sys, p] : pts) r.fits[sys] = fit_growth(p);
  for (const auto& [sys, w] : worst) r.constants[sys + ".max_ratio"] = w;
  r.constants["h2nd.bound"] = TranslationConstants::h2nd;
  r.constants["fz.bound"] = TranslationConstants::fz;
  r.constants["nd2h.K"] = K;
  if (worst["h2nd"] > TranslationConstants::h2nd) fail("h2nd ratio above the pinned constant");
  if (worst["fz"] > TranslationConstants::fz) fail("fz ratio above the pinned constant");
  return r;
}

// ---------------------------------------------------------------- probe

BenchReport probe(const std::string& system, int i, std::size_t max_size, std::size_t samples, std::size_t fuel,
                  std::uint64_t seed) {
  BenchReport r;
  r.experiment = "probe-" + system;
  RandomGen g(seed);
  std::vector<std::pair<double, double>> pts;
  RewriteSystem R;
  if (system == "ws") R = ws_system(i);
  else if (system == "ho") R = ho_system(i);
  else if (system == "hha-noind" || system == "hha") R = hha_system(i);
  else throw KernelError("unknown probe system " + system);
  const RewriteSystem* sys = &R;
  if (system == "hha-noind") sys = R.auto_subsystem.get();

  auto start_object = [&](std::size_t budget) -> Expr {
    if (system == "hha-noind") {
      std::vector<Var> scope;
      Expr t = g.term(0, budget, scope);
      return eq(t, numeral(static_cast<unsigned>(g.below(3))));
    }
    if (system == "hha") return member(mk_var(mkvar("x", Sort::arith(0))), vc("p"));
    PropGenOptions o;
    o.order = i + 1;
    o.allow_top = false;
    std::vector<Var> scope;
    for (int j = 0; j <= i; ++j)
      for (const auto& v : g.pool(j, 1)) scope.push_back(v);
    Expr p = g.prop(o, budget, scope);
    std::set<Var> fvs = free_vars(p);
    std::vector<Var> fv(fvs.begin(), fvs.end());
    EncodedClass e = encode_prop(p, fv);
    std::vector<Expr> ts;
    for (const auto& v : fv) ts.push_back(mk_var(v));
    if (system == "ho" && i >= 1 && !fv.empty() && fv[0].sort == Sort::arith(0)) {
      // through comprehension: x in comp(E_P^x)
      EncodedClass e1 = encode_prop(p, {fv[0]});
      return in(0, mk_var(fv[0]), comp(1, e1.cls));
    }
    Expr m = member(ts, e.cls);
    return m;
  };

  for (std::size_t s = 0; s < samples; ++s) {
    std::size_t budget = 3 + g.below(max_size > 3 ? max_size - 2 : 1);
    Expr x = start_object(budget);
    auto t0 = clock_t_::now();
    BenchRow row;
    row.n = x->size;
    row.input_length = x->size;
    row.system = system;
    try {
      if ((system == "ws" || system == "ho") && x->size <= 12) {
        DerivationOracle o(*sys, fuel);
        row.length = o.longest(x);
      } else if (system == "ws" || system == "ho") {
        // exhaustive search is exponential here; the longer of two strategies
        for (Strategy st : {Strategy::LeftmostOutermost, Strategy::LeftmostInnermost}) {
          NormalizeOptions opt;
          opt.fuel = fuel;
          opt.strategy = st;
          row.length = std::max(row.length, normalize(x, *sys, opt).trace.steps.size());
        }
      } else {
        NormalizeOptions opt;
        opt.fuel = fuel;
        row.length = normalize(x, *sys, opt).trace.steps.size();
      }
    } catch (const FuelExhausted&) {
      row.length = fuel;
      if (system != "hha") {
        r.ok = false;
        r.error = "fuel exhausted on " + print(x);
      } else {
        r.constants["fuel_guard"] = double(fuel);
      }
    }
    row.wall_ms = ms_since(t0);
    r.rows.push_back(row);
    pts.push_back({double(row.n), double(row.length)});
    if (system == "hha") break;
  }
  if (system == "hha" && !r.constants.count("fuel_guard")) {
    r.ok = false;
    r.error = "induction redex normalized within fuel";
  }
  r.fits[system] = fit_growth(pts);
  if (system == "ws") {
    double worst = 0;
    for (const auto& row : r.rows) worst = std::max(worst, double(row.length) / double(row.n));
    r.constants["ws.max_length_over_size"] = worst;
    if (worst > 1.0) {
      r.ok = false;
      r.error = "a WS derivation is longer than its start object";
    }
  }
  return r;
}

}  // namespace dm
