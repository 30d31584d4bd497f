// dmk: command-line front end for the proof kernel.
//
// exit codes: 0 ok, 1 check failure, 2 usage or parse error
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dm/bench.hpp"
#include "dm/files.hpp"
#include "dm/syntax.hpp"
#include "json.hpp"

using namespace dm;

namespace {

struct Usage {
  std::string msg;
};

struct Opts {
  int order = 1;
  std::optional<std::size_t> fuel;
  std::string mode = "auto";
  std::string json_out;
  std::string csv_out;
  std::string system;
};

CongruenceMode mode_of(const Opts& o) {
  auto m = parse_mode(o.mode);
  if (!m) throw Usage{"--mode must be auto, witnessed or mixed"};
  return *m;
}

void write_file(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw Usage{"cannot write " + path};
  out << text << '\n';
}

// the source line of the node at a checker path such as root.2.1
int line_of_path(const SExp& node, const std::string& where) {
  const SExp* cur = &node;
  std::stringstream ss(where);
  std::string part;
  std::getline(ss, part, '.');
  while (std::getline(ss, part, '.')) {
    std::size_t want = std::stoul(part);
    std::vector<const SExp*> prem;
    for (std::size_t k = 2; k < cur->size(); ++k) {
      const SExp& x = (*cur)[k];
      if (x.is_atom && !x.atom.empty() && x.atom[0] == ':') {
        ++k;
        continue;
      }
      prem.push_back(&x);
    }
    if (want == 0 || want > prem.size()) break;
    cur = prem[want - 1];
  }
  return cur->line;
}

const SExp* proof_node(const SExp& file) {
  for (std::size_t k = 1; k < file.size(); ++k)
    if (file[k].head_is("proof") && file[k].size() == 2) return &file[k][1];
  return nullptr;
}

RewriteSystem system_of(const Opts& o, const char* fallback) {
  return load_system(o.system.empty() ? std::string(fallback) : o.system, o.order);
}

int check_nd_cmd(const std::string& path, const Opts& o) {
  SExp s = read_sexp_file(path);
  RewriteSystem R = system_of(o, "empty");
  for (std::size_t k = 1; k < s.size(); ++k)
    if (s[k].head_is("signature")) R.sig().merge(parse_signature(s[k]));
  NDFile f = parse_nd_file(s, R.sig());
  NDCheckOptions opt;
  opt.mode = mode_of(o);
  opt.fuel = o.fuel;
  opt.allow_ind = true;
  Verdict v = check_nd(f.proof, f.axioms, R, opt);
  nlohmann::json j{{"ok", v.ok}, {"length", v.length}, {"rewrite_steps", v.rewrite_steps}};
  if (!v) {
    int line = s.line;
    if (const SExp* p = proof_node(s)) line = line_of_path(*p, v.where);
    j["error"] = v.error;
    j["where"] = v.where;
    j["line"] = line;
    std::cerr << path << ':' << line << ": check failed at " << v.where << ": " << v.error << '\n';
  } else {
    std::cout << "ok length " << v.length << " rewrite-steps " << v.rewrite_steps << '\n';
  }
  write_file(o.json_out, j.dump(2));
  return v ? 0 : 1;
}

int check_hilbert_cmd(const std::string& path, const Opts& o) {
  SExp s = read_sexp_file(path);
  HilbertProof p = parse_hilbert(s);
  HVerdict v = check_hilbert(p);
  nlohmann::json j{{"ok", v.ok}, {"length", v.length}};
  if (!v) {
    int line = s.line;
    for (std::size_t k = 1; k < s.size(); ++k)
      if (s[k].head_is("line") && s[k].size() > 1 && s[k][1].is(std::to_string(v.line))) line = s[k].line;
    j["error"] = v.error;
    j["proof_line"] = v.line;
    j["line"] = line;
    std::cerr << path << ':' << line << ": proof line " << v.line << ": " << v.error << '\n';
  } else {
    std::cout << "ok length " << v.length << '\n';
  }
  write_file(o.json_out, j.dump(2));
  return v ? 0 : 1;
}

int normalize_cmd(const std::string& input, const Opts& o) {
  RewriteSystem R = system_of(o, "ho");
  std::string text = std::filesystem::exists(input) ? slurp(input) : input;
  Expr e = parse_expr(R.sig(), read_sexp(text));
  NormalizeOptions opt;
  opt.fuel = o.fuel;
  try {
    Normalized n = normalize(e, R, opt);
    std::cout << print(n.nf) << '\n' << "steps " << n.trace.steps.size() << '\n';
    write_file(o.json_out, nlohmann::json{{"ok", true}, {"nf", print(n.nf)}, {"steps", n.trace.steps.size()}}.dump(2));
    return 0;
  } catch (const FuelExhausted& f) {
    std::cerr << "fuel exhausted after " << f.fuel() << " steps\n";
    write_file(o.json_out, nlohmann::json{{"ok", false}, {"fuel_exhausted", f.fuel()}}.dump(2));
    return 1;
  }
}

int translate_cmd(const std::string& path, const std::string& to, const std::string& out_path, const Opts& o) {
  SExp s = read_sexp_file(path);
  std::string out;
  TranslationReport rep;
  if (s.head_is("hilbert-proof")) {
    HilbertProof h = parse_hilbert(s);
    NDTranslation t;
    if (to == "nd") t = hilbert_to_nd(h);
    else if (to == "fz") t = zi_hilbert_to_fz_modulo(h);
    else throw Usage{"a schematic proof translates --to nd or fz"};
    out = write_sexp_pretty(nd_file_to_sexp(NDFile{t.assumptions, t.proof}));
    rep = t.report;
  } else if (s.head_is("nd-proof")) {
    NDFile f = parse_nd_file(s, classes_signature(o.order - 1 < 0 ? 0 : o.order - 1, true));
    if (to == "hilbert") {
      HilbertTranslation t = nd_to_hilbert(f.proof, f.axioms, {o.order, false});
      out = write_sexp_pretty(hilbert_to_sexp(t.proof));
      rep = t.report;
    } else if (to == "hha") {
      NDTranslation t = zi_nd_to_hha(f.proof, f.axioms, o.order);
      out = write_sexp_pretty(nd_file_to_sexp(NDFile{t.assumptions, t.proof}));
      rep = t.report;
    } else {
      throw Usage{"a natural deduction proof translates --to hilbert or hha"};
    }
  } else {
    throw Usage{"expected a (hilbert-proof ...) or (nd-proof ...) file"};
  }
  if (out_path.empty()) std::cout << out << '\n';
  else write_file(out_path, out);
  std::cerr << "input length " << rep.input_length << ", output length " << rep.output_length << '\n';
  nlohmann::json j{{"ok", true}, {"input_length", rep.input_length}, {"output_length", rep.output_length}};
  for (const auto& [k, f] : rep.fragments)
    j["fragments"][k] = {{"count", f.count}, {"min", f.min_len}, {"max", f.max_len}};
  write_file(o.json_out, j.dump(2));
  return 0;
}

int confluence_cmd(const Opts& o) {
  RewriteSystem R = system_of(o, "ho");
  std::size_t fuel = o.fuel.value_or(10);
  bool ll = check_left_linear(R);
  auto cps = critical_pairs(R);
  std::size_t bad = 0;
  nlohmann::json j{{"left_linear", ll}, {"critical_pairs", nlohmann::json::array()}};
  for (const auto& cp : cps) {
    bool ok = joinable(cp, R, fuel);
    if (!ok) ++bad;
    j["critical_pairs"].push_back({{"outer", cp.outer},
                                   {"inner", cp.inner},
                                   {"position", show(cp.pos)},
                                   {"peak", print(cp.peak)},
                                   {"joinable", ok}});
    std::cout << (ok ? "joinable " : "NOT JOINABLE ") << cp.outer << '/' << cp.inner << " at " << show(cp.pos) << ": "
              << print(cp.peak) << '\n';
  }
  std::cout << "left-linear " << (ll ? "yes" : "no") << ", " << cps.size() << " critical pairs, " << bad
            << " not joinable within " << fuel << " steps\n";
  j["ok"] = bad == 0;
  write_file(o.json_out, j.dump(2));
  return bad == 0 ? 0 : 1;
}

int emit(const BenchReport& r, const Opts& o) {
  write_file(o.json_out, report_json(r));
  write_file(o.csv_out, report_csv(r));
  if (o.json_out.empty() && o.csv_out.empty()) std::cout << report_csv(r);
  for (const auto& [k, f] : r.fits)
    std::cerr << k << ": " << f.cls << " (exponent " << f.exponent << ", residual " << f.residual << ")\n";
  if (!r.ok) std::cerr << r.experiment << " failed: " << r.error << '\n';
  return r.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dmk: natural deduction modulo, schematic proofs and their translations"};
  app.require_subcommand(1);
  Opts o;
  auto common = [&](CLI::App* c) {
    c->add_option("--order", o.order, "arithmetic order (sorts 0..order-1) or class level for builtin systems");
    c->add_option("--fuel", o.fuel, "rewrite step budget");
    c->add_option("--mode", o.mode, "congruence mode: auto, witnessed or mixed");
    c->add_option("--json", o.json_out, "write a JSON report");
    c->add_option("--system", o.system, "builtin id (add, ws, ho, hha, empty, optionally :I) or system file");
  };
  std::string file, to, out_path, probe_sys = "ws";
  unsigned n_max = 16, samples = 100, per_kind = 70;
  std::size_t max_size = 20;
  std::uint64_t seed = 1;

  auto* cnd = app.add_subcommand("check-nd", "check a natural deduction proof file");
  cnd->add_option("file", file)->required();
  common(cnd);
  auto* chi = app.add_subcommand("check-hilbert", "check a schematic proof file");
  chi->add_option("file", file)->required();
  common(chi);
  auto* nrm = app.add_subcommand("normalize", "normalize a term or proposition (file or inline s-expression)");
  nrm->add_option("input", file)->required();
  common(nrm);
  auto* tr = app.add_subcommand("translate", "translate a proof file");
  tr->add_option("file", file)->required();
  tr->add_option("--to", to, "nd, fz, hilbert or hha")->required();
  tr->add_option("--out", out_path, "output file (default stdout)");
  common(tr);
  auto* cf = app.add_subcommand("confluence", "left-linearity and critical pairs of a system");
  common(cf);
  auto* pr = app.add_subcommand("probe", "derivation lengths against start size");
  pr->add_option("--probe-system", probe_sys, "ws, ho, hha-noind or hha");
  pr->add_option("--samples", samples);
  pr->add_option("--max-size", max_size);
  pr->add_option("--seed", seed);
  common(pr);
  auto* ba = app.add_subcommand("bench-add", "modulo vs axiomatic proofs of Add(n,n,2n)");
  ba->add_option("--n", n_max, "largest n");
  ba->add_option("--csv", o.csv_out, "write CSV rows");
  common(ba);
  auto* bf = app.add_subcommand("bench-fragments", "fragment constancy");
  bf->add_option("--samples", samples);
  bf->add_option("--seed", seed);
  bf->add_option("--csv", o.csv_out, "write CSV rows");
  common(bf);
  auto* bg = app.add_subcommand("bench-growth", "translation length ratios over a generated corpus");
  bg->add_option("--per-kind", per_kind, "proofs per corpus kind");
  bg->add_option("--seed", seed);
  bg->add_option("--csv", o.csv_out, "write CSV rows");
  common(bg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*cnd) return check_nd_cmd(file, o);
    if (*chi) return check_hilbert_cmd(file, o);
    if (*nrm) return normalize_cmd(file, o);
    if (*tr) return translate_cmd(file, to, out_path, o);
    if (*cf) return confluence_cmd(o);
    if (*pr) {
      if (!o.system.empty()) probe_sys = o.system;
      return emit(probe(probe_sys, o.order, max_size, samples, o.fuel.value_or(1000), seed), o);
    }
    if (*ba) return emit(bench_add(n_max), o);
    if (*bf) return emit(bench_fragments(samples, seed), o);
    if (*bg) return emit(bench_growth(generate_corpus(per_kind, seed)), o);
  } catch (const Usage& u) {
    std::cerr << "usage: " << u.msg << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << file << ':' << e.line() << ": parse error: " << e.what() << '\n';
    return 2;
  } catch (const TranslationError& e) {
    std::cerr << "translation failed: " << e.what() << '\n';
    return 1;
  } catch (const KernelError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
