// Benchmarks: the Add speed-up, fragment constancy, translation growth,
// derivation-length probes. Random generators and enumerators live here too.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "dm/hilbert.hpp"
#include "dm/nd.hpp"
#include "dm/translators.hpp"

namespace dm {

// ---------------------------------------------------------------- generators

struct PropGenOptions {
  int order = 1;
  std::size_t max_size = 30;
  bool allow_top = true;
  bool allow_quant = true;
  /// Free variables drawn from: x y z (sort 0) and X Y (higher sorts).
  std::size_t free_per_sort = 2;
};

class RandomGen {
 public:
  explicit RandomGen(std::uint64_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  /// A Z_order term of sort j, size at most budget.
  Expr term(int j, std::size_t budget, const std::vector<Var>& scope);
  /// A Z_order proposition of size at most max_size.
  Expr prop(const PropGenOptions& o);
  Expr prop(const PropGenOptions& o, std::size_t budget, std::vector<Var> scope);
  /// Template with one hole of sort j (the hole occurs at least once when
  /// possible); top is avoided.
  Template unary_template(int order, int j, std::size_t max_size);
  /// Free variable pool for a sort.
  std::vector<Var> pool(int j, std::size_t n) const;

  std::mt19937_64& engine() { return rng_; }

 private:
  Expr atom(int order, std::size_t budget, const std::vector<Var>& scope);
  std::mt19937_64 rng_;
  std::size_t binders_ = 0;
};

/// Random schematic proofs. With theory=true the proof may use Refl,
/// Leibniz, Robinson, Ind and Comp instances (templates without top).
HilbertProof random_hilbert_proof(RandomGen& g, int order, std::size_t lines, bool theory);

/// Random pure ND proof over named assumptions; discharge_free selects the
/// fragment without imp-i, or-e and ex-e.
struct NDSample {
  NDPtr proof;
  std::vector<Axiom> assumptions;
  int order = 1;
};
NDSample random_nd_proof(RandomGen& g, int order, std::size_t steps, bool discharge_free);

struct Corpus {
  std::vector<HilbertProof> hilbert;     // pure logic
  std::vector<HilbertProof> hilbert_zi;  // with theory schemata
  std::vector<NDSample> nd;
};
Corpus generate_corpus(std::size_t per_kind, std::uint64_t seed);

/// Every well-sorted term of the sort with size <= max_size, with `vars`
/// as the only variables. Calls f on each; stops when f returns false.
void enumerate_terms(const Signature& sig, Sort s, std::size_t max_size, const std::vector<Var>& vars,
                     const std::function<bool(const Expr&)>& f);
/// Every atom of size <= max_size over the signature's predicates.
void enumerate_atoms(const Signature& sig, std::size_t max_size, const std::vector<Var>& vars,
                     const std::function<bool(const Expr&)>& f);

// ---------------------------------------------------------------- Add

/// top-i on Add(n, n, 2n), checks modulo Add.
NDPtr gen_add_modulo_proof(unsigned n);
/// Add(n, n, 2n) from the first Add presentation: one all-e on the base
/// axiom, then n blocks of (all-e x3, and-e, imp-e).
NDPtr gen_add_axiomatic_proof(unsigned n);

// ---------------------------------------------------------------- reports

struct BenchRow {
  std::size_t n = 0;
  std::string system;
  std::size_t length = 0;
  std::size_t rewrite_steps = 0;
  double wall_ms = 0;
  std::size_t min_length = 0;  // fragments: min = max is the constancy check
  std::size_t max_length = 0;
  std::size_t input_length = 0;
};

struct GrowthFit {
  std::string cls;  // constant, linear, poly-D, exponential
  double exponent = 0;  // power-law exponent, or base for exponential
  double coef = 0;
  double residual = 0;
};

/// Least squares over log lengths against constant, power law and
/// exponential models; the class is the best model (power laws rounded).
GrowthFit fit_growth(const std::vector<std::pair<double, double>>& pts);

struct BenchReport {
  std::string experiment;
  std::vector<BenchRow> rows;
  std::map<std::string, GrowthFit> fits;     // per system
  std::map<std::string, double> constants;   // pinned ratios and bounds
  bool ok = true;
  std::string error;
};

std::string report_json(const BenchReport& r);
std::string report_csv(const BenchReport& r);

/// Modulo vs axiomatic lengths for n = 1..n_max; every row rechecks from
/// its serialized form.
BenchReport bench_add(unsigned n_max);
/// Every library fragment on `samples` random templates; min = max expected.
BenchReport bench_fragments(unsigned samples, std::uint64_t seed = 1);
/// All translators over the corpus with output/input ratios.
BenchReport bench_growth(const Corpus& c);
/// Derivation lengths of random start objects against size, for a system
/// id (ws, ho, hha-noind, hha). Objects of size <= 12 get the exhaustive
/// longest derivation, larger ones the longer of leftmost-outermost and
/// leftmost-innermost normalization; hha reports the fuel guard.
BenchReport probe(const std::string& system, int i, std::size_t max_size, std::size_t samples, std::size_t fuel,
                  std::uint64_t seed = 1);

/// Pinned constants checked by bench_growth and the acceptance tests.
struct TranslationConstants {
  static constexpr double h2nd = 8.0;
  static constexpr double fz = 8.0;
  static std::size_t nd2h_k() { return nd_to_hilbert_case_constant(); }
};

/// Serialize, parse back and check; the verdict of the reparsed proof.
Verdict recheck_serialized(const NDPtr& p, const std::vector<Axiom>& assumptions, const RewriteSystem& R,
                           const NDCheckOptions& opt = {});
HVerdict recheck_serialized(const HilbertProof& p);

}  // namespace dm
