// The schematic (Hilbert-type) system for arithmetic of a given order:
// schema catalogue, explicit instantiation, line-based checking.
//
// Order n means sorts 0..n-1. Schema names:
//   I K W C B Proj_l Proj_r Pair Inj_l Inj_r Case Contradiction EFSQ T TND
//   UI EI (per sort j < n)
//   Refl Leibniz 0!=s Inj_s Onto_s +0 +s x0 xs Ind
//   Comp (per sort j < n-1)
// Rules: MP, Gen (per sort), Part (per sort).
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dm/core.hpp"
#include "dm/encodings.hpp"
#include "dm/sexpr.hpp"

namespace dm {

class SideConditionError : public KernelError {
 public:
  using KernelError::KernelError;
};

/// A proposition with numbered holes: params are placeholder variables.
struct Template {
  std::vector<Var> params;
  Expr body;

  static Template nullary(Expr p) { return Template{{}, std::move(p)}; }
  static Template unary(Var hole, Expr body) { return Template{{hole}, std::move(body)}; }
};

/// Applies the template; throws SideConditionError when an argument is not
/// freely substitutable for its hole.
Expr apply_template(const Template& t, const std::vector<Expr>& args);

struct SchemaInfo {
  std::string name;
  int j = -1;  // sort index for per-sort schemata
  bool rule = false;
  std::vector<std::pair<std::string, int>> prop_vars;  // name, arity
  bool has_tau = false;
};

struct HilbertConfig {
  int order = 1;  // sorts 0..order-1
  bool intuitionistic = false;
};

std::vector<SchemaInfo> schema_catalogue(const HilbertConfig& cfg);
std::size_t axiom_schema_count(const HilbertConfig& cfg);
std::size_t rule_count(const HilbertConfig& cfg);

/// Schemata kept as assumptions by the translation to natural deduction.
bool is_theory_schema(std::string_view name);
/// Schemata that need a sort index.
bool is_sorted_schema(std::string_view name);

struct SchemaInstance {
  std::string schema;
  int j = 0;
  std::map<std::string, Template> props;  // "A", "B", "C"
  std::optional<Expr> tau;
  std::map<std::string, Var> metas;  // "alpha", "beta"
};

/// The instance proposition; throws SideConditionError or KernelError.
Expr instantiate_schema(const SchemaInstance& inst, const HilbertConfig& cfg);

enum class HKind { Schema, MP, Gen, Part, Axiom };

struct HLine {
  HKind kind = HKind::Schema;
  SchemaInstance inst;  // Schema
  int ref1 = 0;         // MP: minor (A); Gen/Part: premise
  int ref2 = 0;         // MP: major (A => B)
  int j = 0;            // Gen/Part sort
  Var eigen;            // Gen/Part
  std::string axiom;    // Axiom
  Expr prop;
};

struct HilbertProof {
  HilbertConfig cfg;
  std::vector<Axiom> axioms;  // extra named axioms usable by (axiom NAME) lines
  std::vector<HLine> lines;   // line k is lines[k-1]
  std::size_t length() const { return lines.size(); }
  const Expr& conclusion() const { return lines.back().prop; }
};

struct HVerdict {
  bool ok = false;
  std::size_t length = 0;
  std::string error;
  int line = 0;
  explicit operator bool() const { return ok; }
};

HVerdict check_hilbert(const HilbertProof& p);
inline std::size_t hilbert_length(const HilbertProof& p) { return p.lines.size(); }

/// Appends lines and computes their propositions.
class HilbertBuilder {
 public:
  explicit HilbertBuilder(HilbertConfig cfg) { proof_.cfg = cfg; }
  int schema(SchemaInstance inst);
  int mp(int minor, int major);
  /// premise A => P(beta) gives A => forall beta. P
  int gen(int premise, Var beta);
  /// premise P(beta) => A gives (exists beta. P) => A
  int part(int premise, Var beta);
  int axiom(const std::string& name, const Expr& prop);
  const Expr& prop(int line) const { return proof_.lines.at(line - 1).prop; }
  int last() const { return static_cast<int>(proof_.lines.size()); }
  HilbertProof& proof() { return proof_; }
  HilbertProof take() { return std::move(proof_); }

 private:
  int push(HLine l);
  HilbertProof proof_;
};

// convenience instances
SchemaInstance schema0(std::string name, std::vector<std::pair<std::string, Expr>> props = {});
SchemaInstance schema_ui(int j, Template a, Expr tau);
SchemaInstance schema_ei(int j, Template a, Expr tau);

HilbertProof parse_hilbert(const SExp& s);
SExp hilbert_to_sexp(const HilbertProof& p);
SExp template_to_sexp(const Template& t);
Template parse_template(const Signature& sig, const SExp& s);

}  // namespace dm
