// Proof translations between the schematic system, pure natural deduction
// and natural deduction modulo HO_i / HHA_i, plus axiom elimination between
// presentations compatible with one rewrite system.
#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "dm/core.hpp"
#include "dm/encodings.hpp"
#include "dm/hilbert.hpp"
#include "dm/nd.hpp"
#include "dm/rewrite.hpp"

namespace dm {

class TranslationError : public KernelError {
 public:
  using KernelError::KernelError;
};

struct FragmentStat {
  std::size_t count = 0;
  std::size_t min_len = std::numeric_limits<std::size_t>::max();
  std::size_t max_len = 0;
  void note(std::size_t len) {
    ++count;
    if (len < min_len) min_len = len;
    if (len > max_len) max_len = len;
  }
};

struct TranslationReport {
  std::size_t input_length = 0;
  std::size_t output_length = 0;
  std::map<std::string, FragmentStat> fragments;  // per schema / case
};

struct NDTranslation {
  NDPtr proof;
  std::vector<Axiom> assumptions;
  TranslationReport report;
};

struct HilbertTranslation {
  HilbertProof proof;
  TranslationReport report;
};

// ---------------------------------------------------------------- h2nd

/// Inference nodes of the natural deduction template for a schema
/// (0 for theory schemata, which stay assumptions).
std::size_t gentzen_template_length(std::string_view schema);
/// The template for one instance, built from the instance proposition
/// (UI and EI also need the instance term).
NDPtr gentzen_template(std::string_view schema, const Expr& instance, const Expr& tau = nullptr);

/// Schematic proof to pure natural deduction. Theory instances become
/// named assumptions. Throws TranslationError when the input fails to check.
NDTranslation hilbert_to_nd(const HilbertProof& p);

/// Same, with Leibniz, Ind and Comp instances replaced by their fragments
/// modulo HO_{order-1}; the assumptions are then FZ axioms (and the proof's
/// own named axioms).
NDTranslation zi_hilbert_to_fz_modulo(const HilbertProof& p);

/// Rewrite system and signature index used for the FZ / HHA targets.
inline int class_level(int order) { return order - 1; }

// ---------------------------------------------------------------- nd2h

/// The largest number of lines T_A adds on top of its recursive calls.
std::size_t nd_to_hilbert_case_constant();

/// Pure natural deduction (assumptions seen as axioms) to the schematic
/// system. Rejects proofs whose congruence obligations are not syntactic.
HilbertTranslation nd_to_hilbert(const NDPtr& p, const std::vector<Axiom>& assumptions, HilbertConfig cfg);

/// T_A alone: a Hilbert proof of A => concl, abstracting the open
/// hypothesis `label` (whose proposition is A).
HilbertProof nd_abstract(const NDPtr& p, const std::string& label, const Expr& a,
                         const std::vector<Axiom>& assumptions, HilbertConfig cfg);

/// The fixed propositional lemma proofs used by T_A on Gen and Part:
/// varpi1 : (A => B => C) => (A /\ B) => C
/// varpi2 : ((A /\ B) => C) => A => B => C
HilbertProof varpi1(const Expr& a, const Expr& b, const Expr& c, HilbertConfig cfg);
HilbertProof varpi2(const Expr& a, const Expr& b, const Expr& c, HilbertConfig cfg);

/// True when p uses neither imp-i, or-e nor ex-e.
bool discharge_free(const NDPtr& p);

// ---------------------------------------------------------------- fragments

struct Fragment {
  std::string name;
  std::string system;  // "ho" or "hha"
  bool templated = false;
  bool sorted = false;  // takes a sort index (Comp)
  /// Builds the proof for a unary template (ignored when !templated) at
  /// sort j, for classes of level i.
  std::function<NDPtr(const Template&, int j, int i)> build;
  /// The proposition the fragment proves.
  std::function<Expr(const Template&, int j, int i)> statement;
};

const std::vector<Fragment>& fragment_library();
const Fragment* find_fragment(std::string_view name);

/// Builds and checks (against its system with the assumptions it needs);
/// throws TranslationError on a check failure.
NDPtr instantiate_fragment(const Fragment& f, const Template& t, int j, int i);
/// Assumptions a fragment proof may use (FZ for "ho", none for "hha").
std::vector<Axiom> fragment_assumptions(const Fragment& f, int i);
RewriteSystem fragment_system(const Fragment& f, int i);

/// Which Z_i schema an assumption instantiates, with its template. An
/// assumption may also be a universal closure of an instance: `params`
/// are then the variables it is opened with and `instance` the result.
struct RecognizedInstance {
  std::string schema;
  int j = 0;
  Template tmpl;
  std::vector<Var> params;
  Expr instance;
};
std::optional<RecognizedInstance> recognize_instance(const Expr& prop, int order);

/// Natural deduction over Z_i assumptions to an assumption-free proof
/// modulo HHA_{order-1}. Induction-rule obligations carry traces; check
/// the result in mixed mode.
NDTranslation zi_nd_to_hha(const NDPtr& p, const std::vector<Axiom>& assumptions, int order);

// ---------------------------------------------------------------- eliminate

/// Compatibility of a presentation with a rewrite system, as proofs:
/// every axiom proved modulo R, every rule's equivalence proved from the
/// presentation in pure natural deduction.
struct CompatibilityCertificate {
  std::vector<Axiom> presentation;
  std::map<std::string, NDPtr> axiom_proofs;  // modulo R, no assumptions
  std::map<std::string, NDPtr> rule_proofs;   // from the presentation
};

/// forall xs. l <=> r for a proposition rule (term rules give l = r).
Expr rule_statement(const Rule& r);

/// Checks every entry; returns the first problem.
std::optional<std::string> check_certificate(const CompatibilityCertificate& c, const RewriteSystem& R);

/// Rewrites pi (pure ND over the certificate `from`'s presentation) into
/// pure ND over `to`'s presentation. Only proposition rules are supported
/// in congruence expansions.
NDTranslation eliminate_axioms(const NDPtr& pi, const CompatibilityCertificate& from,
                               const CompatibilityCertificate& to, const RewriteSystem& R);

/// Expands every congruence use of a proof modulo R into cuts against the
/// rule equivalences of `to` (the displayed all-e pattern for all-e).
NDPtr expand_congruence(const NDPtr& p, const CompatibilityCertificate& to, const RewriteSystem& R);

/// Certificates for the two Add presentations.
CompatibilityCertificate add_certificate1();
CompatibilityCertificate add_certificate2();

// ---------------------------------------------------------------- helpers

/// Rename a free variable throughout a proof (x2 must be fresh).
NDPtr rename_in_proof(const NDPtr& p, Var x, Var x2);
/// Every assumption leaf (name, proposition).
std::vector<Axiom> assumption_leaves(const NDPtr& p);
/// Free variables of the open leaves (hypotheses and assumptions).
std::set<Var> open_leaf_vars(const NDPtr& p);

}  // namespace dm
