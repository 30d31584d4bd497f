// Natural deduction modulo a rewrite system: proof objects, the checker,
// and the proof file format.
//
// Each node states its conclusion and the witnesses its rule needs, so the
// checker only has to test congruences. The obligations of a node, in the
// order used to index `via` traces:
//
//   imp-i   C ~ A => B            (B = premise, A = :A, discharges :label)
//   imp-e   C' ~ A => concl       (A, C' = the two premises)
//   and-i   concl ~ A /\ B
//   and-e   premise ~ concl /\ :B   (right: :B /\ concl)
//   or-i    concl ~ premise \/ :B   (right: :B \/ premise)
//   or-e    major ~ :A \/ :B
//   all-i   concl ~ :Q             (premise = Q opened with :eigen)
//   all-e   premise ~ :Q, concl ~ Q[:term]
//   ex-i    concl ~ :Q, premise ~ Q[:term]
//   ex-e    major ~ :Q             (discharges Q opened with :eigen)
//   top-i   concl ~ top
//   bot-e   premise ~ bot
//   tnd     concl ~ :B \/ (:B => bot)
//   ind     none (all shapes exact)
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dm/core.hpp"
#include "dm/encodings.hpp"
#include "dm/rewrite.hpp"
#include "dm/sexpr.hpp"

namespace dm {

enum class NDRule {
  Hyp,
  Ax,
  ImpI,
  ImpE,
  AndI,
  AndE,
  OrI,
  OrE,
  AllI,
  AllE,
  ExI,
  ExE,
  TopI,
  BotE,
  Tnd,
  Ind,
};

const char* nd_rule_name(NDRule r);
std::optional<NDRule> nd_rule_from_name(std::string_view s);

enum class Side { Left, Right };

struct NDNode;
using NDPtr = std::shared_ptr<const NDNode>;

struct NDNode {
  NDRule rule = NDRule::Hyp;
  Expr concl;
  std::string label;   // hyp label; discharge label (imp-i, or-e left, ex-e, ind)
  std::string label2;  // or-e right discharge label
  std::string name;    // axiom name
  Expr a;              // imp-i / or-e :A
  Expr b;              // and-e / or-i / or-e / tnd :B
  Expr q;              // quantified witness (all-i, all-e, ex-i, ex-e); ind class
  Expr term;           // all-e / ex-i instance; ind conclusion term
  Var eigen;           // all-i / ex-e / ind
  Side side = Side::Left;
  std::vector<NDPtr> prem;
  std::vector<std::optional<Trace>> via;  // indexed by obligation
};

struct Obligation {
  Expr lhs;
  Expr rhs;
};

/// The congruence obligations of a node (see the table above).
std::vector<Obligation> obligations(const NDNode& n);

/// Number of inference nodes (hypothesis and axiom leaves do not count).
std::size_t nd_length(const NDPtr& p);
/// Axiom names used at leaves, sorted and unique.
std::vector<std::string> nd_axioms_used(const NDPtr& p);
/// Hypothesis leaves not discharged within p.
std::vector<std::pair<std::string, Expr>> nd_open_hyps(const NDPtr& p);

// builders; the first form states the conclusion, the second derives it
namespace nd {
NDPtr hyp(std::string label, Expr a);
NDPtr ax(std::string name, Expr a);
NDPtr imp_i(Expr c, std::string label, Expr a, NDPtr body);
NDPtr imp_i(std::string label, Expr a, NDPtr body);
NDPtr imp_e(Expr b, NDPtr minor, NDPtr major);
NDPtr imp_e(NDPtr minor, NDPtr major);  // major must be syntactically A => B
NDPtr and_i(Expr c, NDPtr l, NDPtr r);
NDPtr and_i(NDPtr l, NDPtr r);
NDPtr and_e(Expr a, Side side, Expr other, NDPtr p);
NDPtr and_e(Side side, NDPtr p);  // premise syntactically a conjunction
NDPtr or_i(Expr c, Side side, Expr other, NDPtr p);
NDPtr or_i(Side side, Expr other, NDPtr p);
NDPtr or_e(Expr d, NDPtr major, std::string la, Expr a, NDPtr pa, std::string lb, Expr b, NDPtr pb);
NDPtr all_i(Expr c, Expr q, Var y, NDPtr p);
NDPtr all_i(Var y, NDPtr p);  // generalizes y in the premise
NDPtr all_e(Expr b, Expr q, Expr t, NDPtr p);
NDPtr all_e(Expr t, NDPtr p);  // premise syntactically a forall
NDPtr ex_i(Expr a, Expr q, Expr t, NDPtr p);
NDPtr ex_e(Expr c, Expr q, Var y, std::string label, NDPtr major, NDPtr minor);
NDPtr top_i(Expr a);
NDPtr bot_e(Expr b, NDPtr p);
NDPtr tnd(Expr a, Expr b);
NDPtr ind(Expr cls, Expr t, Var beta, std::string label, NDPtr base, NDPtr step);

/// Copy of n with trace `tr` on obligation k.
NDPtr with_via(const NDPtr& n, std::size_t k, Trace tr);
/// Copy of n with new premises.
NDPtr with_prem(const NDPtr& n, std::vector<NDPtr> prem);
}  // namespace nd

enum class CongruenceMode { Auto, Witnessed, Mixed };
std::optional<CongruenceMode> parse_mode(std::string_view s);

struct NDCheckOptions {
  CongruenceMode mode = CongruenceMode::Auto;
  std::optional<std::size_t> fuel;
  bool allow_ind = false;
};

struct Verdict {
  bool ok = false;
  std::size_t length = 0;
  std::string error;
  std::string where;  // path of the failing node, e.g. "root.2.1"
  std::size_t rewrite_steps = 0;
  Expr conclusion;
  explicit operator bool() const { return ok; }
};

/// Checks a closed proof against the named assumptions.
Verdict check_nd(const NDPtr& proof, const std::vector<Axiom>& assumptions, const RewriteSystem& R,
                 const NDCheckOptions& opt = {});

/// Decides one obligation under the given mode; `steps` accumulates
/// rewrite steps. Returns an error message on failure.
std::optional<std::string> discharge(const Expr& p, const Expr& q, const std::optional<Trace>& tr,
                                     const RewriteSystem& R, CongruenceMode mode,
                                     std::optional<std::size_t> fuel, std::size_t* steps);

/// Fills every missing trace for a non-alpha-equal obligation with a
/// join trace (over R, or R's automatic subsystem). Throws KernelError when
/// an obligation cannot be joined.
NDPtr witness_all(const NDPtr& p, const RewriteSystem& R);

struct NDFile {
  std::vector<Axiom> axioms;
  NDPtr proof;
};

NDFile parse_nd_file(const SExp& s, const Signature& sig);
SExp nd_file_to_sexp(const NDFile& f);
SExp nd_to_sexp(const NDPtr& p);
NDPtr parse_nd_node(const SExp& s, const Signature& sig);

SExp trace_to_sexp(const Trace& tr, std::size_t k);
/// `(via K step...)`; from/to are filled by the caller.
std::pair<std::size_t, Trace> parse_trace(const SExp& s, const Signature& sig);

}  // namespace dm
