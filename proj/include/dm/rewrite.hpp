// Term and proposition rewriting: matching, redexes, normalization,
// congruence (automatic or by trace), critical pairs, derivation probes.
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "dm/core.hpp"

namespace dm {

class FuelExhausted : public KernelError {
 public:
  explicit FuelExhausted(std::size_t fuel)
      : KernelError("fuel exhausted after " + std::to_string(fuel) + " rewrite steps"), fuel_(fuel) {}
  std::size_t fuel() const { return fuel_; }

 private:
  std::size_t fuel_;
};

struct Rule {
  std::string name;
  Expr lhs;
  Expr rhs;
  bool prop = false;       // lhs is an atom
  std::vector<Var> vars;   // free variables of lhs, first-occurrence order
};

class RewriteSystem {
 public:
  RewriteSystem() = default;
  RewriteSystem(std::string name, Signature sig) : name_(std::move(name)), sig_(std::move(sig)) {}

  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  const Signature& sig() const { return sig_; }
  Signature& sig() { return sig_; }

  /// Validates the rule shape; throws KernelError.
  void add_rule(std::string name, Expr lhs, Expr rhs);
  void add_rule(Rule r);
  const std::vector<Rule>& rules() const { return rules_; }
  const Rule* rule(std::string_view name) const;
  /// Rules whose left side has head symbol `head` (function or predicate).
  const std::vector<std::size_t>& rules_for(Sym head, bool prop) const;

  bool terminating = false;
  bool confluent = false;
  /// Default fuel is c0 * size^k.
  double fuel_c0 = 16.0;
  double fuel_k = 2.0;
  std::size_t default_fuel(const Expr& x) const;

  /// Terminating and confluent subsystem for automatic congruence when
  /// this system itself is not; may be null.
  std::shared_ptr<const RewriteSystem> auto_subsystem;

  /// Copy without the named rules.
  RewriteSystem without(const std::vector<std::string>& names, std::string new_name) const;

 private:
  std::string name_;
  Signature sig_;
  std::vector<Rule> rules_;
  std::map<Sym, std::vector<std::size_t>> term_index_;
  std::map<Sym, std::vector<std::size_t>> prop_index_;
  std::map<std::string, std::size_t, std::less<>> by_name_;
};

/// Syntactic matching; repeated pattern variables must receive
/// alpha-equal images. The subject may contain loose bound indices.
std::optional<Subst> match(const Expr& pattern, const Expr& subject);

struct Redex {
  Position pos;
  const Rule* rule;
  Subst sigma;
};

/// All redexes, preorder (leftmost-outermost first). Positions are raw
/// (binder bodies are child 1 and may contain loose indices).
std::vector<Redex> redexes(const Expr& x, const RewriteSystem& R);
std::optional<Redex> first_redex(const Expr& x, const RewriteSystem& R);
bool is_normal(const Expr& x, const RewriteSystem& R);

/// Contract a redex.
Expr contract(const Expr& x, const Redex& r);
Expr instantiate_rhs(const Rule& r, const Subst& sigma);

enum class Dir { Forward, Backward };

struct Step {
  Position pos;
  std::string rule;
  Subst sigma;  // may be empty for forward steps
  Dir dir = Dir::Forward;
};

struct Trace {
  Expr from;
  Expr to;
  std::vector<Step> steps;
};

enum class Strategy { LeftmostOutermost, LeftmostInnermost, RandomRedex };

struct Normalized {
  Expr nf;
  Trace trace;
};

struct NormalizeOptions {
  std::optional<std::size_t> fuel;
  Strategy strategy = Strategy::LeftmostOutermost;
  std::uint64_t seed = 0;  // for RandomRedex
  bool record = true;      // keep the trace
};

Normalized normalize(const Expr& x, const RewriteSystem& R, const NormalizeOptions& opt = {});
Expr normal_form(const Expr& x, const RewriteSystem& R, std::optional<std::size_t> fuel = std::nullopt,
                 std::size_t* steps = nullptr);

/// Requires R.terminating and R.confluent (throws KernelError otherwise).
bool congruent_auto(const Expr& p, const Expr& q, const RewriteSystem& R,
                    std::optional<std::size_t> fuel = std::nullopt, std::size_t* steps = nullptr);

/// Compares normal forms; needs only R.terminating. Sound for any
/// system, complete when R is also confluent.
bool congruent_by_normal_forms(const Expr& p, const Expr& q, const RewriteSystem& R,
                               std::optional<std::size_t> fuel = std::nullopt, std::size_t* steps = nullptr);

/// Replays the trace; false on a bad step or wrong endpoint. `why` gets
/// the reason.
bool verify_trace(const Expr& p, const Expr& q, const Trace& tr, const RewriteSystem& R,
                  std::string* why = nullptr);

/// A forward trace p ->* nf followed by the reverse of q ->* nf.
std::optional<Trace> join_trace(const Expr& p, const Expr& q, const RewriteSystem& R,
                                std::optional<std::size_t> fuel = std::nullopt);

struct CriticalPair {
  std::string outer;   // rule applied at the root of the peak
  std::string inner;   // rule applied at `pos`
  Position pos;
  Expr peak;
  Expr left;   // outer reduct
  Expr right;  // inner reduct
};

std::vector<CriticalPair> critical_pairs(const RewriteSystem& R);
bool joinable(const CriticalPair& cp, const RewriteSystem& R, std::size_t fuel);
bool joinable(const Expr& a, const Expr& b, const RewriteSystem& R, std::size_t fuel);

/// Exact longest rewrite sequence from x; throws FuelExhausted when a
/// sequence longer than `fuel` exists.
std::size_t longest_derivation(const Expr& x, const RewriteSystem& R, std::size_t fuel);

/// Same, with a memo shared across queries (for exhaustive probes).
class DerivationOracle {
 public:
  DerivationOracle(const RewriteSystem& R, std::size_t fuel) : R_(R), fuel_(fuel) {}
  std::size_t longest(const Expr& x);
  std::size_t memo_size() const { return memo_.size(); }

 private:
  std::size_t visit(const Expr& x, std::size_t depth);
  const RewriteSystem& R_;
  std::size_t fuel_;
  std::unordered_map<Expr, std::size_t, AlphaHash, AlphaEq> memo_;
  std::unordered_map<Expr, bool, AlphaHash, AlphaEq> active_;
};

bool left_linear(const Rule& r);
bool check_left_linear(const RewriteSystem& R);

/// Most general unifier of two terms/atoms over their free variables.
std::optional<Subst> unify(const Expr& a, const Expr& b);

}  // namespace dm
