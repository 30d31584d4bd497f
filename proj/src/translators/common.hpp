// Shared plumbing for the translators.
#pragma once

#include <set>
#include <string>

#include "dm/syntax.hpp"
#include "dm/translators.hpp"

namespace dm::tr {

/// Fresh labels and variables for one translation run.
class Names {
 public:
  explicit Names(std::string prefix = "h") : prefix_(std::move(prefix)) {}
  std::string label() { return prefix_ + std::to_string(++n_); }
  Var fresh(std::string_view base, Sort s) {
    Var v = fresh_var(base, s, avoid_);
    avoid_.insert(v);
    return v;
  }
  void avoid(Var v) { avoid_.insert(v); }
  void avoid(const Expr& e) {
    if (!e) return;
    auto fv = free_vars(e);
    avoid_.insert(fv.begin(), fv.end());
  }
  void avoid(const NDPtr& p);

 private:
  std::string prefix_;
  int n_ = 0;
  std::set<Var> avoid_;
};

/// Every free variable mentioned by a proof, eigenvariables included.
std::set<Var> proof_vars(const NDPtr& p);

/// Renames binder display names that lie in `avoid`.
Expr rename_binders(const Expr& e, const std::set<Var>& avoid);

/// The unary template of a quantifier: body opened with a fresh hole, its
/// inner binders renamed away from `avoid`.
Template quant_template(const Expr& q, const std::set<Var>& avoid);

/// imp-e(lemma, imp-i[label: L](body))
NDPtr let_cut(const std::string& label, const NDPtr& lemma, const NDPtr& body);

/// all-e chain with the given terms, outermost binder first.
NDPtr inst_all(NDPtr p, const std::vector<Expr>& ts);

/// forall-closure over the free variables of e (sorted).
Expr closure(const Expr& e, std::vector<Var>* vars = nullptr);

/// Assumption leaf for a proposition that may have free variables: the
/// closure, instantiated back with the variables themselves.
NDPtr closed_leaf(const std::string& name, const Expr& prop);

/// Rewrites assumption names.
NDPtr map_leaf_names(const NDPtr& p, const std::function<std::string(const std::string&, const Expr&)>& f);

/// Ho fragments (defined in fz.cpp).
NDPtr ho_leibniz(const Template& a, const Expr& concl);
NDPtr ho_ind(const Template& a, const Expr& concl);
NDPtr comp_fragment(const Template& a, int j, const Expr& concl);

}  // namespace dm::tr
