// Signatures, rewrite systems and presentations for arithmetic of order i,
// the class extension, HO_i, WS_i, HHA_i and the Add example, plus the
// class encoder E.
//
// Order configuration: `zi_signature(i)` has arithmetic sorts 0..i-1.
// The class-based systems for parameter i work over sorts 0..i together
// with the list sort l and the class sort c.
#pragma once

#include <string>
#include <vector>

#include "dm/core.hpp"
#include "dm/rewrite.hpp"

namespace dm {

// symbol names
std::string in_sym(int j);     // in^j : [j; j+1]
std::string inc_sym(int j);    // dotted in^j : [j; j+1] -> c
std::string one_sym(int j);    // 1^j : j
std::string S_sym(int j);      // S^j : [j] -> j
std::string sub_sym(int j);    // .[.]^j : [j; l] -> j
std::string cons_sym(int j);   // ::^j : [j; l] -> l
std::string ex_sym(int j);     // P^j : [c] -> c
std::string all_sym(int j);    // C^j : [c] -> c
std::string comp_sym(int j);   // comp^j : [c] -> j, j >= 1

Signature zi_signature(int order);
/// Z_i language over sorts 0..i plus the class symbols; with `hha`, also
/// pred, Null and the dotted Null.
Signature classes_signature(int i, bool hha = false);
Signature add_signature();

// term builders over the fixed symbol names
Expr zero();
Expr succ(Expr t);
Expr numeral(unsigned n);
Expr plus(Expr a, Expr b);
Expr times(Expr a, Expr b);
Expr eq(Expr a, Expr b);
Expr in(int j, Expr a, Expr b);
Expr predf(Expr t);
Expr null_atom(Expr t);
Expr nil();
Expr cons(Expr t, Expr l);  // level taken from t's sort
Expr tuple(const std::vector<Expr>& ts);
Expr sub(Expr t, Expr l);   // level taken from t's sort
Expr eps(Expr l, Expr c);
/// <t1..tn> eps c
Expr member(const std::vector<Expr>& ts, Expr c);
Expr member(Expr t, Expr c);
Expr one(int j);
Expr S(Expr t);
Expr doteq(Expr a, Expr b);
Expr dotin(int j, Expr a, Expr b);
Expr cunion(Expr a, Expr b);
Expr cinter(Expr a, Expr b);
Expr cimp(Expr a, Expr b);
Expr cempty();
Expr cex(int j, Expr a);
Expr call(int j, Expr a);
Expr comp(int j, Expr a);  // comp^j, result sort j
Expr dotnull(Expr t);
Expr add_atom(Expr a, Expr b, Expr c);

/// Sort-0 variable / class variable shorthands.
Expr v0(std::string_view name);
Expr vc(std::string_view name);

RewriteSystem add_system();
RewriteSystem ho_system(int i);
RewriteSystem ws_system(int i);
/// Flags: not terminating, not confluent. auto_subsystem is the system
/// without the induction rule (terminating; normal-form comparison is a
/// sound semi-decision there).
RewriteSystem hha_system(int i);
/// Name of the induction-unfolding rule in hha_system.
inline const char* kHhaInductionRule = "ind";

/// ||t|| relative to the list alphas (head first).
Expr encode_term(const Expr& t, const std::vector<Var>& alphas);

struct EncodedClass {
  Expr cls;
  Expr source;
  std::vector<Var> vars;
};

/// E_P^alphas. Throws KernelError on constructs without a clause.
EncodedClass encode_prop(const Expr& p, const std::vector<Var>& alphas);

/// Class for a unary template A(?1): E_{A(x)}^x with x fresh.
Expr template_class(const Expr& templ, Var hole);

struct Axiom {
  std::string name;
  Expr prop;
};

struct Presentation {
  std::string name;
  Signature sig;
  std::vector<Axiom> axioms;
  const Axiom* find(std::string_view n) const;
  void add(std::string n, Expr p) { axioms.push_back(Axiom{std::move(n), std::move(p)}); }
};

// single axioms by name
Expr refl_axiom();
Expr robinson_axiom(std::string_view name);  // "0!=s", "Inj_s", "Onto_s", "+0", "+s", "x0", "xs"
std::vector<std::string> robinson_names();
Expr leibniz_ax();
Expr ind_ax();
Expr comp_ax(int j);
Expr comp_sk(int j);

Presentation fz_axioms(int i);
std::vector<Axiom> ws_axioms(int i);
Presentation zws_axioms(int i);
Presentation zsk_axioms(int i);
Presentation ho_compatible_axioms(int i);
Presentation hha_extra_axioms(int i);
/// {forall y. Add(0,y,y), forall x y z. Add(s x, y, s z) <=> Add(x,y,z)}
Presentation add_presentation1();
/// {forall y. Add(0,y,y) <=> top, forall x y z. Add(s x, y, s z) <=> Add(x,y,z)}
Presentation add_presentation2();

}  // namespace dm
