// Concrete s-expression syntax for terms and propositions.
//
//   term  ::= NAME | #k | (f term...) | (the SORT term)
//   prop  ::= bot | top | NAME | (p term...) | (and p q...) | (or p q...)
//           | (imp p q...) | (not p) | (iff p q)
//           | (forall (x SORT) p) | (exists (x SORT) p)
//           | (forall ((x SORT) (y SORT)...) p)
//
// A bare name in term position is, in order: the innermost binder of that
// name at the expected sort, a constant of the signature, or a free variable
// of the expected sort. `#k` is a loose de Bruijn index. and/or/imp with
// more than two arguments nest to the right; not and iff are expanded.
#pragma once

#include <string>
#include <vector>

#include "dm/core.hpp"
#include "dm/sexpr.hpp"

namespace dm {

Expr parse_term(const Signature& sig, const SExp& s, Sort expected);
Expr parse_prop(const Signature& sig, const SExp& s);
/// Term or proposition, decided by the head.
Expr parse_expr(const Signature& sig, const SExp& s, std::optional<Sort> expected = std::nullopt);

Expr parse_term(const Signature& sig, std::string_view text, Sort expected);
Expr parse_prop(const Signature& sig, std::string_view text);

/// Parse a binder spec `(x SORT)`.
Var parse_binder(const SExp& s);

SExp to_sexp(const Expr& e);
std::string print(const Expr& e);

/// Infix rendering for humans (uses the ASCII symbol names).
std::string pretty(const Expr& e);

}  // namespace dm
