// File formats for signatures, rewrite systems and axiom presentations.
//
//   (signature [(base zi ORDER) | (base classes I [hha]) | (base add)]
//              (sort S)... (fun NAME (SORT...) SORT)... (pred NAME (SORT...))...)
//   (system NAME SIGNATURE [(flags terminating confluent)] [(fuel C0 K)]
//           (rules (rule NAME LHS RHS)...))
//   (system (builtin add|ws|ho|hha|empty [I]))
//   (axioms NAME SIGNATURE (axiom NAME PROP)...)
#pragma once

#include <optional>
#include <string>

#include "dm/core.hpp"
#include "dm/encodings.hpp"
#include "dm/rewrite.hpp"
#include "dm/sexpr.hpp"

namespace dm {

Signature parse_signature(const SExp& s);
SExp signature_to_sexp(const Signature& sig);

/// Built-in systems by id: add, ws, ho, hha, empty (pure ND over the
/// class signature of the given order).
std::optional<RewriteSystem> builtin_system(std::string_view id, int i);
RewriteSystem empty_system(const Signature& sig);

RewriteSystem parse_system(const SExp& s);
SExp system_to_sexp(const RewriteSystem& R);
/// A builtin id (`ho`, `hha:2`, ...) or a path to a system file.
RewriteSystem load_system(const std::string& spec, int default_order);

Presentation parse_presentation(const SExp& s);
SExp presentation_to_sexp(const Presentation& p);

}  // namespace dm
