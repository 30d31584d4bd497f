// Many-sorted first-order syntax: sorts, signatures, terms and propositions.
//
// Terms and propositions share one immutable node type. Bound variables are
// de Bruijn indices; binders keep a display name for printing and for the
// named view used by positions. A binder's display name never coincides
// with a free variable of the same sort in its body.
#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dm {

class KernelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SortError : public KernelError {
 public:
  using KernelError::KernelError;
};

class PositionError : public KernelError {
 public:
  using KernelError::KernelError;
};

/// Arithmetic level j >= 0, the list sort, or the class sort.
class Sort {
 public:
  constexpr Sort() = default;
  static constexpr Sort arith(int j) { return Sort(j); }
  static constexpr Sort list() { return Sort(-1); }
  static constexpr Sort cls() { return Sort(-2); }

  bool is_arith() const { return code_ >= 0; }
  bool is_list() const { return code_ == -1; }
  bool is_class() const { return code_ == -2; }
  int level() const { return code_; }
  int code() const { return code_; }

  std::string str() const;
  static std::optional<Sort> parse(std::string_view s);

  friend constexpr auto operator<=>(Sort, Sort) = default;

 private:
  explicit constexpr Sort(int c) : code_(c) {}
  int code_ = 0;
};

/// Interned symbol or variable name.
using Sym = std::uint32_t;
Sym intern(std::string_view name);
const std::string& name_of(Sym s);

struct Var {
  Sym name = 0;
  Sort sort;
  friend auto operator<=>(const Var&, const Var&) = default;
};

Var mkvar(std::string_view name, Sort s);
std::string show(const Var& v);

enum class Kind : std::uint8_t {
  Var,
  BVar,
  App,
  Bot,
  Top,
  Atom,
  And,
  Or,
  Imp,
  Forall,
  Exists,
};

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
  Kind kind;
  Sym sym;         // variable name, function, predicate, or binder display name
  Sort sort;       // term sort, or the bound variable's sort for binders
  std::uint32_t index;  // de Bruijn index for BVar
  std::vector<Expr> args;
  std::size_t hash;     // ignores binder display names
  std::uint32_t size;   // symbol occurrences
  std::uint32_t loose;  // 1 + largest loose index, 0 if none
  std::uint64_t fvmask; // bloom filter over free variables
};

inline bool is_term(const Expr& e) {
  return e->kind == Kind::Var || e->kind == Kind::BVar || e->kind == Kind::App;
}
inline bool is_binder(const Expr& e) {
  return e->kind == Kind::Forall || e->kind == Kind::Exists;
}
inline bool is_connective(const Expr& e) {
  return e->kind == Kind::And || e->kind == Kind::Or || e->kind == Kind::Imp;
}
inline std::size_t size(const Expr& e) { return e->size; }

// Raw constructors. mk_quant renames the display name when it would clash
// with a free variable of the body.
Expr mk_var(Var v);
Expr mk_bvar(std::uint32_t index, Sort s);
Expr mk_app(Sym f, Sort result, std::vector<Expr> args);
Expr mk_atom(Sym p, std::vector<Expr> args);
Expr mk_bot();
Expr mk_top();
Expr mk_and(Expr a, Expr b);
Expr mk_or(Expr a, Expr b);
Expr mk_imp(Expr a, Expr b);
Expr mk_binop(Kind k, Expr a, Expr b);
Expr mk_quant(Kind k, Sym name, Sort s, Expr body);

// Named constructors.
Expr var(std::string_view name, Sort s);
Expr forall_(Var x, const Expr& body);
Expr exists_(Var x, const Expr& body);
Expr quant(Kind k, Var x, const Expr& body);
Expr neg(Expr a);
Expr iff(const Expr& a, const Expr& b);

/// Rebuild a node with new children, keeping kind, symbol and sort.
Expr rebuild(const Expr& e, std::vector<Expr> args);

bool alpha_equal(const Expr& a, const Expr& b);

struct AlphaHash {
  std::size_t operator()(const Expr& e) const { return e->hash; }
};
struct AlphaEq {
  bool operator()(const Expr& a, const Expr& b) const { return alpha_equal(a, b); }
};

// Locally nameless plumbing.
Expr lift(const Expr& t, std::uint32_t by, std::uint32_t cutoff = 0);
Expr abstract(const Expr& body, Var x);
Expr instantiate(const Expr& body, const Expr& t);

/// The binder's display variable and its body opened with it.
std::pair<Var, Expr> open_quant(const Expr& q);
/// Open with a chosen variable.
Expr open_with(const Expr& q, Var v);

std::set<Var> free_vars(const Expr& e);
bool occurs_free(Var x, const Expr& e);
Var fresh_var(std::string_view base, Sort s, const std::set<Var>& avoid);
Var fresh_var_for(std::string_view base, Sort s, const std::vector<Expr>& avoid);

using Subst = std::map<Var, Expr>;

/// Capture-avoiding simultaneous substitution of free variables.
Expr apply_subst(const Expr& e, const Subst& s);
Expr subst1(const Expr& e, Var x, const Expr& t);

bool freely_substitutable(const Expr& t, Var x, const Expr& p);

/// 1-based child indices.
using Position = std::vector<int>;
std::string show(const Position& p);

bool valid_position(const Expr& e, const Position& p);
/// Subobject at p; binders on the path are opened with their display names.
Expr subterm_at(const Expr& e, const Position& p);
/// Graft s at p; free variables of s named like an enclosing binder are
/// captured by it.
Expr replace_at(const Expr& e, const Expr& s, const Position& p);
/// Locally nameless variants: the subobject may contain loose indices.
Expr subterm_raw(const Expr& e, const Position& p);
Expr replace_raw(const Expr& e, const Position& p, const Expr& s);
/// Every position, preorder.
std::vector<Position> positions(const Expr& e);

struct FunDecl {
  Sym name;
  std::vector<Sort> args;
  Sort result;
};

struct PredDecl {
  Sym name;
  std::vector<Sort> args;
};

class Signature {
 public:
  void add_sort(Sort s);
  bool has_sort(Sort s) const;
  const std::vector<Sort>& sorts() const { return sorts_; }

  void add_fun(std::string_view name, std::vector<Sort> args, Sort result);
  void add_pred(std::string_view name, std::vector<Sort> args);
  const FunDecl* fun(Sym s) const;
  const PredDecl* pred(Sym s) const;
  const FunDecl* fun(std::string_view n) const { return fun(intern(n)); }
  const PredDecl* pred(std::string_view n) const { return pred(intern(n)); }
  const std::vector<FunDecl>& funs() const { return funs_; }
  const std::vector<PredDecl>& preds() const { return preds_; }

  /// Sort-checked application and atom.
  Expr app(std::string_view f, std::vector<Expr> args) const;
  Expr atom(std::string_view p, std::vector<Expr> args) const;

  /// Throws SortError describing the first problem.
  void check(const Expr& e) const;
  bool well_sorted(const Expr& e) const;

  /// Union; declarations must agree.
  void merge(const Signature& other);

 private:
  std::vector<Sort> sorts_;
  std::vector<FunDecl> funs_;
  std::vector<PredDecl> preds_;
  std::map<Sym, std::size_t> fun_index_;
  std::map<Sym, std::size_t> pred_index_;
};

}  // namespace dm
