// Minimal s-expression reader/writer with line tracking.
#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "dm/core.hpp"

namespace dm {

class ParseError : public KernelError {
 public:
  ParseError(const std::string& msg, int line)
      : KernelError(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct SExp {
  bool is_atom = true;
  std::string atom;
  std::vector<SExp> list;
  int line = 0;

  static SExp make_atom(std::string s, int line = 0) {
    SExp e;
    e.atom = std::move(s);
    e.line = line;
    return e;
  }
  static SExp make_list(std::vector<SExp> xs, int line = 0) {
    SExp e;
    e.is_atom = false;
    e.list = std::move(xs);
    e.line = line;
    return e;
  }

  bool is(std::string_view a) const { return is_atom && atom == a; }
  /// True for a list whose first element is the atom `head`.
  bool head_is(std::string_view head) const {
    return !is_atom && !list.empty() && list[0].is(head);
  }
  std::size_t size() const { return list.size(); }
  const SExp& operator[](std::size_t i) const;

  /// Value following `:key` inside this list, or nullptr.
  const SExp* keyword(std::string_view key) const;
};

std::vector<SExp> read_sexps(std::string_view text);
SExp read_sexp(std::string_view text);
SExp read_sexp_file(const std::string& path);
std::string slurp(const std::string& path);

std::string write_sexp(const SExp& e);
/// Indented rendering: lists longer than `width` are broken one element per line.
std::string write_sexp_pretty(const SExp& e, std::size_t width = 100);

}  // namespace dm
