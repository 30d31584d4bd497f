#include "dm/sexpr.hpp"

#include <fstream>
#include <sstream>

namespace dm {

const SExp& SExp::operator[](std::size_t i) const {
  if (is_atom || i >= list.size()) throw ParseError("malformed form: missing element " + std::to_string(i), line);
  return list[i];
}

const SExp* SExp::keyword(std::string_view key) const {
  if (is_atom) return nullptr;
  for (std::size_t i = 0; i + 1 < list.size(); ++i)
    if (list[i].is(key)) return &list[i + 1];
  return nullptr;
}

namespace {

struct Reader {
  std::string_view s;
  std::size_t i = 0;
  int line = 1;

  void skip() {
    while (i < s.size()) {
      char c = s[i];
      if (c == '\n') {
        ++line;
        ++i;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++i;
      } else if (c == ';') {
        while (i < s.size() && s[i] != '\n') ++i;
      } else {
        break;
      }
    }
  }

  SExp read() {
    skip();
    if (i >= s.size()) throw ParseError("unexpected end of input", line);
    char c = s[i];
    if (c == ')') throw ParseError("unexpected ')'", line);
    if (c == '(') {
      int start = line;
      ++i;
      std::vector<SExp> xs;
      for (;;) {
        skip();
        if (i >= s.size()) throw ParseError("unclosed '('", start);
        if (s[i] == ')') {
          ++i;
          break;
        }
        xs.push_back(read());
      }
      return SExp::make_list(std::move(xs), start);
    }
    std::size_t b = i;
    while (i < s.size()) {
      char d = s[i];
      if (d == '(' || d == ')' || d == ' ' || d == '\t' || d == '\n' || d == '\r' || d == ';') break;
      ++i;
    }
    return SExp::make_atom(std::string(s.substr(b, i - b)), line);
  }
};

}  // namespace

std::vector<SExp> read_sexps(std::string_view text) {
  Reader r{text};
  std::vector<SExp> out;
  for (;;) {
    r.skip();
    if (r.i >= text.size()) break;
    out.push_back(r.read());
  }
  return out;
}

SExp read_sexp(std::string_view text) {
  auto xs = read_sexps(text);
  if (xs.size() != 1) throw ParseError("expected exactly one s-expression, found " + std::to_string(xs.size()), 0);
  return xs[0];
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SExp read_sexp_file(const std::string& path) { return read_sexp(slurp(path)); }

namespace {

void write_to(const SExp& e, std::string& out) {
  if (e.is_atom) {
    out += e.atom;
    return;
  }
  out += '(';
  for (std::size_t k = 0; k < e.list.size(); ++k) {
    if (k) out += ' ';
    write_to(e.list[k], out);
  }
  out += ')';
}

// flat length, stopping once it passes limit
std::size_t flat_len(const SExp& e, std::size_t limit) {
  if (e.is_atom) return e.atom.size();
  std::size_t n = 2 + (e.list.empty() ? 0 : e.list.size() - 1);
  for (const auto& x : e.list) {
    if (n > limit) return n;
    n += flat_len(x, limit - std::min(n, limit));
  }
  return n;
}

}  // namespace

std::string write_sexp(const SExp& e) {
  std::string out;
  write_to(e, out);
  return out;
}

namespace {

void pretty(const SExp& e, std::size_t indent, std::size_t width, std::string& out) {
  std::size_t room = width > indent ? width - indent : 0;
  if (e.is_atom || flat_len(e, room) <= room || e.list.size() < 2) {
    write_to(e, out);
    return;
  }
  out += '(';
  out += write_sexp(e.list[0]);
  std::size_t k = 1;
  // keep leading atoms (and keyword/value pairs) on the head line
  while (k < e.list.size() && e.list[k].is_atom && e.list[k].atom.rfind(":", 0) != 0) {
    out += ' ';
    out += e.list[k].atom;
    ++k;
  }
  for (; k < e.list.size(); ++k) {
    out += '\n';
    out.append(indent + 2, ' ');
    if (e.list[k].is_atom && e.list[k].atom.rfind(":", 0) == 0 && k + 1 < e.list.size()) {
      out += e.list[k].atom;
      out += ' ';
      ++k;
      pretty(e.list[k], indent + 3 + e.list[k - 1].atom.size(), width, out);
    } else {
      pretty(e.list[k], indent + 2, width, out);
    }
  }
  out += ')';
}

}  // namespace

std::string write_sexp_pretty(const SExp& e, std::size_t width) {
  std::string out;
  pretty(e, 0, width, out);
  return out;
}

}  // namespace dm
