#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

#include "lamcount/size_model.hpp"

namespace lamcount {

class Term;
using TermPtr = std::shared_ptr<const Term>;

/// Immutable De Bruijn term: a variable index (>= 1), an abstraction, or an
/// application.  Subterms are shared, so structural copies are cheap and the
/// exhaustive enumerator can reuse whole forests of subterms.
class Term {
 public:
  enum class Kind { variable, abstraction, application };

  static TermPtr var(unsigned index) {
    if (index == 0) throw std::invalid_argument("variable index must be >= 1");
    return std::shared_ptr<const Term>(new Term(index));
  }
  static TermPtr abs(TermPtr body) {
    return std::shared_ptr<const Term>(new Term(Kind::abstraction, std::move(body), nullptr));
  }
  static TermPtr app(TermPtr fun, TermPtr arg) {
    return std::shared_ptr<const Term>(new Term(Kind::application, std::move(fun), std::move(arg)));
  }

  Kind kind() const noexcept { return kind_; }
  unsigned index() const noexcept { return index_; }       // variable only
  const TermPtr& body() const noexcept { return left_; }   // abstraction only
  const TermPtr& fun() const noexcept { return left_; }    // application only
  const TermPtr& arg() const noexcept { return right_; }   // application only

 private:
  explicit Term(unsigned index) : kind_(Kind::variable), index_(index) {}
  Term(Kind k, TermPtr l, TermPtr r)
      : kind_(k), left_(std::move(l)), right_(std::move(r)) {}

  Kind kind_;
  unsigned index_ = 0;
  TermPtr left_, right_;
};

inline bool structurally_equal(const Term& x, const Term& y) {
  if (x.kind() != y.kind()) return false;
  switch (x.kind()) {
    case Term::Kind::variable:
      return x.index() == y.index();
    case Term::Kind::abstraction:
      return structurally_equal(*x.body(), *y.body());
    case Term::Kind::application:
      return structurally_equal(*x.fun(), *y.fun()) &&
             structurally_equal(*x.arg(), *y.arg());
  }
  return false;
}

/// Size of a term under a weight model; a variable with index k costs
/// a + (k-1)*b.
inline std::uint64_t term_size(const Term& t, const SizeModel& model) {
  switch (t.kind()) {
    case Term::Kind::variable:
      return std::uint64_t{model.a} + std::uint64_t{model.b} * (t.index() - 1);
    case Term::Kind::abstraction:
      return model.c + term_size(*t.body(), model);
    case Term::Kind::application:
      return std::uint64_t{model.d} + term_size(*t.fun(), model) +
             term_size(*t.arg(), model);
  }
  return 0;
}

/// Minimal number of leading abstractions needed to close the term:
/// 0 for closed terms, k for a bare variable with index k.
inline unsigned openness(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::variable:
      return t.index();
    case Term::Kind::abstraction: {
      unsigned o = openness(*t.body());
      return o > 0 ? o - 1 : 0;
    }
    case Term::Kind::application:
      return std::max(openness(*t.fun()), openness(*t.arg()));
  }
  return 0;
}

/// Largest variable index occurring anywhere in the term.
inline unsigned max_index(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::variable:
      return t.index();
    case Term::Kind::abstraction:
      return max_index(*t.body());
    case Term::Kind::application:
      return std::max(max_index(*t.fun()), max_index(*t.arg()));
  }
  return 0;
}

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

namespace detail {

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  TermPtr parse() {
    TermPtr t = parse_term();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return t;
  }

 private:
  // term := '\' term | atom { atom } [ '\' term ]
  // An abstraction body extends as far to the right as possible, so a
  // lambda may appear unparenthesized only as the last factor of an
  // application chain.
  TermPtr parse_term() {
    skip_space();
    if (peek() == '\\') {
      ++pos_;
      return Term::abs(parse_term());
    }
    TermPtr t = parse_atom();
    for (;;) {
      skip_space();
      char ch = peek();
      if (ch == '\\') {
        ++pos_;
        return Term::app(std::move(t), Term::abs(parse_term()));
      }
      if (ch == '(' || std::isdigit(static_cast<unsigned char>(ch))) {
        t = Term::app(std::move(t), parse_atom());
        continue;
      }
      return t;
    }
  }

  TermPtr parse_atom() {
    skip_space();
    char ch = peek();
    if (ch == '(') {
      ++pos_;
      TermPtr t = parse_term();
      skip_space();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) return parse_index();
    if (ch == '\0') fail("unexpected end of input");
    fail(std::string("unexpected character '") + ch + "'");
    return nullptr;  // unreachable
  }

  TermPtr parse_index() {
    std::size_t start = pos_;
    std::uint64_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > 1000000000ULL) fail_at(start, "variable index too large");
      ++pos_;
    }
    if (value == 0) fail_at(start, "variable index must be >= 1");
    return Term::var(static_cast<unsigned>(value));
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }
  [[noreturn]] void fail_at(std::size_t p, const std::string& msg) const {
    throw ParseError(p, msg);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline void format_term_rec(const Term& t, bool rightmost, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::variable:
      out += std::to_string(t.index());
      return;
    case Term::Kind::abstraction:
      if (rightmost) {
        out += "\\ ";
        format_term_rec(*t.body(), true, out);
      } else {
        out += "(\\ ";
        format_term_rec(*t.body(), true, out);
        out += ')';
      }
      return;
    case Term::Kind::application:
      format_term_rec(*t.fun(), false, out);
      out += ' ';
      if (t.arg()->kind() == Term::Kind::application) {
        out += '(';
        format_term_rec(*t.arg(), true, out);
        out += ')';
      } else {
        format_term_rec(*t.arg(), rightmost, out);
      }
      return;
  }
}

}  // namespace detail

/// Parses the concrete syntax: '\' for abstraction, decimal indices (>= 1),
/// juxtaposition for left-associative application, parentheses for grouping.
inline TermPtr parse_term(std::string_view text) {
  return detail::TermParser(text).parse();
}

/// Renders a term with minimal parentheses; parse_term(format_term(t))
/// reproduces t.
inline std::string format_term(const Term& t) {
  std::string out;
  detail::format_term_rec(t, true, out);
  return out;
}

}  // namespace lamcount
