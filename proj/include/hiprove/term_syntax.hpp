#pragma once

// Concrete syntax of terms and goals.
//
//   term  := disj ['==>' term]        (right associative, loosest)
//   disj  := conj ['\/' disj]
//   conj  := prim ['/\' conj]         (tightest)
//   prim  := [a-z][a-zA-Z0-9_]* | 'T' | '(' term ')'
//
// Goals print as `a1, a2 |- c`, or `|- c` with no assumptions.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "hiprove/errors.hpp"
#include "hiprove/term.hpp"

namespace hiprove {

namespace detail {

inline int term_level(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Imp: return 1;
    case Term::Kind::Disj: return 2;
    case Term::Kind::Conj: return 3;
    default: return 4;
  }
}

inline void print_term_into(std::string& out, const Term& t, int min_level) {
  const int level = term_level(t);
  const bool parens = level < min_level;
  if (parens) out += '(';
  switch (t.kind()) {
    case Term::Kind::Atom: out += t.name(); break;
    case Term::Kind::Truth: out += 'T'; break;
    case Term::Kind::Conj:
    case Term::Kind::Disj:
    case Term::Kind::Imp: {
      const char* op = t.is(Term::Kind::Conj)   ? " /\\ "
                       : t.is(Term::Kind::Disj) ? " \\/ "
                                                : " ==> ";
      print_term_into(out, t.left(), level + 1);
      out += op;
      print_term_into(out, t.right(), level);
      break;
    }
  }
  if (parens) out += ')';
}

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  Term parse_whole() {
    Term t = parse_imp();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return t;
  }

  Goal parse_goal() {
    Assumptions as;
    skip_ws();
    if (!at("|-")) {
      for (;;) {
        as.push_back(parse_imp());
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ',') {
          ++pos_;
          continue;
        }
        break;
      }
      skip_ws();
      if (!at("|-")) fail("expected '|-'");
    }
    pos_ += 2;
    Term c = parse_imp();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return Goal(std::move(as), std::move(c));
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError(what, pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool at(std::string_view tok) {
    skip_ws();
    return text_.substr(pos_, tok.size()) == tok;
  }

  bool accept(std::string_view tok) {
    if (!at(tok)) return false;
    pos_ += tok.size();
    return true;
  }

  Term parse_imp() {
    Term lhs = parse_disj();
    if (accept("==>")) return Term::imp(std::move(lhs), parse_imp());
    return lhs;
  }

  Term parse_disj() {
    Term lhs = parse_conj();
    if (accept("\\/")) return Term::disj(std::move(lhs), parse_disj());
    return lhs;
  }

  Term parse_conj() {
    Term lhs = parse_prim();
    if (accept("/\\")) return Term::conj(std::move(lhs), parse_conj());
    return lhs;
  }

  Term parse_prim() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected a term");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Term inner = parse_imp();
      if (!accept(")")) fail("expected ')'");
      return inner;
    }
    if (c == 'T' && !ident_char_at(pos_ + 1)) {
      ++pos_;
      return Term::truth();
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (ident_char_at(pos_)) ++pos_;
      return Term::atom(std::string(text_.substr(start, pos_ - start)));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  bool ident_char_at(std::size_t i) const {
    if (i >= text_.size()) return false;
    const auto c = static_cast<unsigned char>(text_[i]);
    return std::isalnum(c) || c == '_';
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Canonical text of a term, with the fewest parentheses the grammar needs.
inline std::string print_term(const Term& t) {
  std::string out;
  detail::print_term_into(out, t, 0);
  return out;
}

/// Throws SyntaxError carrying the 0-based byte offset of the problem.
inline Term parse_term(std::string_view text) {
  return detail::TermParser(text).parse_whole();
}

inline std::string print_goal(const Goal& g) {
  std::string out;
  for (std::size_t i = 0; i < g.assumptions.size(); ++i) {
    if (i) out += ", ";
    out += print_term(g.assumptions[i]);
  }
  out += out.empty() ? "|- " : " |- ";
  out += print_term(g.conclusion);
  return out;
}

inline Goal parse_goal(std::string_view text) {
  return detail::TermParser(text).parse_goal();
}

}  // namespace hiprove
