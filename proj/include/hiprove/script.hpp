#pragma once

// Proof script syntax: tactic expressions, flat scripts and packaged
// scripts, plus interpretation of expressions against a Registry.
//
// Tactic expressions:
//   expr    := app { ('THEN' | 'ORELSE') app | 'THENL' list }   (left assoc)
//   app     := primary { primary }
//   primary := NAME | STRING | list | '(' expr ')'
//   list    := '[' [expr { ';' expr }] ']'
// A quoted argument is a term, except the first argument of LABEL.
//
// Flat script:
//   g "<term>";;
//   (* *** Subgoal 1 *** *)
//   e (<expr>);;
//   ...
// Packaged script:
//   let NAME = prove("<term>",
//     <expr>);;
// with the binding optional (`prove(...);;` alone).
//
// Strings use `\"` and `\\` as escapes; any other backslash is literal, so
// terms such as "p /\ q" need no escaping. `(* ... *)` comments nest and
// are skipped, except that a subgoal marker before a flat step is kept.

#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hiprove/errors.hpp"
#include "hiprove/recorder.hpp"
#include "hiprove/script_expr.hpp"
#include "hiprove/term.hpp"
#include "hiprove/term_syntax.hpp"

namespace hiprove {

/// Dotted branch number such as 3.2.1; components are >= 1.
using SubgoalNumber = std::vector<std::size_t>;

inline std::string format_subgoal_number(const SubgoalNumber& n) {
  std::string s;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(n[i]);
  }
  return s;
}

inline std::string subgoal_comment(const SubgoalNumber& n) {
  return "(* *** Subgoal " + format_subgoal_number(n) + " *** *)";
}

struct FlatStep {
  std::optional<SubgoalNumber> comment;
  ScriptExpr expr;
  std::size_t line = 0;  // 1-based source line of the `e`, 0 if generated

  friend bool operator==(const FlatStep& a, const FlatStep& b) {
    return a.comment == b.comment && a.expr == b.expr;
  }
};

struct FlatScript {
  Term goal;
  std::vector<FlatStep> steps;

  friend bool operator==(const FlatScript&, const FlatScript&) = default;
};

struct PackagedScript {
  std::optional<std::string> name;
  Term goal;
  ScriptExpr tactic;

  friend bool operator==(const PackagedScript&, const PackagedScript&) = default;
};

namespace detail {

enum class Tok { Ident, String, LBracket, RBracket, Semi, SemiSemi, LParen, RParen, Comma, Equals,
                 Marker, End };

struct Token {
  Tok kind;
  std::string text;          // identifier, unescaped string, or marker number
  std::size_t offset = 0;    // byte offset of the token
  std::size_t content = 0;   // offset of the first character inside a string
  SubgoalNumber number;      // for Marker
};

inline const char* tok_name(Tok k) {
  switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::String: return "string";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Semi: return "';'";
    case Tok::SemiSemi: return "';;'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Equals: return "'='";
    case Tok::Marker: return "subgoal comment";
    case Tok::End: return "end of input";
  }
  return "?";
}

// Parses "(* *** Subgoal 1.2 *** *)" bodies; anything else is a plain comment.
inline std::optional<SubgoalNumber> parse_marker(std::string_view body) {
  constexpr std::string_view pre = " *** Subgoal ";
  constexpr std::string_view post = " *** ";
  if (body.size() <= pre.size() + post.size() || body.substr(0, pre.size()) != pre ||
      body.substr(body.size() - post.size()) != post)
    return std::nullopt;
  const std::string_view num = body.substr(pre.size(), body.size() - pre.size() - post.size());
  SubgoalNumber out;
  std::size_t i = 0;
  while (i < num.size()) {
    std::size_t v = 0;
    const std::size_t start = i;
    while (i < num.size() && std::isdigit(static_cast<unsigned char>(num[i])))
      v = v * 10 + static_cast<std::size_t>(num[i++] - '0');
    if (i == start || v == 0) return std::nullopt;
    out.push_back(v);
    if (i < num.size()) {
      if (num[i] != '.' || i + 1 == num.size()) return std::nullopt;
      ++i;
    }
  }
  return out;
}

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t at = i;
    if (c == '(' && i + 1 < src.size() && src[i + 1] == '*') {
      int depth = 0;
      std::size_t j = i;
      while (j < src.size()) {
        if (src.compare(j, 2, "(*") == 0) {
          ++depth;
          j += 2;
        } else if (src.compare(j, 2, "*)") == 0) {
          j += 2;
          if (--depth == 0) break;
        } else {
          ++j;
        }
      }
      if (depth != 0) throw SyntaxError("unterminated comment", at);
      if (auto n = parse_marker(src.substr(at + 2, j - at - 4)))
        out.push_back({Tok::Marker, std::string(src.substr(at, j - at)), at, 0, *n});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_'))
        ++i;
      out.push_back({Tok::Ident, std::string(src.substr(at, i - at)), at, 0, {}});
      continue;
    }
    if (c == '"') {
      std::string s;
      ++i;
      for (;;) {
        if (i >= src.size()) throw SyntaxError("unterminated string", at);
        if (src[i] == '"') break;
        if (src[i] == '\\' && i + 1 < src.size() && (src[i + 1] == '"' || src[i + 1] == '\\')) {
          s += src[i + 1];
          i += 2;
          continue;
        }
        s += src[i++];
      }
      ++i;
      out.push_back({Tok::String, std::move(s), at, at + 1, {}});
      continue;
    }
    Tok k;
    std::size_t len = 1;
    switch (c) {
      case '[': k = Tok::LBracket; break;
      case ']': k = Tok::RBracket; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case ',': k = Tok::Comma; break;
      case '=': k = Tok::Equals; break;
      case ';':
        if (i + 1 < src.size() && src[i + 1] == ';') {
          k = Tok::SemiSemi;
          len = 2;
        } else {
          k = Tok::Semi;
        }
        break;
      default:
        throw SyntaxError(std::string("unexpected character '") + c + "'", at);
    }
    out.push_back({k, std::string(src.substr(at, len)), at, 0, {}});
    i += len;
  }
  out.push_back({Tok::End, "", src.size(), 0, {}});
  return out;
}

inline bool is_tactic_name(std::string_view s) {
  if (s.empty() || !std::isupper(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!(std::isupper(static_cast<unsigned char>(c)) ||
          std::isdigit(static_cast<unsigned char>(c)) || c == '_'))
      return false;
  return true;
}

class ScriptParser {
 public:
  explicit ScriptParser(std::string_view src) : src_(src), toks_(lex(src)) {}

  ScriptExpr parse_expr() {
    ScriptExpr left = parse_app();
    for (;;) {
      const Token& t = peek();
      if (t.kind != Tok::Ident || !is_infix_name(t.text)) return left;
      const std::string op = t.text;
      ++pos_;
      if (op == kThenl) {
        if (peek().kind != Tok::LBracket) fail("expected '[' after THENL");
        ScriptExpr list = parse_list();
        left = ScriptExpr::thenl(left, list.items());
      } else {
        ScriptExpr right = parse_app();
        left = op == kThen ? ScriptExpr::then_(left, right) : ScriptExpr::orelse(left, right);
      }
    }
  }

  Term parse_term_string() {
    const Token& t = expect(Tok::String, "a quoted term");
    return term_from(t);
  }

  void expect_ident(std::string_view word) {
    const Token& t = peek();
    if (t.kind != Tok::Ident || t.text != word) fail("expected '" + std::string(word) + "'");
    ++pos_;
  }

  const Token& expect(Tok k, const char* what) {
    const Token& t = peek();
    if (t.kind != k) fail(std::string("expected ") + what + ", found " + describe(t));
    ++pos_;
    return toks_[pos_ - 1];
  }

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool at(Tok k) const { return peek().kind == k; }

  [[noreturn]] void fail(const std::string& why) const {
    throw SyntaxError(why, peek().offset);
  }

  std::size_t line_of(std::size_t offset) const {
    std::size_t line = 1;
    for (std::size_t i = 0; i < offset && i < src_.size(); ++i) line += src_[i] == '\n';
    return line;
  }

 private:
  static std::string describe(const Token& t) {
    if (t.kind == Tok::Ident) return "'" + t.text + "'";
    return tok_name(t.kind);
  }

  Term term_from(const Token& t) const {
    try {
      return parse_term(t.text);
    } catch (const SyntaxError& e) {
      throw SyntaxError(std::string("in term: ") + e.what(), t.content + e.offset());
    }
  }

  bool starts_primary() const {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident: return !is_infix_name(t.text);
      case Tok::String:
      case Tok::LBracket:
      case Tok::LParen: return true;
      default: return false;
    }
  }

  ScriptExpr parse_app() {
    if (!starts_primary()) {
      const Token& t = peek();
      if (t.kind == Tok::Ident) fail("'" + t.text + "' needs a left operand");
      fail("expected a tactic, found " + describe(t));
    }
    const Token& first = peek();
    if (first.kind == Tok::String) fail("a quoted argument needs a tactic before it");
    ScriptExpr head = parse_primary(false);
    std::vector<ScriptExpr> args;
    const bool label = head.is(ScriptExpr::Kind::Name) && head.text() == kLabel;
    while (starts_primary()) args.push_back(parse_primary(label && args.empty()));
    if (args.empty()) return head;
    if (!head.is(ScriptExpr::Kind::Name)) throw SyntaxError("only a tactic name can be applied", first.offset);
    return ScriptExpr::app(std::move(head), std::move(args));
  }

  ScriptExpr parse_primary(bool string_literal) {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident:
        if (!is_tactic_name(t.text)) fail("tactic names are upper case: '" + t.text + "'");
        ++pos_;
        return ScriptExpr::name(t.text);
      case Tok::String:
        ++pos_;
        return string_literal ? ScriptExpr::str(t.text) : ScriptExpr::term(term_from(t));
      case Tok::LBracket: return parse_list();
      case Tok::LParen: {
        ++pos_;
        ScriptExpr e = parse_expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      default: fail("expected a tactic, found " + describe(t));
    }
  }

  ScriptExpr parse_list() {
    expect(Tok::LBracket, "'['");
    std::vector<ScriptExpr> items;
    if (!at(Tok::RBracket)) {
      items.push_back(parse_expr());
      while (at(Tok::Semi)) {
        ++pos_;
        items.push_back(parse_expr());
      }
    }
    expect(Tok::RBracket, "']' or ';'");
    return ScriptExpr::list(std::move(items));
  }

  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline ScriptExpr parse_tactic_expr(std::string_view text) {
  detail::ScriptParser p(text);
  ScriptExpr e = p.parse_expr();
  if (!p.at(detail::Tok::End)) p.fail("unexpected input after tactic expression");
  return e;
}

inline FlatScript parse_flat(std::string_view text) {
  detail::ScriptParser p(text);
  using detail::Tok;
  if (p.at(Tok::Marker)) p.fail("subgoal comment before the goal");
  p.expect_ident("g");
  FlatScript f{p.parse_term_string(), {}};
  p.expect(Tok::SemiSemi, "';;'");
  while (!p.at(Tok::End)) {
    std::optional<SubgoalNumber> comment;
    if (p.at(Tok::Marker)) {
      comment = p.next().number;
      if (p.at(Tok::Marker)) p.fail("two subgoal comments in a row");
      if (p.at(Tok::End)) p.fail("subgoal comment without a step");
    }
    const std::size_t line = p.line_of(p.peek().offset);
    p.expect_ident("e");
    p.expect(Tok::LParen, "'('");
    ScriptExpr e = p.parse_expr();
    p.expect(Tok::RParen, "')'");
    p.expect(Tok::SemiSemi, "';;'");
    f.steps.push_back({std::move(comment), std::move(e), line});
  }
  return f;
}

inline std::string print_flat(const FlatScript& f) {
  std::string out = "g \"" + print_term(f.goal) + "\";;\n";
  for (const auto& s : f.steps) {
    if (s.comment) out += subgoal_comment(*s.comment) + "\n";
    out += "e (" + print_tactic_expr(s.expr) + ");;\n";
  }
  return out;
}

inline PackagedScript parse_packaged(std::string_view text) {
  detail::ScriptParser p(text);
  using detail::Tok;
  PackagedScript s{std::nullopt, Term::truth(), ScriptExpr::name("")};
  if (p.at(Tok::Ident) && p.peek().text == "let") {
    p.next();
    const auto& id = p.expect(Tok::Ident, "a binding name");
    s.name = id.text;
    p.expect(Tok::Equals, "'='");
  }
  p.expect_ident("prove");
  p.expect(Tok::LParen, "'('");
  s.goal = p.parse_term_string();
  p.expect(Tok::Comma, "','");
  s.tactic = p.parse_expr();
  p.expect(Tok::RParen, "')'");
  p.expect(Tok::SemiSemi, "';;'");
  if (!p.at(Tok::End)) p.fail("one proof per file");
  return s;
}

inline constexpr std::size_t kPackagedWidth = 72;

namespace detail {

inline std::size_t current_column(const std::string& out) {
  const auto nl = out.rfind('\n');
  return nl == std::string::npos ? out.size() : out.size() - nl - 1;
}

inline void layout_expr(std::string& out, const ScriptExpr& e, std::size_t indent,
                        std::size_t tail);

// A THENL list that does not fit gets one item per line, aligned after '['.
inline void layout_list(std::string& out, const ScriptExpr& list, std::size_t tail) {
  std::string flat;
  print_list_into(flat, list);
  if (current_column(out) + flat.size() + tail <= kPackagedWidth) {
    out += flat;
    return;
  }
  out += '[';
  const std::size_t col = current_column(out);
  const auto& items = list.items();
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ";\n" + std::string(col, ' ');
    layout_expr(out, items[i], col, i + 1 == items.size() ? tail + 1 : 1);
  }
  out += ']';
}

// Appends `e` at the current column. An operator chain that would pass the
// width is broken before an operator, continuing at column `indent`;
// `tail` characters will follow on the last line.
inline void layout_expr(std::string& out, const ScriptExpr& e, std::size_t indent,
                        std::size_t tail) {
  const std::string flat = print_tactic_expr(e);
  if (!is_infix_app(e) || current_column(out) + flat.size() + tail <= kPackagedWidth) {
    out += flat;
    return;
  }
  std::vector<const ScriptExpr*> links;
  const ScriptExpr* first = &e;
  while (is_infix_app(*first)) {
    links.push_back(first);
    first = &first->arg(0);
  }
  out += print_tactic_expr(*first);
  for (std::size_t k = links.size(); k-- > 0;) {
    const ScriptExpr& link = *links[k];
    const std::string op(link.head().text());
    const ScriptExpr& rhs = link.arg(1);
    const bool list = link.is_tactical(kThenl) && rhs.is(ScriptExpr::Kind::List);
    std::string r;
    if (list)
      print_list_into(r, rhs);
    else
      print_expr_into(r, rhs, is_infix_app(rhs));
    const std::size_t t = k == 0 ? tail : 0;
    if (current_column(out) + 1 + op.size() + 1 + r.size() + t <= kPackagedWidth) {
      out += " " + op + " " + r;
      continue;
    }
    out += "\n" + std::string(indent, ' ') + op + " ";
    if (list)
      layout_list(out, rhs, t);
    else
      out += r;
  }
}

}  // namespace detail

/// Breaks operator chains before THEN/THENL/ORELSE when a line would pass
/// column 72; continuation lines are indented by 2, and items of a long
/// THENL list go on separate lines aligned after the bracket.
inline std::string print_packaged(const PackagedScript& s) {
  std::string out;
  if (s.name) out += "let " + *s.name + " = ";
  out += "prove(\"" + print_term(s.goal) + "\",\n  ";
  detail::layout_expr(out, s.tactic, 2, 3);
  out += ");;\n";
  return out;
}

namespace detail {

[[noreturn]] inline void argument_error(const ScriptExpr& e, const std::string& why) {
  throw InterpretError("argument", why + " in '" + print_tactic_expr(e) + "'");
}

}  // namespace detail

/// Turns an expression into a recording tactic. Unknown names raise
/// category "unknown-tactic"; badly shaped applications raise "argument".
inline XTactic interpret(const ScriptExpr& e, const Registry& reg) {
  using K = ScriptExpr::Kind;
  auto lookup = [&](const std::string& name) -> const Registry::Entry& {
    const auto* entry = reg.find(name);
    if (!entry) throw InterpretError("unknown-tactic", "unknown tactic " + name);
    return *entry;
  };
  switch (e.kind()) {
    case K::Name: {
      const std::string& n = e.text();
      if (is_infix_name(n) || n == kRepeat || n == kLabel)
        detail::argument_error(e, n + " is missing its operands");
      const auto& entry = lookup(n);
      if (!entry.nullary) detail::argument_error(e, n + " expects a term argument");
      return *entry.nullary;
    }
    case K::App: break;
    default: detail::argument_error(e, "not a tactic");
  }
  if (!e.head().is(K::Name)) detail::argument_error(e, "only a tactic name can be applied");
  const std::string& n = e.head().text();
  const std::size_t argc = e.arg_count();
  auto tactic_arg = [&](std::size_t i) {
    const ScriptExpr& a = e.arg(i);
    if (a.is(K::Str) || a.is(K::TermArg) || a.is(K::List))
      detail::argument_error(e, n + " expects a tactic as argument " + std::to_string(i + 1));
    return interpret(a, reg);
  };
  if (n == kThen || n == kOrelse) {
    if (argc != 2) detail::argument_error(e, n + " takes two tactics");
    return n == kThen ? then_(tactic_arg(0), tactic_arg(1)) : orelse_(tactic_arg(0), tactic_arg(1));
  }
  if (n == kThenl) {
    if (argc != 2 || !e.arg(1).is(K::List))
      detail::argument_error(e, "THENL takes a tactic and a list of tactics");
    std::vector<XTactic> bs;
    for (const auto& item : e.arg(1).items()) {
      if (item.is(K::Str) || item.is(K::TermArg) || item.is(K::List))
        detail::argument_error(e, "THENL list items must be tactics");
      bs.push_back(interpret(item, reg));
    }
    return thenl_(tactic_arg(0), std::move(bs));
  }
  if (n == kRepeat) {
    if (argc != 1) detail::argument_error(e, "REPEAT takes one tactic");
    return repeat_(tactic_arg(0));
  }
  if (n == kLabel) {
    if (argc != 2 || !e.arg(0).is(K::Str))
      detail::argument_error(e, "LABEL takes a quoted label and a tactic");
    return hilabel_tac(UserLabel{e.arg(0).text()}, tactic_arg(1));
  }
  const auto& entry = lookup(n);
  if (!entry.with_term) detail::argument_error(e, n + " takes no arguments");
  if (argc != 1 || !e.arg(0).is(K::TermArg))
    detail::argument_error(e, n + " takes exactly one term argument");
  return (*entry.with_term)(e.arg(0).term_arg());
}

/// 1-based line and column of a byte offset.
inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace hiprove
