#pragma once

// Abstract syntax of tactic expressions as they appear in proof scripts.
//
// Tacticals are ordinary applications of reserved names:
//   a THEN b        App(Name "THEN",   [a, b])
//   a THENL [b; c]  App(Name "THENL",  [a, List [b; c]])
//   a ORELSE b      App(Name "ORELSE", [a, b])
//   REPEAT a        App(Name "REPEAT", [a])
//   LABEL "x" a     App(Name "LABEL",  [Str "x", a])
// Str only occurs as the first argument of LABEL; every other quoted
// argument is a term.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hiprove/term.hpp"
#include "hiprove/term_syntax.hpp"

namespace hiprove {

inline constexpr std::string_view kThen = "THEN";
inline constexpr std::string_view kThenl = "THENL";
inline constexpr std::string_view kOrelse = "ORELSE";
inline constexpr std::string_view kRepeat = "REPEAT";
inline constexpr std::string_view kLabel = "LABEL";

inline bool is_infix_name(std::string_view n) {
  return n == kThen || n == kThenl || n == kOrelse;
}

class ScriptExpr {
 public:
  enum class Kind { Name, Str, List, App, TermArg };

  static ScriptExpr name(std::string binding) {
    return ScriptExpr(Kind::Name, std::move(binding), {}, std::nullopt);
  }
  static ScriptExpr str(std::string text) {
    return ScriptExpr(Kind::Str, std::move(text), {}, std::nullopt);
  }
  static ScriptExpr list(std::vector<ScriptExpr> items) {
    return ScriptExpr(Kind::List, {}, std::move(items), std::nullopt);
  }
  /// `args` must be nonempty.
  static ScriptExpr app(ScriptExpr head, std::vector<ScriptExpr> args) {
    std::vector<ScriptExpr> items;
    items.reserve(args.size() + 1);
    items.push_back(std::move(head));
    for (auto& a : args) items.push_back(std::move(a));
    return ScriptExpr(Kind::App, {}, std::move(items), std::nullopt);
  }
  static ScriptExpr term(Term t) {
    return ScriptExpr(Kind::TermArg, {}, {}, std::move(t));
  }

  static ScriptExpr then_(ScriptExpr a, ScriptExpr b) {
    return app(name(std::string(kThen)), {std::move(a), std::move(b)});
  }
  static ScriptExpr thenl(ScriptExpr a, std::vector<ScriptExpr> bs) {
    return app(name(std::string(kThenl)), {std::move(a), list(std::move(bs))});
  }
  static ScriptExpr orelse(ScriptExpr a, ScriptExpr b) {
    return app(name(std::string(kOrelse)), {std::move(a), std::move(b)});
  }
  static ScriptExpr repeat(ScriptExpr a) {
    return app(name(std::string(kRepeat)), {std::move(a)});
  }
  static ScriptExpr label(std::string text, ScriptExpr a) {
    return app(name(std::string(kLabel)), {str(std::move(text)), std::move(a)});
  }

  Kind kind() const noexcept { return data_->kind; }
  bool is(Kind k) const noexcept { return data_->kind == k; }

  /// Binding of a Name, text of a Str.
  const std::string& text() const noexcept { return data_->text; }
  /// Items of a List.
  const std::vector<ScriptExpr>& items() const noexcept { return data_->items; }
  /// Head of an App.
  const ScriptExpr& head() const { return data_->items.front(); }
  /// Arguments of an App.
  std::vector<ScriptExpr> args() const {
    return {data_->items.begin() + 1, data_->items.end()};
  }
  const ScriptExpr& arg(std::size_t i) const { return data_->items.at(i + 1); }
  std::size_t arg_count() const noexcept {
    return data_->items.empty() ? 0 : data_->items.size() - 1;
  }
  const Term& term_arg() const { return *data_->term; }

  /// Name of the head when this is an App whose head is a Name, else empty.
  std::string_view head_name() const {
    if (!is(Kind::App) || !head().is(Kind::Name)) return {};
    return head().text();
  }

  bool is_tactical(std::string_view which) const { return head_name() == which; }

  friend bool operator==(const ScriptExpr& a, const ScriptExpr& b) {
    if (a.data_ == b.data_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Kind::Name:
      case Kind::Str: return a.text() == b.text();
      case Kind::TermArg: return a.term_arg() == b.term_arg();
      default: return a.items() == b.items();
    }
  }

 private:
  struct Data {
    Kind kind;
    std::string text;
    std::vector<ScriptExpr> items;
    std::optional<Term> term;
  };

  ScriptExpr(Kind k, std::string text, std::vector<ScriptExpr> items,
             std::optional<Term> t)
      : data_(std::make_shared<const Data>(
            Data{k, std::move(text), std::move(items), std::move(t)})) {}

  std::shared_ptr<const Data> data_;
};

namespace detail {

inline std::string quote_string(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

inline void print_expr_into(std::string& out, const ScriptExpr& e, bool as_primary);

inline bool is_infix_app(const ScriptExpr& e) {
  const auto h = e.head_name();
  return !h.empty() && is_infix_name(h) && e.arg_count() == 2;
}

inline void print_list_into(std::string& out, const ScriptExpr& list) {
  out += '[';
  for (std::size_t i = 0; i < list.items().size(); ++i) {
    if (i) out += "; ";
    print_expr_into(out, list.items()[i], false);
  }
  out += ']';
}

inline void print_expr_into(std::string& out, const ScriptExpr& e, bool as_primary) {
  using K = ScriptExpr::Kind;
  switch (e.kind()) {
    case K::Name: out += e.text(); return;
    case K::Str: out += quote_string(e.text()); return;
    case K::TermArg: out += '"' + print_term(e.term_arg()) + '"'; return;
    case K::List: print_list_into(out, e); return;
    case K::App: break;
  }
  if (as_primary) {
    out += '(';
    print_expr_into(out, e, false);
    out += ')';
    return;
  }
  if (is_infix_app(e)) {
    // Infix tacticals share one precedence level and associate to the left.
    print_expr_into(out, e.arg(0), false);
    out += ' ';
    out += e.head().text();
    out += ' ';
    const ScriptExpr& rhs = e.arg(1);
    if (e.is_tactical(kThenl) && rhs.is(K::List))
      print_list_into(out, rhs);
    else
      print_expr_into(out, rhs, is_infix_app(rhs));
    return;
  }
  print_expr_into(out, e.head(), true);
  for (std::size_t i = 0; i < e.arg_count(); ++i) {
    out += ' ';
    print_expr_into(out, e.arg(i), true);
  }
}

}  // namespace detail

/// Canonical single-line text of a tactic expression.
inline std::string print_tactic_expr(const ScriptExpr& e) {
  std::string out;
  detail::print_expr_into(out, e, false);
  return out;
}

}  // namespace hiprove
