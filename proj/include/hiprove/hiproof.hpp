#pragma once

// Hierarchical proof trees.
//
// A hiproof is built from four constructors:
//   Atomic(l, g, n)   a step labelled l applied to goal g leaving n subgoals
//   Sequence[e1..en]  plug the outputs of e_i into the inputs of e_{i+1}
//   Tensor[e1..en]    side by side
//   Box(l, h)         h viewed as a single step labelled l
//
// IN(h) counts the goals h consumes and OUT(h) the goals it leaves open. A
// hiproof is well formed when every Sequence and Tensor has at least two
// items, every Box encloses a proof with IN = 1, adjacent Sequence items
// agree on arity, and the special labels (identity, duplicate, variable)
// only sit on atomics of arity 1, 0 and 0.
//
// Goals are stored as canonical text (see print_goal) so that proofs are
// self-contained once serialized. IN, OUT and the shallow size are computed
// once at construction; all nodes are immutable and freely shared.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hiprove/errors.hpp"
#include "hiprove/script_expr.hpp"
#include "hiprove/term_syntax.hpp"

namespace hiprove {

struct RuleLabel {
  std::string name;
  friend bool operator==(const RuleLabel&, const RuleLabel&) = default;
};
struct TacticLabel {
  ScriptExpr expr;
  friend bool operator==(const TacticLabel& a, const TacticLabel& b) { return a.expr == b.expr; }
};
struct UserLabel {
  std::string text;
  friend bool operator==(const UserLabel&, const UserLabel&) = default;
};
struct IdentityLabel {
  friend bool operator==(const IdentityLabel&, const IdentityLabel&) = default;
};
struct DuplicateLabel {
  friend bool operator==(const DuplicateLabel&, const DuplicateLabel&) = default;
};
struct VariableLabel {
  std::string name;
  friend bool operator==(const VariableLabel&, const VariableLabel&) = default;
};

class Label {
 public:
  enum class Kind { Rule, Tactic, User, Identity, Duplicate, Variable };

  using Value = std::variant<RuleLabel, TacticLabel, UserLabel, IdentityLabel,
                             DuplicateLabel, VariableLabel>;

  template <typename T>
    requires std::constructible_from<Value, T>
  Label(T v) : value_(std::move(v)) {}  // NOLINT(google-explicit-constructor)

  Kind kind() const noexcept { return static_cast<Kind>(value_.index()); }
  bool is(Kind k) const noexcept { return kind() == k; }
  const Value& value() const noexcept { return value_; }

  /// Display text: rule name, printed tactic expression, user text,
  /// variable name, or empty for identity and duplicate.
  std::string text() const {
    switch (kind()) {
      case Kind::Rule: return std::get<RuleLabel>(value_).name;
      case Kind::Tactic: return print_tactic_expr(std::get<TacticLabel>(value_).expr);
      case Kind::User: return std::get<UserLabel>(value_).text;
      case Kind::Variable: return std::get<VariableLabel>(value_).name;
      default: return {};
    }
  }

  friend bool operator==(const Label&, const Label&) = default;

 private:
  Value value_;
};

inline const char* kind_name(Label::Kind k) {
  switch (k) {
    case Label::Kind::Rule: return "rule";
    case Label::Kind::Tactic: return "tactic";
    case Label::Kind::User: return "user";
    case Label::Kind::Identity: return "identity";
    case Label::Kind::Duplicate: return "duplicate";
    case Label::Kind::Variable: return "variable";
  }
  return "?";
}

class Hiproof {
 public:
  enum class Kind { Atomic, Sequence, Tensor, Box };

  /// `vars` lists the variables of a box that truncation replaced by this
  /// atomic; it is empty for ordinary steps.
  static Hiproof atomic(Label label, std::string goal, std::size_t arity,
                        std::vector<std::string> vars = {}) {
    auto n = std::make_shared<Node>(Kind::Atomic, std::move(label));
    n->goal = std::move(goal);
    n->arity = arity;
    n->vars = std::move(vars);
    n->in = 1;
    n->out = arity;
    n->shallow = 1;
    return Hiproof(std::move(n));
  }

  static Hiproof sequence(std::vector<Hiproof> items) {
    return composite(Kind::Sequence, std::move(items));
  }

  static Hiproof tensor(std::vector<Hiproof> items) {
    return composite(Kind::Tensor, std::move(items));
  }

  static Hiproof box(Label label, Hiproof inner) {
    auto n = std::make_shared<Node>(Kind::Box, std::move(label));
    n->in = inner.in_count();
    n->out = inner.out_count();
    n->shallow = 1;
    n->items.push_back(std::move(inner));
    return Hiproof(std::move(n));
  }

  Kind kind() const noexcept { return node_->kind; }
  bool is(Kind k) const noexcept { return node_->kind == k; }

  /// Label of an Atomic or Box.
  const Label& label() const noexcept { return node_->label; }
  /// Goal text of an Atomic.
  const std::string& goal() const noexcept { return node_->goal; }
  /// Subgoal count of an Atomic.
  std::size_t arity() const noexcept { return node_->arity; }
  const std::vector<std::string>& vars() const noexcept { return node_->vars; }
  /// Items of a Sequence or Tensor; the single inner proof of a Box.
  const std::vector<Hiproof>& items() const noexcept { return node_->items; }
  const Hiproof& inner() const { return node_->items.front(); }

  std::size_t in_count() const noexcept { return node_->in; }
  std::size_t out_count() const noexcept { return node_->out; }
  std::size_t shallow_size() const noexcept { return node_->shallow; }

  /// Structural equality. The truncation annotation `vars` is not compared;
  /// use `identical` for that.
  friend bool operator==(const Hiproof& a, const Hiproof& b) { return equal(a, b, false); }

  friend bool identical(const Hiproof& a, const Hiproof& b) { return equal(a, b, true); }

 private:
  struct Node {
    Node(Kind k, Label l) : kind(k), label(std::move(l)) {}
    Kind kind;
    Label label;
    std::string goal;
    std::size_t arity = 0;
    std::vector<std::string> vars;
    std::vector<Hiproof> items;
    std::size_t in = 0;
    std::size_t out = 0;
    std::size_t shallow = 0;
  };

  explicit Hiproof(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static Hiproof composite(Kind k, std::vector<Hiproof> items) {
    auto n = std::make_shared<Node>(k, Label(IdentityLabel{}));
    n->shallow = 1;
    for (const auto& it : items) n->shallow += it.shallow_size();
    if (!items.empty()) {
      if (k == Kind::Sequence) {
        n->in = items.front().in_count();
        n->out = items.back().out_count();
      } else {
        for (const auto& it : items) {
          n->in += it.in_count();
          n->out += it.out_count();
        }
      }
    }
    n->items = std::move(items);
    return Hiproof(std::move(n));
  }

  static bool equal(const Hiproof& a, const Hiproof& b, bool with_vars) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Kind::Atomic:
        return a.label() == b.label() && a.goal() == b.goal() &&
               a.arity() == b.arity() && (!with_vars || a.vars() == b.vars());
      case Kind::Box:
        return a.label() == b.label() && equal(a.inner(), b.inner(), with_vars);
      default:
        if (a.items().size() != b.items().size()) return false;
        for (std::size_t i = 0; i < a.items().size(); ++i)
          if (!equal(a.items()[i], b.items()[i], with_vars)) return false;
        return true;
    }
  }

  std::shared_ptr<const Node> node_;
};

inline std::size_t in_count(const Hiproof& h) { return h.in_count(); }
inline std::size_t out_count(const Hiproof& h) { return h.out_count(); }
inline std::size_t shallow_size(const Hiproof& h) { return h.shallow_size(); }

/// Pass-through wire: Atomic(identity, g, 1).
inline Hiproof identity_step(std::string goal) {
  return Hiproof::atomic(IdentityLabel{}, std::move(goal), 1);
}
/// Marker for a goal proven elsewhere: Atomic(duplicate, g, 0).
inline Hiproof duplicate_step(std::string goal) {
  return Hiproof::atomic(DuplicateLabel{}, std::move(goal), 0);
}
/// Placeholder leaf: Atomic(variable name, g, 0).
inline Hiproof variable_step(std::string name, std::string goal) {
  return Hiproof::atomic(VariableLabel{std::move(name)}, std::move(goal), 0);
}

/// Pre-order traversal; the callback sees each node with its path (child
/// indices from the root, a Box's inner proof being child 0).
inline void for_each_node(
    const Hiproof& h,
    const std::function<void(const Hiproof&, const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> path;
  std::function<void(const Hiproof&)> walk = [&](const Hiproof& n) {
    f(n, path);
    for (std::size_t i = 0; i < n.items().size(); ++i) {
      path.push_back(i);
      walk(n.items()[i]);
      path.pop_back();
    }
  };
  walk(h);
}

inline std::string format_path(const std::vector<std::size_t>& path) {
  if (path.empty()) return "/";
  std::string s;
  for (auto i : path) s += "/" + std::to_string(i);
  return s;
}

struct WellFormedReport {
  bool ok = true;
  std::string violation;
  std::vector<std::size_t> path;

  explicit operator bool() const noexcept { return ok; }

  std::string describe() const {
    return ok ? std::string("well-formed") : violation + " at " + format_path(path);
  }
};

class MalformedProof : public Error {
 public:
  explicit MalformedProof(WellFormedReport r)
      : Error("malformed", r.describe()), report_(std::move(r)) {}
  const WellFormedReport& report() const noexcept { return report_; }

 private:
  WellFormedReport report_;
};

namespace detail {

inline bool check_node(const Hiproof& h, std::vector<std::size_t>& path,
                       WellFormedReport& rep) {
  auto fail = [&](std::string why) {
    rep.ok = false;
    rep.violation = std::move(why);
    rep.path = path;
    return false;
  };
  using K = Hiproof::Kind;
  switch (h.kind()) {
    case K::Atomic: {
      const auto lk = h.label().kind();
      if (lk == Label::Kind::Identity && h.arity() != 1)
        return fail("identity atomic must have arity 1");
      if ((lk == Label::Kind::Duplicate || lk == Label::Kind::Variable) && h.arity() != 0)
        return fail(std::string(kind_name(lk)) + " atomic must have arity 0");
      return true;
    }
    case K::Box:
      if (h.label().is(Label::Kind::Identity) || h.label().is(Label::Kind::Duplicate) ||
          h.label().is(Label::Kind::Variable))
        return fail("box may not carry a special label");
      if (h.inner().in_count() != 1)
        return fail("box inner proof has IN=" + std::to_string(h.inner().in_count()) +
                    ", expected 1");
      break;
    case K::Sequence:
    case K::Tensor: {
      const char* what = h.is(K::Sequence) ? "sequence" : "tensor";
      if (h.items().size() < 2)
        return fail(std::string(what) + " has " + std::to_string(h.items().size()) +
                    " item(s), expected at least 2");
      if (h.is(K::Sequence)) {
        for (std::size_t i = 0; i + 1 < h.items().size(); ++i) {
          const auto out = h.items()[i].out_count();
          const auto in = h.items()[i + 1].in_count();
          if (out != in)
            return fail("sequence arity mismatch: OUT=" + std::to_string(out) +
                        " of item " + std::to_string(i) + " but IN=" +
                        std::to_string(in) + " of item " + std::to_string(i + 1));
        }
      }
      break;
    }
  }
  for (std::size_t i = 0; i < h.items().size(); ++i) {
    path.push_back(i);
    const bool ok = check_node(h.items()[i], path, rep);
    path.pop_back();
    if (!ok) return false;
  }
  return true;
}

inline bool is_pure_identity(const Hiproof& h) {
  if (h.is(Hiproof::Kind::Atomic)) return h.label().is(Label::Kind::Identity);
  if (h.is(Hiproof::Kind::Tensor)) {
    for (const auto& it : h.items())
      if (!is_pure_identity(it)) return false;
    return true;
  }
  return false;
}

inline Hiproof normalize_rec(const Hiproof& h, bool keep_identities) {
  using K = Hiproof::Kind;
  switch (h.kind()) {
    case K::Atomic: return h;
    case K::Box: return Hiproof::box(h.label(), normalize_rec(h.inner(), keep_identities));
    case K::Tensor: {
      std::vector<Hiproof> items;
      for (const auto& it : h.items()) items.push_back(normalize_rec(it, keep_identities));
      if (items.size() == 1) return items.front();
      return Hiproof::tensor(std::move(items));
    }
    case K::Sequence: {
      std::vector<Hiproof> items;
      for (const auto& it : h.items()) {
        Hiproof n = normalize_rec(it, keep_identities);
        if (n.is(K::Sequence))
          items.insert(items.end(), n.items().begin(), n.items().end());
        else
          items.push_back(std::move(n));
      }
      if (!keep_identities && items.size() > 1) {
        std::vector<Hiproof> kept;
        for (auto& it : items)
          if (!is_pure_identity(it)) kept.push_back(it);
        if (kept.empty()) kept.push_back(items.front());
        items = std::move(kept);
      }
      if (items.size() == 1) return items.front();
      return Hiproof::sequence(std::move(items));
    }
  }
  return h;
}

// Goal of the leftmost atomic reachable through first items.
inline const std::string& entry_goal_of(const Hiproof& h) {
  const Hiproof* p = &h;
  while (!p->is(Hiproof::Kind::Atomic)) {
    if (p->items().empty()) {
      static const std::string none;
      return none;
    }
    p = &p->items().front();
  }
  return p->goal();
}

inline void collect_vars(const Hiproof& h, std::vector<std::string>& out) {
  if (h.is(Hiproof::Kind::Atomic)) {
    auto add = [&](const std::string& v) {
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    };
    if (h.label().is(Label::Kind::Variable)) add(h.label().text());
    for (const auto& v : h.vars()) add(v);
    return;
  }
  for (const auto& it : h.items()) collect_vars(it, out);
}

inline Hiproof truncate_rec(const Hiproof& h, std::size_t tau) {
  using K = Hiproof::Kind;
  switch (h.kind()) {
    case K::Atomic: return h;
    case K::Box: {
      Hiproof inner = truncate_rec(h.inner(), tau);
      if (inner.shallow_size() > tau) {
        std::vector<std::string> vars;
        collect_vars(inner, vars);
        return Hiproof::atomic(h.label(), entry_goal_of(inner), inner.out_count(),
                               std::move(vars));
      }
      return Hiproof::box(h.label(), std::move(inner));
    }
    default: {
      std::vector<Hiproof> items;
      items.reserve(h.items().size());
      for (const auto& it : h.items()) items.push_back(truncate_rec(it, tau));
      return h.is(K::Sequence) ? Hiproof::sequence(std::move(items))
                               : Hiproof::tensor(std::move(items));
    }
  }
}

}  // namespace detail

/// Checks every well-formedness constraint, reporting the first violation
/// in pre-order together with its path.
inline WellFormedReport well_formed(const Hiproof& h) {
  WellFormedReport rep;
  std::vector<std::size_t> path;
  detail::check_node(h, path, rep);
  return rep;
}

/// Collapses singleton sequences and tensors and splices nested sequences.
/// With `keep_identities` false, sequence items that only pass goals
/// through (identity atomics, tensors of them) are dropped as well.
/// Throws MalformedProof when the result is still not well formed.
inline Hiproof normalize(const Hiproof& h, bool keep_identities = true) {
  for_each_node(h, [](const Hiproof& n, const std::vector<std::size_t>& path) {
    if (!n.is(Hiproof::Kind::Atomic) && !n.is(Hiproof::Kind::Box) && n.items().empty()) {
      WellFormedReport r;
      r.ok = false;
      r.violation = "empty sequence or tensor";
      r.path = path;
      throw MalformedProof(r);
    }
  });
  Hiproof out = detail::normalize_rec(h, keep_identities);
  if (auto rep = well_formed(out); !rep) throw MalformedProof(rep);
  return out;
}

/// The goal a box (or any proof) starts from: the goal of the leftmost
/// atomic reachable through first items.
inline std::string entry_goal(const Hiproof& h) { return detail::entry_goal_of(h); }

inline constexpr std::size_t kDefaultTau = 1000;

/// Replaces, bottom-up, every box whose inner proof has shallow size above
/// `tau` by an atomic with the box's label, entry goal and output count.
/// The atomic remembers the variable names the box contained.
inline Hiproof truncate(const Hiproof& h, std::size_t tau) {
  return detail::truncate_rec(h, tau);
}

inline std::size_t count_boxes(const Hiproof& h) {
  std::size_t n = 0;
  for_each_node(h, [&](const Hiproof& x, const auto&) { n += x.is(Hiproof::Kind::Box); });
  return n;
}

inline std::size_t count_atomics(const Hiproof& h, Label::Kind k) {
  std::size_t n = 0;
  for_each_node(h, [&](const Hiproof& x, const auto&) {
    n += x.is(Hiproof::Kind::Atomic) && x.label().is(k);
  });
  return n;
}

/// Compact one-line rendering, mainly for diagnostics and tests:
/// `Seq[A(DISCH_TAC,1), Ten[...]]`, `Box(label, ...)`.
inline std::string describe(const Hiproof& h, bool with_goals = false) {
  using K = Hiproof::Kind;
  switch (h.kind()) {
    case K::Atomic: {
      std::string s = "A(";
      const auto lk = h.label().kind();
      if (lk == Label::Kind::Identity) s += "id";
      else if (lk == Label::Kind::Duplicate) s += "dup";
      else if (lk == Label::Kind::Variable) s += "var " + h.label().text();
      else s += h.label().text();
      if (with_goals) s += ", {" + h.goal() + "}";
      return s + "," + std::to_string(h.arity()) + ")";
    }
    case K::Box: return "Box(" + h.label().text() + ", " + describe(h.inner(), with_goals) + ")";
    default: {
      std::string s = h.is(K::Sequence) ? "Seq[" : "Ten[";
      for (std::size_t i = 0; i < h.items().size(); ++i) {
        if (i) s += ", ";
        s += describe(h.items()[i], with_goals);
      }
      return s + "]";
    }
  }
}

}  // namespace hiprove
