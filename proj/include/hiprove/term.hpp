#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace hiprove {

// Formulas of the object logic: atoms, truth, conjunction, implication and
// disjunction. Terms are immutable and share structure; copying is cheap.
class Term {
 public:
  enum class Kind { Atom, Truth, Conj, Imp, Disj };

  static Term atom(std::string name);
  static Term truth();
  static Term conj(Term l, Term r) { return binary(Kind::Conj, std::move(l), std::move(r)); }
  static Term imp(Term a, Term c) { return binary(Kind::Imp, std::move(a), std::move(c)); }
  static Term disj(Term l, Term r) { return binary(Kind::Disj, std::move(l), std::move(r)); }

  Kind kind() const noexcept;
  bool is(Kind k) const noexcept { return kind() == k; }

  /// Atom name; empty for every other kind.
  const std::string& name() const noexcept;

  /// Operands of a binary connective. Calling these on an atom or on truth
  /// is a logic error.
  const Term& left() const;
  const Term& right() const;

  friend bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Kind::Atom: return a.name() == b.name();
      case Kind::Truth: return true;
      default: return a.left() == b.left() && a.right() == b.right();
    }
  }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static Term binary(Kind k, Term l, Term r);

  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  // Leaves carry null operands.
  Node(Kind k, std::string n)
      : kind(k), name(std::move(n)), children(Term(nullptr), Term(nullptr)) {}
  Node(Kind k, Term l, Term r) : kind(k), children(std::move(l), std::move(r)) {}

  Kind kind;
  std::string name;
  std::pair<Term, Term> children;
};

inline Term Term::atom(std::string name) {
  return Term(std::make_shared<const Node>(Kind::Atom, std::move(name)));
}
inline Term Term::truth() {
  static const Term t(std::make_shared<const Node>(Kind::Truth, std::string()));
  return t;
}
inline Term Term::binary(Kind k, Term l, Term r) {
  return Term(std::make_shared<const Node>(k, std::move(l), std::move(r)));
}
inline Term::Kind Term::kind() const noexcept { return node_->kind; }
inline const std::string& Term::name() const noexcept { return node_->name; }
inline const Term& Term::left() const { return node_->children.first; }
inline const Term& Term::right() const { return node_->children.second; }

/// Ordered, duplicate-free sequence of terms.
using Assumptions = std::vector<Term>;

inline bool contains(const Assumptions& as, const Term& t) {
  return std::find(as.begin(), as.end(), t) != as.end();
}

/// Union preserving the first-occurrence order of `a` followed by `b`.
inline Assumptions union_of(const Assumptions& a, const Assumptions& b) {
  Assumptions out;
  out.reserve(a.size() + b.size());
  for (const auto* src : {&a, &b})
    for (const auto& t : *src)
      if (!contains(out, t)) out.push_back(t);
  return out;
}

inline Assumptions remove_term(const Assumptions& a, const Term& t) {
  Assumptions out;
  out.reserve(a.size());
  for (const auto& x : a)
    if (!(x == t)) out.push_back(x);
  return out;
}

inline Assumptions insert_term(Assumptions a, const Term& t) {
  if (!contains(a, t)) a.push_back(t);
  return a;
}

/// Everything in `sub` also occurs in `super`.
inline bool subset_of(const Assumptions& sub, const Assumptions& super) {
  return std::all_of(sub.begin(), sub.end(),
                     [&](const Term& t) { return contains(super, t); });
}

/// A sequent still to be proved: `assumptions ⊢? conclusion`.
struct Goal {
  Assumptions assumptions;
  Term conclusion = Term::truth();

  Goal() = default;
  Goal(Assumptions as, Term c) : conclusion(std::move(c)) {
    for (auto& t : as) assumptions = insert_term(std::move(assumptions), t);
  }

  friend bool operator==(const Goal&, const Goal&) = default;
};

}  // namespace hiprove
