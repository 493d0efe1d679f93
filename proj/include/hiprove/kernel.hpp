#pragma once

// Logical kernel whose theorems carry their hierarchical proof.
//
// Only the primitives below and `hilabel` create theorems. A primitive with
// k premises records
//   k = 0   Atomic(rule, goal, 0)
//   k = 1   Sequence[Atomic(rule, goal, 1), premise proof]
//   k >= 2  Sequence[Atomic(rule, goal, k), Tensor[premise proofs]]
// so every theorem's proof has IN = 1 and OUT = 0.
//
// Thread safety: theorems are immutable. The fresh-name counter used by
// hilabel is atomic, so the whole kernel may be used concurrently.

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hiprove/errors.hpp"
#include "hiprove/hiproof.hpp"
#include "hiprove/term.hpp"
#include "hiprove/term_syntax.hpp"

namespace hiprove {

class Thm;

namespace detail {
struct KernelAccess;
}

/// A proven sequent `assumptions ⊢ conclusion` together with its proof.
class Thm {
 public:
  const Assumptions& assumptions() const noexcept { return assumptions_; }
  const Term& conclusion() const noexcept { return conclusion_; }
  const Hiproof& proof() const noexcept { return proof_; }

  Goal goal() const { return Goal(assumptions_, conclusion_); }

 private:
  friend struct detail::KernelAccess;

  Thm(Hiproof p, Assumptions as, Term c)
      : proof_(std::move(p)), assumptions_(std::move(as)), conclusion_(std::move(c)) {}

  Hiproof proof_;
  Assumptions assumptions_;
  Term conclusion_;
};

/// `rule = thm list -> thm`.
using Rule = std::function<Thm(const std::vector<Thm>&)>;

/// Compares assumptions and conclusion only; the proofs are ignored.
inline bool equals_thm(const Thm& a, const Thm& b) {
  return a.assumptions() == b.assumptions() && a.conclusion() == b.conclusion();
}

inline Hiproof hiproof_of(const Thm& t) { return t.proof(); }

inline std::string print_thm(const Thm& t) { return print_goal(t.goal()); }

namespace detail {

struct KernelAccess {
  static Thm make(Hiproof p, Assumptions as, Term c) {
    return Thm(std::move(p), std::move(as), std::move(c));
  }
  // The theorem with its proof replaced (`alpha / h`).
  static Thm with_proof(const Thm& t, Hiproof p) {
    return Thm(std::move(p), t.assumptions(), t.conclusion());
  }
};

inline Thm derive(const char* rule, Assumptions as, Term concl,
                  const std::vector<const Thm*>& premises) {
  const std::string goal = print_goal(Goal(as, concl));
  Hiproof step = Hiproof::atomic(RuleLabel{rule}, goal, premises.size());
  Hiproof proof = step;
  if (premises.size() == 1) {
    proof = Hiproof::sequence({step, premises.front()->proof()});
  } else if (premises.size() >= 2) {
    std::vector<Hiproof> items;
    for (const Thm* p : premises) items.push_back(p->proof());
    proof = Hiproof::sequence({step, Hiproof::tensor(std::move(items))});
  }
  return KernelAccess::make(std::move(proof), std::move(as), std::move(concl));
}

[[noreturn]] inline void rule_fail(const char* rule, const std::string& why, const Term& t) {
  throw RuleError(std::string(rule) + ": " + why + ": " + print_term(t));
}

inline std::atomic<std::uint64_t>& fresh_counter() {
  static std::atomic<std::uint64_t> counter{0};
  return counter;
}

}  // namespace detail

/// `{t} ⊢ t`
inline Thm assume(const Term& t) { return detail::derive("ASSUME", {t}, t, {}); }

/// `⊢ T`
inline Thm truth() { return detail::derive("TRUTH", {}, Term::truth(), {}); }

/// From `A ⊢ l` and `B ⊢ r` derive `A ∪ B ⊢ l ∧ r`.
inline Thm conj(const Thm& a, const Thm& b) {
  return detail::derive("CONJ", union_of(a.assumptions(), b.assumptions()),
                        Term::conj(a.conclusion(), b.conclusion()), {&a, &b});
}

inline Thm conjunct1(const Thm& a) {
  if (!a.conclusion().is(Term::Kind::Conj))
    detail::rule_fail("CONJUNCT1", "conclusion is not a conjunction", a.conclusion());
  return detail::derive("CONJUNCT1", a.assumptions(), a.conclusion().left(), {&a});
}

inline Thm conjunct2(const Thm& a) {
  if (!a.conclusion().is(Term::Kind::Conj))
    detail::rule_fail("CONJUNCT2", "conclusion is not a conjunction", a.conclusion());
  return detail::derive("CONJUNCT2", a.assumptions(), a.conclusion().right(), {&a});
}

/// From `A ⊢ c` derive `A - {t} ⊢ t ⇒ c`.
inline Thm disch(const Term& t, const Thm& a) {
  return detail::derive("DISCH", remove_term(a.assumptions(), t),
                        Term::imp(t, a.conclusion()), {&a});
}

/// From `A ⊢ x ⇒ y` and `B ⊢ x` derive `A ∪ B ⊢ y`.
inline Thm mp(const Thm& imp, const Thm& ant) {
  const Term& c = imp.conclusion();
  if (!c.is(Term::Kind::Imp))
    detail::rule_fail("MP", "conclusion is not an implication", c);
  if (!(c.left() == ant.conclusion()))
    throw RuleError("MP: antecedent " + print_term(c.left()) +
                    " does not match " + print_term(ant.conclusion()));
  return detail::derive("MP", union_of(imp.assumptions(), ant.assumptions()), c.right(),
                        {&imp, &ant});
}

/// From `A ⊢ c` derive `A ⊢ c ∨ t`.
inline Thm disj1(const Thm& a, const Term& t) {
  return detail::derive("DISJ1", a.assumptions(), Term::disj(a.conclusion(), t), {&a});
}

/// From `A ⊢ c` derive `A ⊢ t ∨ c`.
inline Thm disj2(const Term& t, const Thm& a) {
  return detail::derive("DISJ2", a.assumptions(), Term::disj(t, a.conclusion()), {&a});
}

/// From `A ⊢ x ∨ y`, `B ⊢ c` with x ∈ B and `C ⊢ c` with y ∈ C derive
/// `A ∪ (B - {x}) ∪ (C - {y}) ⊢ c`.
inline Thm disj_cases(const Thm& d, const Thm& l, const Thm& r) {
  const Term& c = d.conclusion();
  if (!c.is(Term::Kind::Disj))
    detail::rule_fail("DISJ_CASES", "conclusion is not a disjunction", c);
  if (!contains(l.assumptions(), c.left()))
    detail::rule_fail("DISJ_CASES", "left case does not assume", c.left());
  if (!contains(r.assumptions(), c.right()))
    detail::rule_fail("DISJ_CASES", "right case does not assume", c.right());
  if (!(l.conclusion() == r.conclusion()))
    throw RuleError("DISJ_CASES: case conclusions differ: " + print_term(l.conclusion()) +
                    " vs " + print_term(r.conclusion()));
  Assumptions as = union_of(d.assumptions(), remove_term(l.assumptions(), c.left()));
  as = union_of(as, remove_term(r.assumptions(), c.right()));
  return detail::derive("DISJ_CASES", std::move(as), l.conclusion(), {&d, &l, &r});
}

/// Allocates a fresh hiproof variable name: "v0", "v1", ...
inline std::string fresh_variable_name() {
  return "v" + std::to_string(detail::fresh_counter().fetch_add(1));
}

/// Turns the variable leaves named in `names` into wires: the first
/// occurrence of each name, left to right, becomes Identity(g) and later
/// ones become Duplicate(g). Returns the names in the order of the open
/// outputs of the rewritten proof, which is then normalized.
inline std::pair<std::vector<std::string>, Hiproof> turnvars(
    const std::set<std::string>& names, const Hiproof& h) {
  std::vector<std::string> order;
  std::set<std::string> seen;
  std::function<Hiproof(const Hiproof&)> rewrite = [&](const Hiproof& n) -> Hiproof {
    using K = Hiproof::Kind;
    switch (n.kind()) {
      case K::Atomic: {
        if (!n.label().is(Label::Kind::Variable)) return n;
        const std::string v = n.label().text();
        if (!names.contains(v)) return n;
        if (seen.insert(v).second) {
          order.push_back(v);
          return identity_step(n.goal());
        }
        return duplicate_step(n.goal());
      }
      case K::Box: return Hiproof::box(n.label(), rewrite(n.inner()));
      default: {
        std::vector<Hiproof> items;
        items.reserve(n.items().size());
        for (const auto& it : n.items()) items.push_back(rewrite(it));
        return n.is(K::Sequence) ? Hiproof::sequence(std::move(items))
                                 : Hiproof::tensor(std::move(items));
      }
    }
  };
  Hiproof out = rewrite(h);
  if (seen.empty()) return {{}, h};
  return {std::move(order), normalize(out)};
}

/// Applies `rule` to `premises` and draws a box labelled `l` around the
/// part of the proof the rule contributed. Premise proofs stay outside the
/// box, in the order the box's outputs need them; premises the rule did not
/// use are dropped and repeated uses show up as duplicate markers.
///
/// The rule must obtain the premises only through its argument. Theorems
/// captured by other means are treated as part of the rule's own work.
inline Thm hilabel(const Label& l, const Rule& rule, const std::vector<Thm>& premises) {
  std::set<std::string> fresh;
  std::map<std::string, const Thm*> by_name;
  std::vector<Thm> placeholders;
  placeholders.reserve(premises.size());
  for (const Thm& p : premises) {
    std::string n = fresh_variable_name();
    fresh.insert(n);
    by_name.emplace(n, &p);
    placeholders.push_back(
        detail::KernelAccess::with_proof(p, variable_step(n, print_thm(p))));
  }
  const Thm beta = rule(placeholders);
  auto [names, inner] = turnvars(fresh, beta.proof());
  Hiproof boxed = Hiproof::box(l, std::move(inner));
  Hiproof proof = boxed;
  if (names.size() == 1) {
    proof = Hiproof::sequence({boxed, by_name.at(names.front())->proof()});
  } else if (names.size() > 1) {
    std::vector<Hiproof> outside;
    for (const auto& n : names) outside.push_back(by_name.at(n)->proof());
    proof = Hiproof::sequence({boxed, Hiproof::tensor(std::move(outside))});
  }
  return detail::KernelAccess::with_proof(beta, std::move(proof));
}

}  // namespace hiprove
