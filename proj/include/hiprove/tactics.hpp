#pragma once

// Goal-directed tactics over the object logic, before any recording.
//
// A tactic maps a goal to its subgoals plus a justification that rebuilds a
// theorem for the goal from theorems for the subgoals (one per subgoal, in
// order). The justified theorem's assumptions are a subset of the goal's.

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hiprove/errors.hpp"
#include "hiprove/kernel.hpp"
#include "hiprove/term.hpp"
#include "hiprove/term_syntax.hpp"

namespace hiprove {

/// Placeholder for metavariable instantiations; the logic has none.
struct Instantiation {
  friend bool operator==(const Instantiation&, const Instantiation&) = default;
};

using Justification = std::function<Thm(const std::vector<Thm>&)>;

struct GoalState {
  Instantiation meta;
  std::vector<Goal> subgoals;
  Justification justification;
};

using Tactic = std::function<GoalState(const Goal&)>;

namespace detail {

[[noreturn]] inline void tactic_fail(const std::string& tactic, const std::string& why,
                                     const Goal& g) {
  throw TacticFailure(tactic + ": " + why + " in goal " + print_goal(g));
}

inline void expect_theorems(const char* tactic, const std::vector<Thm>& ths, std::size_t n) {
  if (ths.size() != n)
    throw TacticFailure(std::string(tactic) + ": justification expects " + std::to_string(n) +
                        " theorem(s), got " + std::to_string(ths.size()));
}

// `A ⊢ c` to `A ∪ {t} ⊢ c`, through DISCH and MP.
inline Thm weaken(const Thm& th, const Term& t) {
  if (contains(th.assumptions(), t)) return th;
  return mp(disch(t, th), assume(t));
}

// Assumptions with `t` replaced, in place, by `with` (duplicates dropped).
inline Assumptions replace_assumption(const Assumptions& as, const Term& t,
                                      const std::vector<Term>& with) {
  Assumptions out;
  for (const auto& a : as) {
    if (a == t) {
      for (const auto& w : with) out = insert_term(std::move(out), w);
    } else {
      out = insert_term(std::move(out), a);
    }
  }
  return out;
}

inline std::vector<Term> conjuncts_of(const Term& t) {
  std::vector<Term> out;
  const Term* p = &t;
  while (p->is(Term::Kind::Conj)) {
    out.push_back(p->left());
    p = &p->right();
  }
  out.push_back(*p);
  return out;
}

}  // namespace detail

/// `A ⊢? l ∧ r` to `[A ⊢? l, A ⊢? r]`.
inline GoalState conj_tac(const Goal& g) {
  if (!g.conclusion.is(Term::Kind::Conj))
    detail::tactic_fail("CONJ_TAC", "conclusion is not a conjunction", g);
  return {{},
          {Goal(g.assumptions, g.conclusion.left()), Goal(g.assumptions, g.conclusion.right())},
          [](const std::vector<Thm>& ths) {
            detail::expect_theorems("CONJ_TAC", ths, 2);
            return conj(ths[0], ths[1]);
          }};
}

/// Splits a right-nested conjunction `c1 ∧ (c2 ∧ ... cn)` into n subgoals.
inline GoalState conjuncts_tac(const Goal& g) {
  if (!g.conclusion.is(Term::Kind::Conj))
    detail::tactic_fail("CONJUNCTS_TAC", "conclusion is not a conjunction", g);
  const auto parts = detail::conjuncts_of(g.conclusion);
  std::vector<Goal> subs;
  for (const auto& p : parts) subs.emplace_back(g.assumptions, p);
  const std::size_t n = parts.size();
  return {{}, std::move(subs), [n](const std::vector<Thm>& ths) {
            detail::expect_theorems("CONJUNCTS_TAC", ths, n);
            Thm acc = ths.back();
            for (std::size_t i = n - 1; i-- > 0;) acc = conj(ths[i], acc);
            return acc;
          }};
}

/// `A ⊢? x ⇒ y` to `[A ∪ {x} ⊢? y]`.
inline GoalState disch_tac(const Goal& g) {
  if (!g.conclusion.is(Term::Kind::Imp))
    detail::tactic_fail("DISCH_TAC", "conclusion is not an implication", g);
  const Term x = g.conclusion.left();
  return {{},
          {Goal(insert_term(g.assumptions, x), g.conclusion.right())},
          [x](const std::vector<Thm>& ths) {
            detail::expect_theorems("DISCH_TAC", ths, 1);
            return disch(x, ths[0]);
          }};
}

/// Closes `A ⊢? T`.
inline GoalState truth_tac(const Goal& g) {
  if (!g.conclusion.is(Term::Kind::Truth))
    detail::tactic_fail("TRUTH_TAC", "conclusion is not T", g);
  return {{}, {}, [](const std::vector<Thm>& ths) {
            detail::expect_theorems("TRUTH_TAC", ths, 0);
            return truth();
          }};
}

/// Closes a goal whose conclusion is among its assumptions.
inline GoalState assumption_tac(const Goal& g) {
  if (!contains(g.assumptions, g.conclusion))
    detail::tactic_fail("ASSUMPTION_TAC", "conclusion is not an assumption", g);
  const Term c = g.conclusion;
  return {{}, {}, [c](const std::vector<Thm>& ths) {
            detail::expect_theorems("ASSUMPTION_TAC", ths, 0);
            return assume(c);
          }};
}

/// `A ⊢? l ∨ r` to `[A ⊢? l]`.
inline GoalState disj1_tac(const Goal& g) {
  if (!g.conclusion.is(Term::Kind::Disj))
    detail::tactic_fail("DISJ1_TAC", "conclusion is not a disjunction", g);
  const Term r = g.conclusion.right();
  return {{}, {Goal(g.assumptions, g.conclusion.left())}, [r](const std::vector<Thm>& ths) {
            detail::expect_theorems("DISJ1_TAC", ths, 1);
            return disj1(ths[0], r);
          }};
}

/// `A ⊢? l ∨ r` to `[A ⊢? r]`.
inline GoalState disj2_tac(const Goal& g) {
  if (!g.conclusion.is(Term::Kind::Disj))
    detail::tactic_fail("DISJ2_TAC", "conclusion is not a disjunction", g);
  const Term l = g.conclusion.left();
  return {{}, {Goal(g.assumptions, g.conclusion.right())}, [l](const std::vector<Thm>& ths) {
            detail::expect_theorems("DISJ2_TAC", ths, 1);
            return disj2(l, ths[0]);
          }};
}

/// With assumption `t = l ∧ r`: one subgoal where t is replaced, in place,
/// by l then r.
inline Tactic conj_assum_tac(const Term& t) {
  return [t](const Goal& g) -> GoalState {
    if (!t.is(Term::Kind::Conj))
      detail::tactic_fail("CONJ_ASSUM_TAC", "argument " + print_term(t) + " is not a conjunction", g);
    if (!contains(g.assumptions, t))
      detail::tactic_fail("CONJ_ASSUM_TAC", print_term(t) + " is not an assumption", g);
    const Term l = t.left();
    const Term r = t.right();
    Goal sub(detail::replace_assumption(g.assumptions, t, {l, r}), g.conclusion);
    return {{}, {std::move(sub)}, [t, l, r](const std::vector<Thm>& ths) {
              detail::expect_theorems("CONJ_ASSUM_TAC", ths, 1);
              const Thm& th = ths[0];
              // B ⊢ c  to  B - {l, r} ⊢ l ⇒ r ⇒ c, then discharge both
              // antecedents from the conjunction.
              const Thm both = disch(l, disch(r, th));
              const Thm conj_th = assume(t);
              return mp(mp(both, conjunct1(conj_th)), conjunct2(conj_th));
            }};
  };
}

/// With assumption `t = l ∨ r`: two subgoals where t is replaced by l, and
/// by r.
inline Tactic disj_cases_tac(const Term& t) {
  return [t](const Goal& g) -> GoalState {
    if (!t.is(Term::Kind::Disj))
      detail::tactic_fail("DISJ_CASES_TAC", "argument " + print_term(t) + " is not a disjunction", g);
    if (!contains(g.assumptions, t))
      detail::tactic_fail("DISJ_CASES_TAC", print_term(t) + " is not an assumption", g);
    const Term l = t.left();
    const Term r = t.right();
    std::vector<Goal> subs{Goal(detail::replace_assumption(g.assumptions, t, {l}), g.conclusion),
                           Goal(detail::replace_assumption(g.assumptions, t, {r}), g.conclusion)};
    return {{}, std::move(subs), [t, l, r](const std::vector<Thm>& ths) {
              detail::expect_theorems("DISJ_CASES_TAC", ths, 2);
              return disj_cases(assume(t), detail::weaken(ths[0], l), detail::weaken(ths[1], r));
            }};
  };
}

}  // namespace hiprove
