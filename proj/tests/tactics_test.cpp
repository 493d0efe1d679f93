#include <gtest/gtest.h>

#include "hiprove/kernel.hpp"
#include "hiprove/tactics.hpp"
#include "hiprove/term_syntax.hpp"

using namespace hiprove;

namespace {

Goal goal(const char* s) { return parse_goal(s); }

// Closes every subgoal with ASSUME or TRUTH, weakening where needed, and
// checks the justification yields a theorem for the goal.
Thm close_with_assumptions(const GoalState& st) {
  std::vector<Thm> ths;
  for (const auto& g : st.subgoals) {
    if (g.conclusion.is(Term::Kind::Truth)) {
      ths.push_back(truth());
    } else {
      EXPECT_TRUE(contains(g.assumptions, g.conclusion)) << print_goal(g);
      ths.push_back(assume(g.conclusion));
    }
  }
  return st.justification(ths);
}

void expect_proves(const Thm& th, const Goal& g) {
  EXPECT_EQ(th.conclusion(), g.conclusion);
  EXPECT_TRUE(subset_of(th.assumptions(), g.assumptions)) << print_thm(th);
}

std::vector<std::string> printed(const GoalState& st) {
  std::vector<std::string> out;
  for (const auto& g : st.subgoals) out.push_back(print_goal(g));
  return out;
}

}  // namespace

TEST(Tactics, ConjTac) {
  const Goal g = goal("p, q |- p /\\ q");
  const GoalState st = conj_tac(g);
  EXPECT_EQ(printed(st), (std::vector<std::string>{"p, q |- p", "p, q |- q"}));
  expect_proves(close_with_assumptions(st), g);
  EXPECT_THROW(conj_tac(goal("|- p")), TacticFailure);
}

TEST(Tactics, ConjunctsTac) {
  const Goal g = goal("p, q, r |- p /\\ q /\\ r");
  const GoalState st = conjuncts_tac(g);
  EXPECT_EQ(printed(st), (std::vector<std::string>{"p, q, r |- p", "p, q, r |- q", "p, q, r |- r"}));
  expect_proves(close_with_assumptions(st), g);
  // A left-nested conjunct stays whole.
  EXPECT_EQ(conjuncts_tac(goal("|- (p /\\ q) /\\ r")).subgoals.size(), 2u);
}

TEST(Tactics, DischTac) {
  const Goal g = goal("|- p ==> p");
  const GoalState st = disch_tac(g);
  EXPECT_EQ(printed(st), (std::vector<std::string>{"p |- p"}));
  expect_proves(close_with_assumptions(st), g);
  EXPECT_THROW(disch_tac(goal("|- p /\\ q")), TacticFailure);
}

TEST(Tactics, TruthAndAssumption) {
  EXPECT_TRUE(truth_tac(goal("|- T")).subgoals.empty());
  EXPECT_THROW(truth_tac(goal("|- p")), TacticFailure);
  const Goal g = goal("q, p |- p");
  const GoalState st = assumption_tac(g);
  EXPECT_TRUE(st.subgoals.empty());
  expect_proves(st.justification({}), g);
  EXPECT_THROW(assumption_tac(goal("q |- p")), TacticFailure);
}

TEST(Tactics, DisjIntroductions) {
  const Goal g = goal("p |- p \\/ q");
  EXPECT_EQ(printed(disj1_tac(g)), (std::vector<std::string>{"p |- p"}));
  expect_proves(close_with_assumptions(disj1_tac(g)), g);
  const Goal h = goal("q |- p \\/ q");
  EXPECT_EQ(printed(disj2_tac(h)), (std::vector<std::string>{"q |- q"}));
  expect_proves(close_with_assumptions(disj2_tac(h)), h);
  EXPECT_THROW(disj1_tac(goal("|- p")), TacticFailure);
}

TEST(Tactics, ConjAssumTacSplitsInPlace) {
  const Goal g = goal("a, p /\\ q, b |- q");
  const GoalState st = conj_assum_tac(parse_term("p /\\ q"))(g);
  EXPECT_EQ(printed(st), (std::vector<std::string>{"a, p, q, b |- q"}));
  expect_proves(close_with_assumptions(st), g);
  EXPECT_THROW(conj_assum_tac(parse_term("p /\\ q"))(goal("|- q")), TacticFailure);
  EXPECT_THROW(conj_assum_tac(parse_term("p"))(goal("p |- p")), TacticFailure);
}

TEST(Tactics, DisjCasesTac) {
  const Goal g = goal("p \\/ q |- q \\/ p");
  const GoalState st = disj_cases_tac(parse_term("p \\/ q"))(g);
  EXPECT_EQ(printed(st), (std::vector<std::string>{"p |- q \\/ p", "q |- q \\/ p"}));
  const Thm l = disj2(parse_term("q"), assume(parse_term("p")));
  const Thm r = disj1(assume(parse_term("q")), parse_term("p"));
  expect_proves(st.justification({l, r}), g);
  // A case that does not use its disjunct is weakened.
  const Goal h = goal("p \\/ q |- T");
  const GoalState sh = disj_cases_tac(parse_term("p \\/ q"))(h);
  expect_proves(sh.justification({truth(), truth()}), h);
}

TEST(Tactics, JustificationsCheckTheirArity) {
  const GoalState st = conj_tac(goal("|- T /\\ T"));
  EXPECT_THROW(st.justification({truth()}), TacticFailure);
}
