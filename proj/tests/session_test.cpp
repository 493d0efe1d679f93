#include <random>
#include <string>

#include <gtest/gtest.h>

#include "hiprove/session.hpp"
#include "hiprove/term_syntax.hpp"

using namespace hiprove;

namespace {

XTactic tac(const char* text) { return interpret(parse_tactic_expr(text), default_registry()); }

}  // namespace

TEST(Session, StepsActOnTheFirstPendingGoal) {
  Session s;
  s.set_goal(parse_term("(p ==> p) /\\ T"));
  EXPECT_EQ(s.print_state(), "1 subgoal\n  1. |- (p ==> p) /\\ T\n");
  s.apply(tac("CONJ_TAC"));
  EXPECT_EQ(s.print_state(), "2 subgoals\n  1. |- p ==> p\n  2. |- T\n");
  s.apply(tac("DISCH_TAC"));
  s.apply(tac("ASSUMPTION_TAC"));
  EXPECT_FALSE(s.finished());
  s.apply(tac("TRUTH_TAC"));
  ASSERT_TRUE(s.finished());
  EXPECT_EQ(print_thm(s.theorem()), "|- (p ==> p) /\\ T");
  EXPECT_EQ(s.print_state(), "No subgoals\n|- (p ==> p) /\\ T\n");
  EXPECT_TRUE(well_formed(s.theorem().proof()));
  EXPECT_THROW(s.apply(tac("TRUTH_TAC")), UsageError);
}

TEST(Session, FailedStepChangesNothing) {
  Session s;
  s.set_goal(parse_term("p /\\ q"));
  const GTree before = s.tree();
  EXPECT_THROW(s.apply(tac("CONJ_TAC THEN TRUTH_TAC")), TacticFailure);
  EXPECT_EQ(s.tree(), before);
  EXPECT_EQ(s.depth(), 1u);
  EXPECT_EQ(s.pending().size(), 1u);
}

TEST(Session, BackRestoresTreeAndNeverReusesIds) {
  Session s;
  s.set_goal(parse_term("T /\\ T"));
  const GTree initial = s.tree();
  s.apply(tac("CONJ_TAC"));
  const GTree after_split = s.tree();
  s.apply(tac("TRUTH_TAC"));
  s.back();
  EXPECT_EQ(s.tree(), after_split);
  s.back();
  EXPECT_EQ(s.tree(), initial);
  EXPECT_THROW(s.back(), UsageError);
  s.apply(tac("CONJ_TAC"));
  std::vector<std::uint64_t> ids;
  for (const auto& x : s.pending()) ids.push_back(x.id.value);
  EXPECT_EQ(ids, (std::vector<std::uint64_t>{4, 5}));
}

TEST(Session, RandomApplyBackSequencesKeepTreeConsistent) {
  std::mt19937 rng(424242);
  const char* tactics[] = {"CONJ_TAC", "DISCH_TAC", "TRUTH_TAC", "ASSUMPTION_TAC",
                           "DISJ1_TAC", "DISJ2_TAC", "CONJUNCTS_TAC"};
  for (int trial = 0; trial < 50; ++trial) {
    Session s;
    s.set_goal(parse_term("(a ==> a) /\\ (T \\/ b) /\\ (c ==> T /\\ c)"));
    std::vector<GTree> history{s.tree()};
    for (int step = 0; step < 30; ++step) {
      if (std::uniform_int_distribution<int>(0, 3)(rng) == 0 && history.size() > 1) {
        s.back();
        history.pop_back();
        ASSERT_EQ(s.tree(), history.back());
        continue;
      }
      if (s.finished()) break;
      const GTree before = s.tree();
      try {
        s.apply(tac(tactics[std::uniform_int_distribution<int>(0, 6)(rng)]));
        history.push_back(s.tree());
      } catch (const TacticFailure&) {
        ASSERT_EQ(s.tree(), before);
      }
      ASSERT_FALSE(check_gtree(s.tree()).has_value());
      ASSERT_EQ(active_ids(s.tree()).size(), s.pending().size());
    }
  }
}

TEST(Session, UsageErrors) {
  Session s;
  EXPECT_FALSE(s.has_goal());
  EXPECT_EQ(s.print_state(), "No goal set\n");
  EXPECT_THROW(s.apply(tac("TRUTH_TAC")), UsageError);
  EXPECT_THROW(s.pending(), UsageError);
  s.set_goal(parse_term("T"));
  EXPECT_THROW(s.theorem(), UsageError);
}

TEST(Prove, ReturnsTheoremAndTree) {
  auto [th, tree] = prove(parse_term("p /\\ q ==> q /\\ p"),
                          parse_tactic_expr("DISCH_TAC THEN CONJ_ASSUM_TAC \"p /\\ q\" THEN "
                                            "CONJ_TAC THEN ASSUMPTION_TAC"));
  EXPECT_EQ(print_thm(th), "|- p /\\ q ==> q /\\ p");
  EXPECT_TRUE(active_ids(tree).empty());
  EXPECT_EQ(tree.size(), 5u);
}

TEST(Prove, Errors) {
  try {
    prove(parse_term("p /\\ q"), parse_tactic_expr("CONJ_TAC"));
    FAIL();
  } catch (const IncompleteProof& e) {
    EXPECT_EQ(e.pending(), 2u);
    EXPECT_EQ(std::string(e.what()), "2 goal(s) left: |- p; |- q");
  }
  EXPECT_THROW(prove(parse_term("p"), parse_tactic_expr("CONJ_TAC")), TacticFailure);
  try {
    prove(parse_term("p"), parse_tactic_expr("FOO_TAC"));
    FAIL();
  } catch (const InterpretError& e) {
    EXPECT_EQ(e.category(), "unknown-tactic");
  }
}
