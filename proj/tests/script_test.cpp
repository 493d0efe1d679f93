#include <random>
#include <string>

#include <gtest/gtest.h>

#include "hiprove/script.hpp"
#include "hiprove/session.hpp"
#include "hiprove/term_syntax.hpp"
#include "support/golden.hpp"

using namespace hiprove;

namespace {

ScriptExpr n(const char* s) { return ScriptExpr::name(s); }

// Random tactic expressions over the script grammar.
class ExprGen {
 public:
  explicit ExprGen(unsigned seed) : rng_(seed) {}

  ScriptExpr make(int depth = 0) {
    const int r = pick(0, depth >= 4 ? 2 : 8);
    static const char* names[] = {"CONJ_TAC", "DISCH_TAC", "TRUTH_TAC", "ASSUMPTION_TAC"};
    switch (r) {
      case 0:
      case 1: return n(names[pick(0, 3)]);
      case 2: return ScriptExpr::app(n("DISJ_CASES_TAC"), {ScriptExpr::term(parse_term("p \\/ q ==> r"))});
      case 3: return ScriptExpr::then_(make(depth + 1), make(depth + 1));
      case 4: return ScriptExpr::orelse(make(depth + 1), make(depth + 1));
      case 5: {
        std::vector<ScriptExpr> bs;
        for (int i = pick(0, 3); i > 0; --i) bs.push_back(make(depth + 1));
        return ScriptExpr::thenl(make(depth + 1), std::move(bs));
      }
      case 6: return ScriptExpr::repeat(make(depth + 1));
      case 7: {
        static const char* labels[] = {"plain", "with \"quotes\"", "back\\slash", ""};
        return ScriptExpr::label(labels[pick(0, 3)], make(depth + 1));
      }
      default: return ScriptExpr::app(n("CONJ_ASSUM_TAC"), {ScriptExpr::term(parse_term("a /\\ b"))});
    }
  }

 private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::mt19937 rng_;
};

}  // namespace

TEST(ScriptExpr, InfixIsLeftAssociativeAtOnePrecedence) {
  const ScriptExpr e = parse_tactic_expr("A_TAC THEN B_TAC THENL [C_TAC; D_TAC] THEN E_TAC");
  const ScriptExpr want = ScriptExpr::then_(
      ScriptExpr::thenl(ScriptExpr::then_(n("A_TAC"), n("B_TAC")), {n("C_TAC"), n("D_TAC")}),
      n("E_TAC"));
  EXPECT_EQ(e, want);
  EXPECT_EQ(parse_tactic_expr("A_TAC ORELSE B_TAC THEN C_TAC"),
            ScriptExpr::then_(ScriptExpr::orelse(n("A_TAC"), n("B_TAC")), n("C_TAC")));
}

TEST(ScriptExpr, ApplicationBindsTighter) {
  EXPECT_EQ(parse_tactic_expr("REPEAT A_TAC THEN B_TAC"),
            ScriptExpr::then_(ScriptExpr::repeat(n("A_TAC")), n("B_TAC")));
  EXPECT_EQ(parse_tactic_expr("LABEL \"x\" A_TAC THEN B_TAC"),
            ScriptExpr::then_(ScriptExpr::label("x", n("A_TAC")), n("B_TAC")));
  EXPECT_EQ(parse_tactic_expr("DISJ_CASES_TAC \"p \\/ q\""),
            ScriptExpr::app(n("DISJ_CASES_TAC"), {ScriptExpr::term(parse_term("p \\/ q"))}));
}

TEST(ScriptExpr, PrintsWithMinimalParentheses) {
  const char* cases[] = {
      "A_TAC THEN (B_TAC THEN C_TAC)",
      "REPEAT (A_TAC THEN B_TAC)",
      "A_TAC THENL [B_TAC THEN C_TAC; D_TAC]",
      "LABEL \"a \\\"q\\\"\" (A_TAC ORELSE B_TAC)",
      "A_TAC THENL []",
  };
  for (const char* c : cases) EXPECT_EQ(print_tactic_expr(parse_tactic_expr(c)), c);
  EXPECT_EQ(print_tactic_expr(parse_tactic_expr("((A_TAC THEN B_TAC)) THEN C_TAC")),
            "A_TAC THEN B_TAC THEN C_TAC");
}

TEST(ScriptExpr, SyntaxErrors) {
  EXPECT_THROW(parse_tactic_expr("A_TAC THEN"), SyntaxError);
  EXPECT_THROW(parse_tactic_expr("THENL [A_TAC]"), SyntaxError);
  EXPECT_THROW(parse_tactic_expr("a_tac"), SyntaxError);
  EXPECT_THROW(parse_tactic_expr("A_TAC THENL [B_TAC"), SyntaxError);
  EXPECT_THROW(parse_tactic_expr("\"unterminated"), SyntaxError);
  try {
    parse_tactic_expr("DISJ_CASES_TAC \"p \\/\"");
    FAIL();
  } catch (const SyntaxError& e) {
    // Term errors are reported at their offset in the script text.
    EXPECT_EQ(e.offset(), 20u);
  }
}

TEST(ScriptExpr, PrintParseRoundTripOnRandomExpressions) {
  ExprGen gen(31337);
  for (int i = 0; i < 1000; ++i) {
    const ScriptExpr e = gen.make();
    const std::string text = print_tactic_expr(e);
    ASSERT_EQ(parse_tactic_expr(text), e) << text;
  }
}

TEST(FlatScript, ParseAndPrint) {
  const std::string text =
      "(* header comment (* nested *) *)\n"
      "g \"p ==> p /\\ p\";;\n"
      "e (DISCH_TAC);;\n"
      "e (CONJ_TAC);;\n"
      "(* *** Subgoal 1 *** *)\n"
      "e (ASSUMPTION_TAC);;\n"
      "(* *** Subgoal 2 *** *)\n"
      "e (ASSUMPTION_TAC);;\n";
  const FlatScript f = parse_flat(text);
  EXPECT_EQ(print_term(f.goal), "p ==> p /\\ p");
  ASSERT_EQ(f.steps.size(), 4u);
  EXPECT_EQ(f.steps[0].line, 3u);
  EXPECT_EQ(f.steps[3].line, 8u);
  EXPECT_EQ(f.steps[2].comment, (SubgoalNumber{1}));
  EXPECT_FALSE(f.steps[1].comment);
  EXPECT_EQ(print_flat(f), text.substr(text.find('\n') + 1));
}

TEST(FlatScript, MarkerErrors) {
  EXPECT_THROW(parse_flat("g \"p\";;\n(* *** Subgoal 1 *** *)\n(* *** Subgoal 2 *** *)\ne (A_TAC);;\n"),
               SyntaxError);
  EXPECT_THROW(parse_flat("g \"p\";;\ne (A_TAC);;\n(* *** Subgoal 1 *** *)\n"), SyntaxError);
  EXPECT_THROW(parse_flat("(* *** Subgoal 1 *** *)\ng \"p\";;\n"), SyntaxError);
  // An ordinary comment between steps is ignored.
  EXPECT_EQ(parse_flat("g \"p\";;\n(* note *)\ne (A_TAC);;\n").steps.size(), 1u);
}

TEST(FlatScript, RoundTripOnGoldenFiles) {
  for (const auto& p : golden::flat()) {
    const std::string text = golden::read(p);
    EXPECT_EQ(print_flat(parse_flat(text)), text) << p;
  }
}

TEST(PackagedScript, ParseNamedAndAnonymous) {
  const PackagedScript a = parse_packaged("let FOO = prove(\"p ==> p\", DISCH_TAC THEN ASSUMPTION_TAC);;");
  EXPECT_EQ(a.name, std::optional<std::string>("FOO"));
  EXPECT_EQ(print_term(a.goal), "p ==> p");
  const PackagedScript b = parse_packaged("prove(\"T\", TRUTH_TAC);;\n");
  EXPECT_FALSE(b.name);
  EXPECT_EQ(print_packaged(b), "prove(\"T\",\n  TRUTH_TAC);;\n");
  EXPECT_THROW(parse_packaged("prove(\"T\", TRUTH_TAC);;\nprove(\"T\", TRUTH_TAC);;"), SyntaxError);
}

TEST(PackagedScript, LongChainsBreakBeforeOperators) {
  PackagedScript s{std::nullopt, parse_term("p"), parse_tactic_expr(
      "DISCH_TAC THEN DISCH_TAC THEN DISCH_TAC THEN DISCH_TAC THEN DISCH_TAC THEN DISCH_TAC "
      "THENL [ASSUMPTION_TAC; TRUTH_TAC]")};
  const std::string out = print_packaged(s);
  std::size_t start = out.find('\n') + 1;
  while (start < out.size()) {
    const std::size_t end = out.find('\n', start);
    EXPECT_LE(end - start, kPackagedWidth) << out;
    EXPECT_EQ(out.substr(start, 2), "  ");
    start = end + 1;
  }
  EXPECT_EQ(parse_packaged(out), s);
}

TEST(PackagedScript, LongListsPutOneItemPerLine) {
  PackagedScript s{std::string("CASES"), parse_term("(p \\/ q) /\\ r ==> p /\\ r \\/ q /\\ r"),
                   parse_tactic_expr(
                       "DISCH_TAC THEN CONJ_ASSUM_TAC \"(p \\/ q) /\\ r\" THEN DISJ_CASES_TAC "
                       "\"p \\/ q\" THENL [DISJ1_TAC THEN CONJ_TAC THEN ASSUMPTION_TAC; DISJ2_TAC "
                       "THEN CONJ_TAC THENL [ASSUMPTION_TAC THEN ASSUMPTION_TAC THEN "
                       "ASSUMPTION_TAC; ASSUMPTION_TAC]]")};
  const std::string out = print_packaged(s);
  EXPECT_EQ(out,
            "let CASES = prove(\"(p \\/ q) /\\ r ==> p /\\ r \\/ q /\\ r\",\n"
            "  DISCH_TAC THEN CONJ_ASSUM_TAC \"(p \\/ q) /\\ r\"\n"
            "  THEN DISJ_CASES_TAC \"p \\/ q\"\n"
            "  THENL [DISJ1_TAC THEN CONJ_TAC THEN ASSUMPTION_TAC;\n"
            "         DISJ2_TAC THEN CONJ_TAC\n"
            "         THENL [ASSUMPTION_TAC THEN ASSUMPTION_TAC THEN ASSUMPTION_TAC;\n"
            "                ASSUMPTION_TAC]]);;\n");
  EXPECT_EQ(parse_packaged(out), s);
}

TEST(PackagedScript, RoundTripOnRandomExpressions) {
  ExprGen gen(2718);
  for (int i = 0; i < 500; ++i) {
    PackagedScript s{i % 2 ? std::optional<std::string>("NAME") : std::nullopt,
                     parse_term("a /\\ b ==> b"), gen.make()};
    const std::string text = print_packaged(s);
    ASSERT_EQ(parse_packaged(text), s) << text;
    ASSERT_EQ(print_packaged(parse_packaged(text)), text);
  }
}

TEST(PackagedScript, GoldenFilesParseAndReprint) {
  for (const auto& p : golden::packaged()) {
    const PackagedScript s = parse_packaged(golden::read(p));
    EXPECT_EQ(parse_packaged(print_packaged(s)), s) << p;
  }
}

TEST(Interpret, Errors) {
  const Registry reg = default_registry();
  auto category = [&](const char* text) -> std::string {
    try {
      interpret(parse_tactic_expr(text), reg);
    } catch (const InterpretError& e) {
      return e.category();
    }
    return "ok";
  };
  EXPECT_EQ(category("CONJ_TAC THEN DISCH_TAC"), "ok");
  EXPECT_EQ(category("FROB_TAC"), "unknown-tactic");
  EXPECT_EQ(category("CONJ_TAC THEN FROB_TAC"), "unknown-tactic");
  EXPECT_EQ(category("DISJ_CASES_TAC"), "argument");
  EXPECT_EQ(category("CONJ_TAC \"p\""), "argument");
  EXPECT_EQ(category("DISJ_CASES_TAC \"p\" \"q\""), "argument");
  EXPECT_EQ(category("REPEAT"), "argument");
  EXPECT_THROW(interpret(ScriptExpr::name("THEN"), reg), InterpretError);
  EXPECT_THROW(interpret(ScriptExpr::app(ScriptExpr::name("THEN"), {ScriptExpr::name("CONJ_TAC")}), reg),
               InterpretError);
  EXPECT_THROW(interpret(ScriptExpr::str("CONJ_TAC"), reg), InterpretError);
  EXPECT_THROW(parse_tactic_expr("CONJ_TAC THENL [\"p\"]"), SyntaxError);
  EXPECT_THROW(interpret(ScriptExpr::thenl(ScriptExpr::name("CONJ_TAC"), {ScriptExpr::str("p")}), reg),
               InterpretError);
  EXPECT_EQ(category("LABEL CONJ_TAC"), "argument");
}

TEST(Interpret, ThenlWithTooFewTacticsFailsWhenRun) {
  Session s;
  s.set_goal(parse_term("T /\\ T"));
  try {
    s.apply(interpret(parse_tactic_expr("CONJ_TAC THENL [TRUTH_TAC]"), default_registry()));
    FAIL();
  } catch (const TacticFailure& e) {
    EXPECT_NE(std::string(e.what()).find("1 tactic(s) for 2 subgoal(s)"), std::string::npos);
  }
}

TEST(LineColumn, CountsFromOne) {
  EXPECT_EQ(line_column("ab\ncd", 0), (std::pair<std::size_t, std::size_t>{1, 1}));
  EXPECT_EQ(line_column("ab\ncd", 4), (std::pair<std::size_t, std::size_t>{2, 2}));
}
