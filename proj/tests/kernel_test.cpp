#include <string>
#include <type_traits>

#include <gtest/gtest.h>

#include "hiprove/kernel.hpp"
#include "hiprove/term_syntax.hpp"

using namespace hiprove;

namespace {

Term t(const char* s) { return parse_term(s); }

void expect_closed(const Thm& th) {
  const Hiproof& h = th.proof();
  EXPECT_TRUE(well_formed(h)) << describe(h);
  EXPECT_EQ(h.in_count(), 1u);
  EXPECT_EQ(h.out_count(), 0u);
}

}  // namespace

// Theorems can only come from the kernel.
static_assert(!std::is_constructible_v<Thm, Hiproof, Assumptions, Term>);
static_assert(!std::is_default_constructible_v<Thm>);

TEST(Kernel, Assume) {
  const Thm th = assume(t("p"));
  EXPECT_EQ(print_thm(th), "p |- p");
  EXPECT_EQ(describe(th.proof(), true), "A(ASSUME, {p |- p},0)");
}

TEST(Kernel, ConjUnionsAssumptions) {
  const Thm th = conj(assume(t("p")), conj(assume(t("q")), assume(t("p"))));
  EXPECT_EQ(print_thm(th), "p, q |- p /\\ q /\\ p");
  EXPECT_EQ(describe(th.proof()),
            "Seq[A(CONJ,2), Ten[A(ASSUME,0), Seq[A(CONJ,2), Ten[A(ASSUME,0), A(ASSUME,0)]]]]");
  expect_closed(th);
}

TEST(Kernel, ConjunctsAndTheirPreconditions) {
  const Thm pq = assume(t("p /\\ q"));
  EXPECT_EQ(print_thm(conjunct1(pq)), "p /\\ q |- p");
  EXPECT_EQ(print_thm(conjunct2(pq)), "p /\\ q |- q");
  EXPECT_THROW(conjunct1(assume(t("p"))), RuleError);
  EXPECT_THROW(conjunct2(assume(t("p \\/ q"))), RuleError);
}

TEST(Kernel, DischAndMp) {
  const Thm d = disch(t("p"), assume(t("p")));
  EXPECT_EQ(print_thm(d), "|- p ==> p");
  const Thm m = mp(d, assume(t("p")));
  EXPECT_EQ(print_thm(m), "p |- p");
  expect_closed(m);
  EXPECT_THROW(mp(d, assume(t("q"))), RuleError);
  EXPECT_THROW(mp(assume(t("p")), assume(t("p"))), RuleError);
  // Discharging a term that is not assumed still forms the implication.
  EXPECT_EQ(print_thm(disch(t("q"), truth())), "|- q ==> T");
}

TEST(Kernel, Disjunctions) {
  EXPECT_EQ(print_thm(disj1(assume(t("p")), t("q"))), "p |- p \\/ q");
  EXPECT_EQ(print_thm(disj2(t("q"), assume(t("p")))), "p |- q \\/ p");
  const Thm d = assume(t("p \\/ q"));
  const Thm l = disj2(t("q"), assume(t("p")));
  const Thm r = disj1(assume(t("q")), t("p"));
  const Thm c = disj_cases(d, l, r);
  EXPECT_EQ(print_thm(c), "p \\/ q |- q \\/ p");
  expect_closed(c);
  EXPECT_THROW(disj_cases(assume(t("p")), l, r), RuleError);
  EXPECT_THROW(disj_cases(d, r, l), RuleError);
  EXPECT_THROW(disj_cases(d, l, disj1(assume(t("q")), t("r"))), RuleError);
}

TEST(Kernel, EqualsThmIgnoresProofs) {
  const Thm a = assume(t("p"));
  const Thm b = mp(disch(t("p"), assume(t("p"))), assume(t("p")));
  EXPECT_TRUE(equals_thm(a, b));
  EXPECT_FALSE(a.proof() == b.proof());
}

TEST(Kernel, FreshNamesAreDistinct) {
  const std::string a = fresh_variable_name();
  const std::string b = fresh_variable_name();
  EXPECT_NE(a, b);
  EXPECT_EQ(a.front(), 'v');
}

TEST(Turnvars, FirstOccurrenceIsWireLaterOnesDuplicate) {
  const Hiproof h = Hiproof::sequence(
      {Hiproof::atomic(RuleLabel{"R"}, "|- p", 3),
       Hiproof::tensor({variable_step("x", "|- a"), variable_step("y", "|- b"),
                        variable_step("x", "|- a")})});
  auto [names, out] = turnvars({"x", "y"}, h);
  EXPECT_EQ(names, (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(describe(out), "Seq[A(R,3), Ten[A(id,1), A(id,1), A(dup,0)]]");
  EXPECT_EQ(out.out_count(), 2u);

  auto [none, same] = turnvars({"z"}, h);
  EXPECT_TRUE(none.empty());
  EXPECT_EQ(same, h);
}

TEST(Hilabel, NoPremises) {
  const Thm th = hilabel(UserLabel{"triv"}, [](const std::vector<Thm>&) { return truth(); }, {});
  EXPECT_EQ(print_thm(th), "|- T");
  EXPECT_EQ(describe(th.proof()), "Box(triv, A(TRUTH,0))");
  expect_closed(th);
}

TEST(Hilabel, OnePremiseStaysOutsideTheBox) {
  const Thm p = assume(t("p"));
  const Thm th = hilabel(UserLabel{"with T"},
                         [](const std::vector<Thm>& ps) { return conj(ps[0], truth()); }, {p});
  EXPECT_EQ(print_thm(th), "p |- p /\\ T");
  EXPECT_EQ(describe(th.proof()),
            "Seq[Box(with T, Seq[A(CONJ,2), Ten[A(id,1), A(TRUTH,0)]]), A(ASSUME,0)]");
  expect_closed(th);
}

TEST(Hilabel, RepeatedPremiseBecomesDuplicate) {
  const Thm p = assume(t("p"));
  const Thm th = hilabel(UserLabel{"twice"},
                         [](const std::vector<Thm>& ps) { return conj(ps[0], ps[0]); }, {p});
  EXPECT_EQ(print_thm(th), "p |- p /\\ p");
  EXPECT_EQ(describe(th.proof()),
            "Seq[Box(twice, Seq[A(CONJ,2), Ten[A(id,1), A(dup,0)]]), A(ASSUME,0)]");
  expect_closed(th);
}

TEST(Hilabel, UnusedPremiseIsDropped) {
  const Thm p = assume(t("p"));
  const Thm q = assume(t("q"));
  const Thm th = hilabel(UserLabel{"second"},
                         [](const std::vector<Thm>& ps) { return disj1(ps[1], t("r")); }, {p, q});
  EXPECT_EQ(print_thm(th), "q |- q \\/ r");
  EXPECT_EQ(describe(th.proof(), true),
            "Seq[Box(second, Seq[A(DISJ1, {q |- q \\/ r},1), A(id, {q |- q},1)]), "
            "A(ASSUME, {q |- q},0)]");
  expect_closed(th);
}

TEST(Hilabel, OutsideProofsFollowTheOrderOfUse) {
  const Thm p = assume(t("p"));
  const Thm q = assume(t("q"));
  const Thm th = hilabel(UserLabel{"swap"},
                         [](const std::vector<Thm>& ps) { return conj(ps[1], ps[0]); }, {p, q});
  EXPECT_EQ(print_thm(th), "q, p |- q /\\ p");
  EXPECT_EQ(describe(th.proof(), true),
            "Seq[Box(swap, Seq[A(CONJ, {q, p |- q /\\ p},2), Ten[A(id, {q |- q},1), "
            "A(id, {p |- p},1)]]), Ten[A(ASSUME, {q |- q},0), A(ASSUME, {p |- p},0)]]");
  expect_closed(th);
}

TEST(Hilabel, ThreePremisesNested) {
  const Thm a = assume(t("a"));
  const Thm b = assume(t("b"));
  const Thm c = assume(t("c"));
  const Thm th = hilabel(
      UserLabel{"outer"},
      [](const std::vector<Thm>& ps) {
        const Thm inner = hilabel(UserLabel{"inner"},
                                  [](const std::vector<Thm>& qs) { return conj(qs[0], qs[1]); },
                                  {ps[0], ps[2]});
        return conj(inner, ps[1]);
      },
      {a, b, c});
  EXPECT_EQ(print_thm(th), "a, c, b |- (a /\\ c) /\\ b");
  EXPECT_EQ(count_boxes(th.proof()), 2u);
  EXPECT_EQ(th.proof().items()[0].out_count(), 3u);
  expect_closed(th);
}
