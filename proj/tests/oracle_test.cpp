#include <gtest/gtest.h>

#include <sstream>

#include "sdp/examples/cylinder.hpp"
#include "sdp/examples/knapsack.hpp"
#include "sdp/examples/problem_file.hpp"
#include "sdp/oracle.hpp"

namespace sdp {
namespace {

using examples::Move;
using CylModel = Model<char, Move>;

/// States {0, 1} at every layer; control y moves to state y; reward x + 2y.
class Switch final : public Problem<int, int> {
 public:
  Kind kind() const override { return Kind::Deterministic; }
  std::vector<int> states(Time) const override { return {0, 1}; }
  std::vector<int> controls(Time, const int&) const override { return {0, 1}; }
  Container<int> step(Time, const int&, const int& y) const override { return Container<int>::single(y); }
  double reward(Time, const int& x, const int& y, const int&) const override { return x + 2.0 * y; }
  const Measure& measure() const override { return measure_; }

 private:
  Measure measure_ = Measure::expected();
};

TEST(EnumCtrlSeqs, Counts) {
  const auto cyl = examples::cylinder_det();
  const auto model = CylModel::build(cyl, 3);
  const auto none = enum_ctrl_seqs(model, 0, 0, 'c');
  ASSERT_EQ(none.size(), 1u);
  EXPECT_TRUE(none[0].ctrls.empty());
  EXPECT_EQ(enum_ctrl_seqs(model, 0, 2, 'c').size(), 9u);
  EXPECT_EQ(enum_ctrl_seqs(model, 0, 2, 'a').size(), 5u);
}

TEST(EnumCtrlSeqs, Errors) {
  const auto timedep = examples::cylinder_timedep();
  const auto model = CylModel::build(timedep, 3);
  try {
    enum_ctrl_seqs(model, 0, 3, 'a');
    FAIL() << "expected NotViable";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotViable);
  }
  EXPECT_EQ(enum_ctrl_seqs(model, 0, 2, 'a').size(), 5u);
  EXPECT_EQ(enum_ctrl_seqs(model, 0, 3, 'b').size(), 1u);

  const auto nondet = examples::cylinder_nondet();
  const auto nd_model = CylModel::build(nondet, 1);
  try {
    enum_ctrl_seqs(nd_model, 0, 1, 'a');
    FAIL() << "expected NotDeterministic";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotDeterministic);
  }
}

TEST(SeqValue, FigureOne) {
  const auto cyl = examples::cylinder_det();
  EXPECT_EQ(seq_value(cyl, CtrlSeq<char, Move>{0, 'b', {}}), 0.0);
  EXPECT_DOUBLE_EQ(seq_value(cyl, CtrlSeq<char, Move>{0, 'b', {Move::R, Move::R, Move::A, Move::A}}), 16.0);
  for (Move y : {Move::L, Move::A, Move::R})
    EXPECT_DOUBLE_EQ(seq_value(cyl, CtrlSeq<char, Move>{0, 'b', {y}}), 3.0);
  EXPECT_DOUBLE_EQ(cyl.step(0, 'b', Move::R).as_single(), 'c');
}

TEST(EnumPolicySeqs, Counts) {
  const Switch sw;
  const auto model = Model<int, int>::build(sw, 1);
  const auto empty = enum_policy_seqs(model, 0, 0);
  ASSERT_EQ(empty.size(), 1u);
  EXPECT_EQ(empty[0].length(), 0u);
  const auto all = enum_policy_seqs(model, 0, 2);
  EXPECT_EQ(all.size(), 16u);
  for (std::size_t i = 1; i < all.size(); ++i) EXPECT_FALSE(all[i] == all[i - 1]);
  EXPECT_DOUBLE_EQ((PolicySpace<int, int>(model, 0, 2).count()), 16.0);
}

TEST(EnumPolicySeqs, TooLarge) {
  const auto cyl = examples::cylinder_det();
  const auto model = CylModel::build(cyl, 1);
  // 2 * 3 * 3 * 3 * 2 = 108 policies per layer.
  EXPECT_DOUBLE_EQ((PolicySpace<char, Move>(model, 0, 2).count()), 108.0 * 108.0);
  try {
    enum_policy_seqs(model, 0, 2, 100);
    FAIL() << "expected TooLarge";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooLarge);
  }
}

TEST(CheckOptPolicySeq, SolverPasses) {
  const auto cyl = examples::cylinder_det();
  const auto model = CylModel::build(cyl, 2);
  const auto sol = backwards_induction(model, 0, 3);
  const CheckReport report = check_opt_policy_seq(model, sol.policies);
  EXPECT_TRUE(report.pass) << report.to_text();
  EXPECT_GT(report.evaluated, 0u);
  EXPECT_EQ(report.to_text(), "PASS");
}

TEST(CheckOptPolicySeq, ModesAgree) {
  for (Steps n = 1; n <= 2; ++n) {
    const auto cyl = examples::cylinder_stoch(0.2);
    const auto model = CylModel::build(cyl, n - 1);
    const auto sol = backwards_induction(model, 0, n);
    const auto exhaustive = check_opt_policy_seq(model, sol.policies, kDefaultCap, CheckMode::Exhaustive);
    const auto restricted = check_opt_policy_seq(model, sol.policies, kDefaultCap, CheckMode::Restricted);
    EXPECT_TRUE(exhaustive.pass);
    EXPECT_TRUE(restricted.pass);
    EXPECT_LT(restricted.evaluated, exhaustive.evaluated);
  }
}

TEST(CheckOptPolicySeq, PerturbationFails) {
  const auto cyl = examples::cylinder_det();
  const auto model = CylModel::build(cyl, 2);
  auto ps = backwards_induction(model, 0, 3).policies;
  ps.policies[0].table.at('b') = Move::L;
  for (CheckMode mode : {CheckMode::Exhaustive, CheckMode::Restricted}) {
    const CheckReport report = check_opt_policy_seq(model, ps, 10'000'000, mode);
    EXPECT_FALSE(report.pass);
    EXPECT_EQ(report.x, "b");
    // b -L-> a -R-> b -R-> c = 3 + 1 + 3 = 7 against the optimum 13.
    EXPECT_DOUBLE_EQ(report.gap, 6.0);
    EXPECT_EQ(report.to_text(), "FAIL t=0 x=b gap=6.000000000");
  }
}

TEST(CheckOptPolicySeq, PerturbationFailsStochastic) {
  const auto cyl = examples::cylinder_stoch(0.2);
  const auto model = CylModel::build(cyl, 1);
  auto ps = backwards_induction(model, 0, 2).policies;
  ps.policies[0].table.at('b') = Move::L;
  const CheckReport report = check_opt_policy_seq(model, ps);
  EXPECT_FALSE(report.pass);
  // 3 + 0.8 * 1 + 0.2 * 3 = 4.4 against the optimum 7.6.
  EXPECT_NEAR(report.gap, 3.2, 1e-12);
}

TEST(CheckOptPolicySeq, EmptySequenceIsVacuous) {
  const auto cyl = examples::cylinder_det();
  const auto model = CylModel::build(cyl, 1);
  EXPECT_TRUE(check_opt_policy_seq(model, PolicySeq<char, Move>{1, {}}).pass);
}

TEST(CheckOptPolicySeq, CapIsEnforced) {
  const auto cyl = examples::cylinder_det();
  const auto model = CylModel::build(cyl, 11);
  const auto sol = backwards_induction(model, 0, 12);
  for (CheckMode mode : {CheckMode::Exhaustive, CheckMode::Restricted}) {
    try {
      check_opt_policy_seq(model, sol.policies, 1000, mode);
      FAIL() << "expected TooLarge";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::TooLarge);
    }
  }
}

TEST(CheckOptPolicySeq, KnapsackFourItems) {
  const auto k = examples::knapsack(3, {{1, 1.0}, {2, 3.0}, {3, 4.0}, {1, 2.0}});
  const auto model = Model<int, examples::Pick>::build(k, 3);
  const auto sol = backwards_induction(model, 0, 4);
  const std::map<int, double> expected{{0, 0}, {1, 2}, {2, 3}, {3, 5}};
  EXPECT_EQ(sol.start_values().values, expected);
  EXPECT_TRUE(check_opt_policy_seq(model, sol.policies, kDefaultCap, CheckMode::Exhaustive).pass);
}

TEST(CheckBellman, Deterministic) {
  const auto cyl = examples::cylinder_det();
  const auto model = CylModel::build(cyl, 3);
  for (Time t = 0; t + 2 <= 4; ++t) {
    const auto next = backwards_induction(model, t + 1, 1);
    EXPECT_TRUE(check_bellman(model, next.policies).pass) << "t=" << t;
  }
}

TEST(CheckBellman, Stochastic) {
  const auto cyl = examples::cylinder_stoch(0.2);
  const auto model = CylModel::build(cyl, 2);
  for (Steps n = 0; n <= 2; ++n) {
    const auto next = backwards_induction(model, 1, n);
    EXPECT_TRUE(check_bellman(model, next.policies).pass) << "n=" << n;
  }
}

TEST(CheckBellman, RejectsSequenceAtTimeZero) {
  const auto cyl = examples::cylinder_det();
  const auto model = CylModel::build(cyl, 1);
  EXPECT_THROW(check_bellman(model, backwards_induction(model, 0, 1).policies), Error);
}

// Maximizing variance is not monotone: at u the spread-out control c1 wins
// locally, but a calm u next to a wild w makes the first step more variable.
TEST(CheckBellman, FailsForVarianceMeasure) {
  std::istringstream in(R"([kind]
stochastic
[layers]
0 = x
1 = u w
2 = hi lo
[controls]
0 x = go
1 u = c1 c2
1 w = k
[step]
0 x go = u:0.5 w:0.5
1 u c1 = hi:0.5 lo:0.5
1 u c2 = hi:0.5 lo:0.5
1 w k = hi:0.5 lo:0.5
[reward]
0 x = 0
1 u c1 hi = 10
1 u c1 lo = 0
1 u c2 hi = 2
1 u c2 lo = 0
1 w k hi = 10
1 w k lo = 0
)");
  const auto base = examples::parse_problem(in);
  const Remeasured<std::string, std::string> variance(base, Measure::variance_unchecked());
  const auto model = Model<std::string, std::string>::build(variance, 1);

  const auto [tail, tail_values] = opt_ext(model, zero_values(model, 2));
  EXPECT_EQ(tail.at("u"), "c1");
  EXPECT_DOUBLE_EQ(tail_values.at("u"), 25.0);
  const PolicySeq<std::string, std::string> ps_next{1, {tail}};
  EXPECT_TRUE(check_opt_policy_seq(model, ps_next).pass);

  const CheckReport report = check_bellman(model, ps_next);
  EXPECT_FALSE(report.pass);
  EXPECT_EQ(report.x, "x");
  // Extension scores var{25, 25} = 0; choosing c2 at u scores var{1, 25} = 144.
  EXPECT_NEAR(report.gap, 144.0, 1e-9);
}

}  // namespace
}  // namespace sdp
