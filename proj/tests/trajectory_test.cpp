#include <gtest/gtest.h>

#include <numeric>

#include "sdp/examples/cylinder.hpp"
#include "sdp/oracle.hpp"
#include "sdp/trajectory.hpp"

namespace sdp {
namespace {

using examples::Move;
using Traj = StateCtrlSeq<char, Move>;

double total_mass(const Container<Traj>& trajs) {
  double mass = 0.0;
  for (const auto& [t, p] : trajs.weighted()) mass += p;
  return mass;
}

TEST(StateCtrlTrj, ZeroSteps) {
  const auto cyl = examples::cylinder_stoch(0.2);
  const auto trajs = state_ctrl_trj(cyl, PolicySeq<char, Move>{0, {}}, 0, 0, 'c');
  EXPECT_EQ(trajs, ret(Kind::Stochastic, Traj{{}, 'c'}));
  EXPECT_EQ(trajectory_value(cyl, trajs.as_dist().entries()[0].first), 0.0);
}

TEST(StateCtrlTrj, DeterministicReplay) {
  const auto cyl = examples::cylinder_det();
  const auto sol = backwards_induction(cyl, 0, 4);
  const auto trajs = state_ctrl_trj(cyl, sol.policies, 0, 4, 'b');
  ASSERT_EQ(trajs.kind(), Kind::Deterministic);
  const Traj& only = trajs.as_single();
  EXPECT_EQ(only.length(), 4u);
  EXPECT_TRUE(connected(cyl, only));
  EXPECT_DOUBLE_EQ(trajectory_value(cyl, only), sol.start_values().at('b'));
  EXPECT_EQ(path_text(only), "b -R-> c -R-> d -R-> e -L-> d");
}

TEST(StateCtrlTrj, FigureOnePath) {
  const auto cyl = examples::cylinder_det();
  const Traj fig1{{{0, 'b', Move::R}, {1, 'c', Move::R}, {2, 'd', Move::A}, {3, 'd', Move::A}}, 'd'};
  EXPECT_TRUE(connected(cyl, fig1));
  EXPECT_DOUBLE_EQ(trajectory_value(cyl, fig1), 16.0);
  const Traj broken{{{0, 'b', Move::R}, {1, 'd', Move::A}}, 'd'};
  EXPECT_FALSE(connected(cyl, broken));
}

TEST(StateCtrlTrj, StochasticTwoLevels) {
  const auto cyl = examples::cylinder_stoch(0.2);
  const auto sol = backwards_induction(cyl, 0, 2);
  const auto trajs = state_ctrl_trj(cyl, sol.policies, 0, 2, 'b');
  ASSERT_EQ(trajs.kind(), Kind::Stochastic);
  EXPECT_LE(trajs.as_dist().size(), 4u);
  EXPECT_NEAR(total_mass(trajs), 1.0, 1e-12);
  EXPECT_EQ(to_text(cyl, trajs),
            "0.160000000|b -R-> b -L-> a : 6.000000000\n"
            "0.040000000|b -R-> b -L-> b : 6.000000000\n"
            "0.640000000|b -R-> c -L-> b : 8.000000000\n"
            "0.160000000|b -R-> c -L-> c : 8.000000000\n");
  const double expected = meas_expected(fmap([&](const Traj& t) { return trajectory_value(cyl, t); }, trajs));
  EXPECT_NEAR(expected, sol.start_values().at('b'), 1e-12);
  for (const auto& t : trajs.support()) EXPECT_TRUE(connected(cyl, t));
}

TEST(StateCtrlTrj, NonDeterministicHasNoProbabilities) {
  const auto cyl = examples::cylinder_nondet();
  const auto sol = backwards_induction(cyl, 0, 1);
  const auto trajs = state_ctrl_trj(cyl, sol.policies, 0, 1, 'b');
  EXPECT_EQ(to_text(cyl, trajs), "b -L-> a : 3.000000000\nb -L-> b : 3.000000000\n");
}

TEST(StateCtrlTrj, RandomPoliciesMatchMval) {
  const auto cyl = examples::cylinder_stoch(0.35);
  const auto model = Model<char, Move>::build(cyl, 3);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const auto ps = random_policy_seq(model, 0, 4, rng);
    for (std::size_t i : model.domain(0, 4)) {
      const char x = model.state(0, i);
      const auto trajs = state_ctrl_trj(cyl, ps, 0, 4, x);
      EXPECT_NEAR(total_mass(trajs), 1.0, 1e-9);
      const double e = meas_expected(fmap([&](const Traj& t) { return trajectory_value(cyl, t); }, trajs));
      EXPECT_NEAR(e, mval(cyl, ps, 0, 4, x), 1e-9);
    }
  }
}

TEST(StateCtrlTrj, DomainMiss) {
  const auto cyl = examples::cylinder_timedep();
  const auto sol = backwards_induction(cyl, 0, 3);
  EXPECT_THROW(state_ctrl_trj(cyl, sol.policies, 0, 3, 'a'), Error);
  EXPECT_THROW(state_ctrl_trj(cyl, sol.policies, 1, 3, 'b'), Error);
}

}  // namespace
}  // namespace sdp
