#include <gtest/gtest.h>

#include "sdp/examples/cylinder.hpp"
#include "sdp/examples/knapsack.hpp"
#include "sdp/graph.hpp"

namespace sdp {
namespace {

enum class Fault { None, LeavesLayer, LowMass, WrongKind, Empty, Throws, Unsorted };

/// Two states per layer, one control "go" moving 0 -> 1 -> 0 ...; `fault`
/// corrupts the transition out of state 0 at t=1.
class Toy final : public Problem<int, std::string> {
 public:
  explicit Toy(Fault fault) : fault_(fault) {}

  Kind kind() const override { return Kind::Stochastic; }
  std::vector<int> states(Time) const override { return {0, 1}; }
  std::vector<std::string> controls(Time t, const int& x) const override {
    if (fault_ == Fault::Unsorted && t == 1 && x == 0) return {"go", "come"};
    return {"go"};
  }
  Container<int> step(Time t, const int& x, const std::string&) const override {
    if (t == 1 && x == 0) {
      switch (fault_) {
        case Fault::LeavesLayer: return Container<int>::dist({{7, 1.0}});
        case Fault::LowMass: return Container<int>::dist(SimpleProb<int>::raw({{1, 0.9}}));
        case Fault::WrongKind: return Container<int>::single(1);
        case Fault::Empty: return Container<int>::dist(SimpleProb<int>::raw({}));
        case Fault::Throws: throw std::runtime_error("boom");
        default: break;
      }
    }
    return Container<int>::dist({{1 - x, 1.0}});
  }
  double reward(Time, const int& x, const std::string&, const int&) const override { return x; }
  const Measure& measure() const override { return measure_; }

 private:
  Fault fault_;
  Measure measure_ = Measure::expected();
};

ViolationKind only_violation(Fault fault) {
  const ValidationReport report = validate(Toy(fault), 3);
  EXPECT_EQ(report.violations.size(), 1u) << report.to_text();
  return report.violations.empty() ? ViolationKind::NotViable : report.violations.front().kind;
}

TEST(Validate, ShippedExamplesAreWellPosed) {
  EXPECT_TRUE(validate(examples::cylinder_det(), 8).ok());
  EXPECT_TRUE(validate(examples::cylinder_timedep(), 8).ok());
  EXPECT_TRUE(validate(examples::cylinder_nondet(), 8).ok());
  EXPECT_TRUE(validate(examples::cylinder_stoch(0.2), 8).ok());
  EXPECT_TRUE(validate(examples::shipped_knapsack(), 5).ok());
  EXPECT_TRUE(validate(Toy(Fault::None), 3).ok());
}

TEST(Validate, ReportsEachFault) {
  EXPECT_EQ(only_violation(Fault::LeavesLayer), ViolationKind::LayerViolation);
  EXPECT_EQ(only_violation(Fault::LowMass), ViolationKind::NormalizationViolation);
  EXPECT_EQ(only_violation(Fault::WrongKind), ViolationKind::KindViolation);
  EXPECT_EQ(only_violation(Fault::Empty), ViolationKind::EmptyStep);
  EXPECT_EQ(only_violation(Fault::Throws), ViolationKind::StepError);
  EXPECT_EQ(only_violation(Fault::Unsorted), ViolationKind::OrderViolation);
}

TEST(Validate, ReportText) {
  const ValidationReport report = validate(Toy(Fault::LowMass), 3);
  ASSERT_FALSE(report.ok());
  EXPECT_EQ(report.to_text(), "NormalizationViolation t=1 x=0 y=go detail=total mass 0.900000000\n");
}

TEST(Validate, OnlyInspectsRequestedLayers) {
  EXPECT_TRUE(validate(Toy(Fault::LowMass), 0).ok());
  EXPECT_FALSE(validate(Toy(Fault::LowMass), 1).ok());
}

TEST(Remeasured, SwapsOnlyTheMeasure) {
  const auto cyl = examples::cylinder_stoch(0.2);
  const Remeasured<char, examples::Move> worst(cyl, Measure::worst());
  EXPECT_EQ(worst.measure().name(), "worst");
  EXPECT_EQ(worst.step(0, 'b', examples::Move::R), cyl.step(0, 'b', examples::Move::R));
  EXPECT_DOUBLE_EQ(worst.meas(Container<double>::dist({{1.0, 0.5}, {3.0, 0.5}})), 1.0);
}

TEST(TransitionGraph, IndexesSuccessors) {
  const auto cyl = examples::cylinder_stoch(0.2);
  const auto g = TransitionGraph<char, examples::Move>::build(cyl, 1);
  EXPECT_EQ(g.last(), 1u);
  EXPECT_EQ(g.layer(2).size(), 5u);
  const auto& tr = g.transition(0, g.index_of(0, 'b'), examples::Move::R);
  EXPECT_EQ(tr.next_index, (std::vector<std::size_t>{1, 2}));
  EXPECT_DOUBLE_EQ(tr.next_mass[0], 0.2);
  EXPECT_DOUBLE_EQ(tr.next_mass[1], 0.8);
  EXPECT_THROW(g.transitions(2, 0), Error);
  EXPECT_THROW(g.index_of(0, 'z'), Error);
}

TEST(TransitionGraph, RefusesIllPosedProblems) {
  EXPECT_THROW((TransitionGraph<int, std::string>::build(Toy(Fault::LeavesLayer), 2)), Error);
  EXPECT_THROW((TransitionGraph<int, std::string>::build(Toy(Fault::Empty), 2)), Error);
}

}  // namespace
}  // namespace sdp
