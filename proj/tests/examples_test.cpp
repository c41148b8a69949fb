#include <gtest/gtest.h>

#include <sstream>

#include "sdp/examples/cylinder.hpp"
#include "sdp/examples/knapsack.hpp"
#include "sdp/examples/problem_file.hpp"
#include "sdp/solver.hpp"

namespace sdp::examples {
namespace {

ErrorCode parse_error_code(const std::string& text, std::string* message = nullptr) {
  std::istringstream in(text);
  try {
    parse_problem(in);
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  ADD_FAILURE() << "parsed without error";
  return ErrorCode::IllPosed;
}

TEST(Cylinder, Board) {
  const auto cyl = cylinder_det();
  EXPECT_EQ(cyl.states(0), (std::vector<char>{'a', 'b', 'c', 'd', 'e'}));
  EXPECT_EQ(cyl.controls(0, 'a'), (std::vector<Move>{Move::A, Move::R}));
  EXPECT_EQ(cyl.controls(5, 'e'), (std::vector<Move>{Move::L, Move::A}));
  EXPECT_EQ(cyl.step(0, 'b', Move::R), Container<char>::single('c'));
  EXPECT_DOUBLE_EQ(cyl.reward(0, 'b', Move::R, 'c'), 3.0);
  const std::map<char, double> rewards{{'a', 1}, {'b', 3}, {'c', 5}, {'d', 4}, {'e', 7}};
  for (const auto& [x, r] : rewards)
    for (Move y : cyl.controls(2, x)) EXPECT_DOUBLE_EQ(cyl.reward(2, x, y, cyl.destination(x, y)), r);
  EXPECT_EQ(to_key(Move::L), "L");
}

TEST(Cylinder, TimeDependentLayers) {
  const auto cyl = cylinder_timedep();
  EXPECT_EQ(cyl.states(3), std::vector<char>{'e'});
  EXPECT_EQ(cyl.states(6), (std::vector<char>{'a', 'b', 'c'}));
  EXPECT_EQ(cyl.states(4).size(), 5u);
  EXPECT_EQ(cyl.controls(2, 'e'), std::vector<Move>{Move::A});
  EXPECT_EQ(cyl.controls(5, 'e'), std::vector<Move>{});
  EXPECT_FALSE(viable(cyl, 3, 0, 'a'));
  EXPECT_FALSE(reachable(cyl, 4, 'a'));
}

TEST(Cylinder, NonDeterministicMoves) {
  const auto cyl = cylinder_nondet();
  EXPECT_EQ(cyl.kind(), Kind::NonDeterministic);
  EXPECT_EQ(cyl.measure().name(), "worst");
  EXPECT_EQ(cyl.step(0, 'b', Move::R), Container<char>::set({'b', 'c'}));
  EXPECT_EQ(cyl.step(0, 'b', Move::A), Container<char>::set({'b'}));
}

TEST(Cylinder, StochasticSlip) {
  const auto cyl = cylinder_stoch(0.2);
  EXPECT_EQ(cyl.step(0, 'b', Move::R), Container<char>::dist({{'c', 0.8}, {'b', 0.2}}));
  EXPECT_EQ(cyl.step(0, 'b', Move::A), Container<char>::dist({{'b', 1.0}}));
  EXPECT_EQ(cylinder_stoch(0.0).step(0, 'b', Move::L), Container<char>::dist({{'a', 1.0}}));
  for (double bad : {-0.1, 1.0, 1.5}) {
    try {
      cylinder_stoch(bad);
      FAIL() << "expected InvalidSlip for " << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidSlip);
    }
  }
}

TEST(Knapsack, Shipped) {
  const auto k = shipped_knapsack();
  EXPECT_EQ(k.capacity(), 5);
  EXPECT_EQ(k.states(0), (std::vector<int>{0, 1, 2, 3, 4, 5}));
  EXPECT_EQ(k.controls(0, 5), (std::vector<Pick>{Pick::Take, Pick::Skip}));
  EXPECT_EQ(k.controls(0, 1), std::vector<Pick>{Pick::Skip});
  EXPECT_EQ(k.controls(3, 5), std::vector<Pick>{Pick::Skip});
  EXPECT_EQ(k.step(0, 5, Pick::Take), Container<int>::single(3));
  EXPECT_DOUBLE_EQ(k.reward(1, 3, Pick::Take, 0), 4.0);
  EXPECT_DOUBLE_EQ(k.reward(1, 3, Pick::Skip, 3), 0.0);
  EXPECT_DOUBLE_EQ(backwards_induction(k, 0, 3).start_values().at(5), 7.0);
}

TEST(Knapsack, ZeroCapacity) {
  const auto k = knapsack(0, {{1, 5.0}});
  EXPECT_EQ(k.states(0), std::vector<int>{0});
  EXPECT_EQ(k.controls(0, 0), std::vector<Pick>{Pick::Skip});
  EXPECT_DOUBLE_EQ(backwards_induction(k, 0, 1).start_values().at(0), 0.0);
}

TEST(ProblemFile, ParsesSmallFile) {
  const auto p = load_problem_file(std::string(SDP_DATA_DIR) + "/small.sdp");
  EXPECT_EQ(p.kind(), Kind::Stochastic);
  EXPECT_EQ(p.states(1), (std::vector<std::string>{"hi", "lo"}));
  EXPECT_EQ(p.controls(0, "s"), (std::vector<std::string>{"risky", "safe"}));
  EXPECT_EQ(p.step(0, "s", "risky"), Container<std::string>::dist({{"hi", 0.5}, {"lo", 0.5}}));
  EXPECT_DOUBLE_EQ(p.reward(0, "s", "risky", "hi"), 10.0);
  EXPECT_DOUBLE_EQ(p.reward(1, "hi", "go", "end"), 1.0);
  EXPECT_DOUBLE_EQ(p.reward(1, "zz", "go", "end"), 0.0);
  EXPECT_EQ(p.horizon_hint(), Time{2});
  // risky: 0.5 * (10 + 1) + 0.5 * (0 + 2) = 6.5 beats safe: 4 + 2 = 6.
  const auto sol = backwards_induction(p, 0, 2);
  EXPECT_DOUBLE_EQ(sol.start_values().at("s"), 6.5);
  EXPECT_EQ(sol.policies.policies[0].at("s"), "risky");
}

TEST(ProblemFile, KeepsBrokenMassForValidation) {
  const auto p = load_problem_file(std::string(SDP_DATA_DIR) + "/bad_normalization.sdp");
  const auto report = validate(p, 0);
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0].kind, ViolationKind::NormalizationViolation);
}

TEST(ProblemFile, SortsLayersAndControls) {
  std::istringstream in("[kind]\nnondeterministic\n[layers]\n0 = z a\n1 = a\n[controls]\n0 z = y x\n0 a = x\n"
                        "[step]\n0 z y = a\n0 z x = a\n0 a x = a\n[measure]\nbest\n");
  const auto p = parse_problem(in);
  EXPECT_EQ(p.states(0), (std::vector<std::string>{"a", "z"}));
  EXPECT_EQ(p.controls(0, "z"), (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(p.measure().name(), "best");
  EXPECT_TRUE(validate(p, 0).ok());
}

TEST(ProblemFile, Errors) {
  std::string message;
  EXPECT_EQ(parse_error_code("[layers]\n0 = a\n", &message), ErrorCode::ParseError);
  EXPECT_EQ(message, "ParseError: missing [kind] section");
  EXPECT_EQ(parse_error_code("[kind]\nfuzzy\n", &message), ErrorCode::ParseError);
  EXPECT_EQ(message, "ParseError: line 2: unknown kind 'fuzzy'");
  EXPECT_EQ(parse_error_code("[kind]\ndeterministic\n[layers]\nx = a\n", &message), ErrorCode::ParseError);
  EXPECT_NE(message.find("line 4"), std::string::npos);
  EXPECT_EQ(parse_error_code("[bogus]\n"), ErrorCode::ParseError);
  EXPECT_EQ(parse_error_code("[kind]\ndeterministic\n[layers]\n0 = a a\n"), ErrorCode::ParseError);
  EXPECT_EQ(parse_error_code("[kind]\ndeterministic\n[layers]\n0 = a\n[controls]\n0 a = go\n", &message),
            ErrorCode::ParseError);
  EXPECT_NE(message.find("no transition"), std::string::npos);
  EXPECT_EQ(parse_error_code("[kind]\ndeterministic\n[layers]\n0 = a\n[controls]\n0 a = go\n[step]\n0 a go = a b\n"),
            ErrorCode::ParseError);
  EXPECT_EQ(parse_error_code("[kind]\nstochastic\n[layers]\n0 = a\n[controls]\n0 a = go\n[step]\n0 a go = a\n"),
            ErrorCode::ParseError);
  EXPECT_EQ(parse_error_code("[kind]\ndeterministic\n[reward]\n0 a = lots\n"), ErrorCode::ParseError);
  EXPECT_EQ(parse_error_code("[kind]\ndeterministic\n[measure]\nvariance\n"), ErrorCode::ParseError);
  EXPECT_EQ(parse_error_code("stray\n"), ErrorCode::ParseError);
  EXPECT_THROW(load_problem_file("/nonexistent/problem.sdp"), Error);
}

}  // namespace
}  // namespace sdp::examples
