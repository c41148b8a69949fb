#pragma once

// The cylinder: five columns a..e; at every step the decision maker moves
// left (L), ahead (A) or right (R), without leaving the board. The reward of
// a step is the reward of the column it starts from.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "sdp/problem.hpp"

namespace sdp::examples {

enum class Move { L, A, R };

std::string to_key(Move m);

using Column = char;

struct CylinderSpec {
  std::vector<Column> columns{'a', 'b', 'c', 'd', 'e'};
  std::map<Column, double> source_rewards{{'a', 1.0}, {'b', 3.0}, {'c', 5.0}, {'d', 4.0}, {'e', 7.0}};
  /// Columns valid at time t; all columns when empty.
  std::function<std::vector<Column>(Time)> valid_columns;
  Kind kind = Kind::Deterministic;
  /// Probability of staying in place instead of moving (stochastic kind only).
  double slip = 0.0;
};

class Cylinder final : public Problem<Column, Move> {
 public:
  Cylinder(CylinderSpec spec, Measure measure);

  Kind kind() const override { return spec_.kind; }
  std::vector<Column> states(Time t) const override;
  std::vector<Move> controls(Time t, const Column& x) const override;
  Container<Column> step(Time t, const Column& x, const Move& y) const override;
  double reward(Time t, const Column& x, const Move& y, const Column& next) const override;
  const Measure& measure() const override { return measure_; }

  /// Column reached by a successful move; y must stay on the board.
  Column destination(const Column& x, Move y) const;

  const CylinderSpec& spec() const noexcept { return spec_; }

 private:
  std::vector<Move> board_moves(const Column& x) const;

  CylinderSpec spec_;
  Measure measure_;
};

/// All columns valid at every step; deterministic.
Cylinder cylinder_det(Measure measure = Measure::expected());
/// Only e valid at t=3 and only a, b, c at t=6. Controls whose outcome leaves
/// the next layer are not offered.
Cylinder cylinder_timedep(Measure measure = Measure::expected());
/// Each move either succeeds or leaves the decision maker in place.
Cylinder cylinder_nondet(Measure measure = Measure::worst());
/// Each move succeeds with probability 1 - slip; throws InvalidSlip unless 0 <= slip < 1.
Cylinder cylinder_stoch(double slip = 0.2, Measure measure = Measure::expected());

}  // namespace sdp::examples
