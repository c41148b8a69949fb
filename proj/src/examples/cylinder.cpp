#include "sdp/examples/cylinder.hpp"

#include <algorithm>

namespace sdp::examples {

std::string to_key(Move m) {
  switch (m) {
    case Move::L: return "L";
    case Move::A: return "A";
    case Move::R: return "R";
  }
  return "?";
}

Cylinder::Cylinder(CylinderSpec spec, Measure measure) : spec_(std::move(spec)), measure_(std::move(measure)) {
  if (!(spec_.slip >= 0.0 && spec_.slip < 1.0))
    throw Error(ErrorCode::InvalidSlip, "slip must lie in [0, 1), got " + sdp::to_key(spec_.slip));
  std::sort(spec_.columns.begin(), spec_.columns.end());
}

std::vector<Column> Cylinder::states(Time t) const {
  if (!spec_.valid_columns) return spec_.columns;
  std::vector<Column> valid = spec_.valid_columns(t);
  std::sort(valid.begin(), valid.end());
  return valid;
}

std::vector<Move> Cylinder::board_moves(const Column& x) const {
  std::vector<Move> moves;
  if (x != spec_.columns.front()) moves.push_back(Move::L);
  moves.push_back(Move::A);
  if (x != spec_.columns.back()) moves.push_back(Move::R);
  return moves;
}

Column Cylinder::destination(const Column& x, Move y) const {
  auto it = std::find(spec_.columns.begin(), spec_.columns.end(), x);
  if (it == spec_.columns.end()) throw Error(ErrorCode::InvalidState, "unknown column " + sdp::to_key(x));
  switch (y) {
    case Move::L:
      if (it == spec_.columns.begin()) break;
      return *(it - 1);
    case Move::A:
      return x;
    case Move::R:
      if (it + 1 == spec_.columns.end()) break;
      return *(it + 1);
  }
  throw Error(ErrorCode::InvalidState, "move " + to_key(y) + " leaves the board at " + sdp::to_key(x));
}

Container<Column> Cylinder::step(Time, const Column& x, const Move& y) const {
  const Column to = destination(x, y);
  switch (spec_.kind) {
    case Kind::Deterministic:
      return Container<Column>::single(to);
    case Kind::NonDeterministic:
      return Container<Column>::set(std::vector<Column>{to, x});
    case Kind::Stochastic:
      if (to == x) return Container<Column>::dist(SimpleProb<Column>::point(x));
      return Container<Column>::dist({{to, 1.0 - spec_.slip}, {x, spec_.slip}});
  }
  throw Error(ErrorCode::KindMismatch, "unknown kind");
}

std::vector<Move> Cylinder::controls(Time t, const Column& x) const {
  const std::vector<Column> next = states(t + 1);
  std::vector<Move> out;
  for (Move y : board_moves(x)) {
    const auto outcomes = step(t, x, y).support();
    if (std::all_of(outcomes.begin(), outcomes.end(),
                    [&](Column c) { return std::binary_search(next.begin(), next.end(), c); }))
      out.push_back(y);
  }
  return out;
}

double Cylinder::reward(Time, const Column& x, const Move&, const Column&) const {
  return spec_.source_rewards.at(x);
}

Cylinder cylinder_det(Measure measure) { return Cylinder(CylinderSpec{}, std::move(measure)); }

Cylinder cylinder_timedep(Measure measure) {
  CylinderSpec spec;
  spec.valid_columns = [](Time t) -> std::vector<Column> {
    if (t == 3) return {'e'};
    if (t == 6) return {'a', 'b', 'c'};
    return {'a', 'b', 'c', 'd', 'e'};
  };
  return Cylinder(std::move(spec), std::move(measure));
}

Cylinder cylinder_nondet(Measure measure) {
  CylinderSpec spec;
  spec.kind = Kind::NonDeterministic;
  return Cylinder(std::move(spec), std::move(measure));
}

Cylinder cylinder_stoch(double slip, Measure measure) {
  CylinderSpec spec;
  spec.kind = Kind::Stochastic;
  spec.slip = slip;
  return Cylinder(std::move(spec), std::move(measure));
}

}  // namespace sdp::examples
