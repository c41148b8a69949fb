#pragma once

// Problems described by a flat sectioned text file:
//
//   [kind]      deterministic | nondeterministic | stochastic
//   [layers]    <t> = <state> <state> ...
//   [controls]  <t> <state> = <ctrl> <ctrl> ...
//   [step]      <t> <state> <ctrl> = <next> ...        (stochastic: <next>:<prob> ...)
//   [reward]    <t> <state> <ctrl> <next> = <r>        (one transition)
//               <t> <state> = <r>                      (every transition out of state)
//   [measure]   expected | worst | best
//
// Lines starting with '#' are comments. Missing rewards are 0; layers and
// controls are sorted on load. Stochastic rows are kept as written so that
// validation can report masses that do not sum to 1.

#include <istream>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "sdp/problem.hpp"

namespace sdp::examples {

class TabularProblem final : public Problem<std::string, std::string> {
 public:
  using Key2 = std::pair<Time, std::string>;
  using Key3 = std::tuple<Time, std::string, std::string>;
  using Key4 = std::tuple<Time, std::string, std::string, std::string>;

  Kind kind() const override { return kind_; }
  std::vector<std::string> states(Time t) const override;
  std::vector<std::string> controls(Time t, const std::string& x) const override;
  Container<std::string> step(Time t, const std::string& x, const std::string& y) const override;
  double reward(Time t, const std::string& x, const std::string& y, const std::string& next) const override;
  const Measure& measure() const override { return measure_; }
  std::optional<Time> horizon_hint() const override { return last_layer_; }

 private:
  friend TabularProblem parse_problem(std::istream& in);

  Kind kind_ = Kind::Deterministic;
  Measure measure_ = Measure::expected();
  std::map<Time, std::vector<std::string>> layers_;
  std::map<Key2, std::vector<std::string>> controls_;
  std::map<Key3, Container<std::string>> steps_;
  std::map<Key4, double> rewards_;
  std::map<Key2, double> source_rewards_;
  Time last_layer_ = 0;
};

/// Throws ParseError with the offending line number.
TabularProblem parse_problem(std::istream& in);
TabularProblem load_problem_file(const std::string& path);

}  // namespace sdp::examples
