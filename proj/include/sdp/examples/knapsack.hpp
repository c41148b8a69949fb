#pragma once

// 0/1 knapsack as a sequential decision problem: step t decides item t, the
// state is the remaining capacity. Once the items are exhausted only Skip
// remains, so the problem is well-posed for any horizon.

#include <string>
#include <vector>

#include "sdp/problem.hpp"

namespace sdp::examples {

enum class Pick { Take, Skip };

std::string to_key(Pick p);

struct Item {
  int weight;
  double value;
};

class Knapsack final : public Problem<int, Pick> {
 public:
  Knapsack(int capacity, std::vector<Item> items);

  Kind kind() const override { return Kind::Deterministic; }
  /// Every remaining capacity 0..capacity.
  std::vector<int> states(Time t) const override;
  std::vector<Pick> controls(Time t, const int& x) const override;
  Container<int> step(Time t, const int& x, const Pick& y) const override;
  double reward(Time t, const int& x, const Pick& y, const int& next) const override;
  const Measure& measure() const override { return measure_; }
  std::optional<Time> horizon_hint() const override { return items_.size(); }

  int capacity() const noexcept { return capacity_; }
  const std::vector<Item>& items() const noexcept { return items_; }

 private:
  int capacity_;
  std::vector<Item> items_;
  Measure measure_ = Measure::expected();
};

Knapsack knapsack(int capacity, std::vector<Item> items);

/// Capacity 5, items (weight, value) = (2, 3), (3, 4), (4, 5).
Knapsack shipped_knapsack();

}  // namespace sdp::examples
