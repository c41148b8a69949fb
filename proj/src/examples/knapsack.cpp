#include "sdp/examples/knapsack.hpp"

namespace sdp::examples {

std::string to_key(Pick p) { return p == Pick::Take ? "Take" : "Skip"; }

Knapsack::Knapsack(int capacity, std::vector<Item> items) : capacity_(capacity), items_(std::move(items)) {
  if (capacity_ < 0) throw Error(ErrorCode::InvalidState, "negative capacity");
  for (const Item& item : items_)
    if (item.weight < 1) throw Error(ErrorCode::InvalidState, "item weights must be at least 1");
}

std::vector<int> Knapsack::states(Time) const {
  std::vector<int> out(static_cast<std::size_t>(capacity_) + 1);
  for (int c = 0; c <= capacity_; ++c) out[static_cast<std::size_t>(c)] = c;
  return out;
}

std::vector<Pick> Knapsack::controls(Time t, const int& x) const {
  if (t < items_.size() && items_[t].weight <= x) return {Pick::Take, Pick::Skip};
  return {Pick::Skip};
}

Container<int> Knapsack::step(Time t, const int& x, const Pick& y) const {
  if (y == Pick::Take) {
    if (t >= items_.size() || items_[t].weight > x)
      throw Error(ErrorCode::InvalidState, "item " + std::to_string(t) + " does not fit");
    return Container<int>::single(x - items_[t].weight);
  }
  return Container<int>::single(x);
}

double Knapsack::reward(Time t, const int&, const Pick& y, const int&) const {
  return y == Pick::Take ? items_.at(t).value : 0.0;
}

Knapsack knapsack(int capacity, std::vector<Item> items) { return Knapsack(capacity, std::move(items)); }

Knapsack shipped_knapsack() { return knapsack(5, {{2, 3.0}, {3, 4.0}, {4, 5.0}}); }

}  // namespace sdp::examples
