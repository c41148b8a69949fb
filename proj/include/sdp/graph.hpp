#pragma once

// Layered transition graph: state layers 0..last+1 and, for every state of
// layers 0..last, its controls with the step container and the positions of
// all successor states in the next layer. Built once and shared by the
// viability, reachability and solver kernels.

#include <algorithm>
#include <optional>
#include <vector>

#include "sdp/parallel.hpp"
#include "sdp/problem.hpp"

namespace sdp {

template <Keyed S>
class StateLayer {
 public:
  StateLayer() = default;
  explicit StateLayer(std::vector<S> states) : states_(std::move(states)) {}

  const std::vector<S>& states() const noexcept { return states_; }
  std::size_t size() const noexcept { return states_.size(); }

  std::optional<std::size_t> index_of(const S& x) const {
    auto it = std::lower_bound(states_.begin(), states_.end(), x);
    if (it == states_.end() || !(*it == x)) return std::nullopt;
    return static_cast<std::size_t>(it - states_.begin());
  }

  bool contains(const S& x) const { return index_of(x).has_value(); }

 private:
  std::vector<S> states_;
};

template <Keyed S, Keyed C>
struct Transition {
  C ctrl;
  Container<S> next;
  /// Position in the next layer of each canonical support entry of `next`.
  std::vector<std::size_t> next_index;
  std::vector<double> next_mass;
};

template <Keyed S, Keyed C>
class TransitionGraph {
 public:
  /// Enumerates layers 0..last+1 and all transitions out of layers 0..last.
  /// Throws InvalidState if a transition leaves its next layer and IllPosed
  /// if it is empty; run `validate` first for a full report.
  static TransitionGraph build(const Problem<S, C>& p, Time last, Exec exec = Exec::Serial) {
    TransitionGraph g;
    g.layers_.reserve(last + 2);
    for (Time t = 0; t <= last + 1; ++t) g.layers_.emplace_back(p.states(t));
    g.edges_.resize(last + 1);
    for (Time t = 0; t <= last; ++t) {
      const auto& layer = g.layers_[t];
      const auto& next_layer = g.layers_[t + 1];
      auto& out = g.edges_[t];
      out.resize(layer.size());
      for_each_index(exec, layer.size(), [&](std::size_t i) {
        const S& x = layer.states()[i];
        for (C& y : p.controls(t, x)) {
          Container<S> next = canonicalize(p.step(t, x, y));
          if (next.empty())
            throw Error(ErrorCode::IllPosed, "empty step at t=" + std::to_string(t) + " x=" + to_key(x) +
                                                 " y=" + to_key(y));
          Transition<S, C> tr{std::move(y), std::move(next), {}, {}};
          for (const auto& [x2, mass] : tr.next.weighted()) {
            auto j = next_layer.index_of(x2);
            if (!j)
              throw Error(ErrorCode::InvalidState, "next state " + to_key(x2) + " not in layer " +
                                                       std::to_string(t + 1));
            tr.next_index.push_back(*j);
            tr.next_mass.push_back(mass);
          }
          out[i].push_back(std::move(tr));
        }
      });
    }
    return g;
  }

  /// Transitions out of layers 0..last().
  Time last() const noexcept { return edges_.empty() ? 0 : edges_.size() - 1; }
  bool covers_step(Time t) const noexcept { return t < edges_.size(); }

  const StateLayer<S>& layer(Time t) const {
    if (t >= layers_.size()) throw Error(ErrorCode::TableMiss, "no layer " + std::to_string(t));
    return layers_[t];
  }

  const std::vector<Transition<S, C>>& transitions(Time t, std::size_t i) const {
    if (!covers_step(t)) throw Error(ErrorCode::TableMiss, "no transitions out of layer " + std::to_string(t));
    return edges_[t][i];
  }

  std::size_t index_of(Time t, const S& x) const {
    auto i = layer(t).index_of(x);
    if (!i) throw Error(ErrorCode::InvalidState, to_key(x) + " is not in layer " + std::to_string(t));
    return *i;
  }

  const Transition<S, C>& transition(Time t, std::size_t i, const C& y) const {
    for (const auto& tr : transitions(t, i))
      if (tr.ctrl == y) return tr;
    throw Error(ErrorCode::InvalidState, to_key(y) + " is not a control of " + to_key(layer(t).states()[i]) +
                                             " at t=" + std::to_string(t));
  }

 private:
  std::vector<StateLayer<S>> layers_;
  std::vector<std::vector<std::vector<Transition<S, C>>>> edges_;
};

}  // namespace sdp
