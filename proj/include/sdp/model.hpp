#pragma once

#include <memory>
#include <vector>

#include "sdp/viability.hpp"

namespace sdp {

/// A problem together with its transition graph and viability/reachability
/// tables, covering transitions out of layers 0..last_step.
template <Keyed S, Keyed C>
class Model {
 public:
  using State = S;
  using Ctrl = C;

  static Model build(const Problem<S, C>& p, Time last_step, Exec exec = Exec::Serial) {
    auto graph = std::make_shared<const TransitionGraph<S, C>>(TransitionGraph<S, C>::build(p, last_step, exec));
    return Model(p, graph, ViabilityTable<S, C>::build(graph, 0, exec), ReachabilityTable<S, C>::build(graph), exec);
  }

  /// Smallest model that supports solving n steps from t.
  static Model for_horizon(const Problem<S, C>& p, Time t, Steps n, Exec exec = Exec::Serial) {
    return build(p, t + (n == 0 ? 0 : n - 1), exec);
  }

  const Problem<S, C>& problem() const noexcept { return *problem_; }
  const TransitionGraph<S, C>& graph() const noexcept { return *graph_; }
  const ViabilityTable<S, C>& viability() const noexcept { return viability_; }
  const ReachabilityTable<S, C>& reachability() const noexcept { return reachability_; }
  Exec exec() const noexcept { return exec_; }

  /// Whether n steps from t stay within the tables.
  bool covers(Time t, Steps n) const noexcept { return viability_.covers(t, n) && reachability_.covers(t); }

  bool in_domain(Time t, Steps k, std::size_t i) const {
    return reachability_.reachable_at(t, i) && viability_.viable_at(k, t, i);
  }

  /// Positions in layer t of the states that are reachable and viable for k steps.
  std::vector<std::size_t> domain(Time t, Steps k) const {
    std::vector<std::size_t> out;
    const auto& reach = reachability_.flags(t);
    const auto& viab = viability_.flags(t, k);
    for (std::size_t i = 0; i < reach.size(); ++i)
      if (reach[i] && viab[i]) out.push_back(i);
    return out;
  }

  /// Positions of the transitions of (t, i) that are feasible for n steps.
  std::vector<std::size_t> good_transitions(Time t, Steps n, std::size_t i) const {
    std::vector<std::size_t> out;
    const auto& next = viability_.flags(t + 1, n);
    const auto& trs = graph_->transitions(t, i);
    for (std::size_t k = 0; k < trs.size(); ++k)
      if (ViabilityTable<S, C>::feasible_for(trs[k], next)) out.push_back(k);
    return out;
  }

  const S& state(Time t, std::size_t i) const { return graph_->layer(t).states()[i]; }

 private:
  Model(const Problem<S, C>& p, std::shared_ptr<const TransitionGraph<S, C>> graph, ViabilityTable<S, C> vt,
        ReachabilityTable<S, C> rt, Exec exec)
      : problem_(&p), graph_(std::move(graph)), viability_(std::move(vt)), reachability_(std::move(rt)), exec_(exec) {}

  const Problem<S, C>* problem_;
  std::shared_ptr<const TransitionGraph<S, C>> graph_;
  ViabilityTable<S, C> viability_;
  ReachabilityTable<S, C> reachability_;
  Exec exec_;
};

}  // namespace sdp
