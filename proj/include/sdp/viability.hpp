#pragma once

// Viability and reachability as whole-layer tables.
//
//   viable(0, t, x)   = true
//   viable(n+1, t, x) = some control y of x is feasible for n, i.e. every
//                       state in step(t, x, y) is viable(n, t+1, .)
//   reachable(0, x)   = true
//   reachable(t+1, x') iff x' is in step(t, x, y) for a reachable x and y.

#include <memory>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "sdp/graph.hpp"

namespace sdp {

template <Keyed S, Keyed C>
class ViabilityTable {
 public:
  using Graph = TransitionGraph<S, C>;

  /// Covers every (t, n) with first <= t and t + n <= graph.last() + 1.
  static ViabilityTable build(std::shared_ptr<const Graph> graph, Time first = 0, Exec exec = Exec::Serial) {
    ViabilityTable vt;
    vt.graph_ = std::move(graph);
    vt.first_ = first;
    const Time end = vt.graph_->last() + 1;  // last layer index
    if (first > end) throw Error(ErrorCode::TableMiss, "first layer beyond graph");
    vt.flags_.resize(end - first + 1);
    for (Time t = end + 1; t-- > first;) {
      auto& by_n = vt.flags_[t - first];
      const std::size_t size = vt.graph_->layer(t).size();
      by_n.emplace_back(size, char{1});
      for (Steps n = 0; t + n + 1 <= end; ++n) {
        const auto& next = vt.flags_[t + 1 - first][n];
        std::vector<char> layer(size, char{0});
        for_each_index(exec, size, [&](std::size_t i) {
          for (const auto& tr : vt.graph_->transitions(t, i)) {
            if (feasible_for(tr, next)) {
              layer[i] = 1;
              break;
            }
          }
        });
        by_n.push_back(std::move(layer));
      }
    }
    return vt;
  }

  const Graph& graph() const noexcept { return *graph_; }
  Time first() const noexcept { return first_; }

  bool covers(Time t, Steps n) const noexcept {
    return t >= first_ && t - first_ < flags_.size() && n < flags_[t - first_].size();
  }

  const std::vector<char>& flags(Time t, Steps n) const {
    if (!covers(t, n))
      throw Error(ErrorCode::TableMiss, "viability table lacks t=" + std::to_string(t) + " n=" + std::to_string(n));
    return flags_[t - first_][n];
  }

  bool viable_at(Steps n, Time t, std::size_t i) const { return flags(t, n)[i] != 0; }

  bool viable(Steps n, Time t, const S& x) const {
    const auto& f = flags(t, n);
    return f[graph_->index_of(t, x)] != 0;
  }

  /// Whether `tr` (out of layer t) is feasible for n steps, given the flags of
  /// layer (t+1, n).
  static bool feasible_for(const Transition<S, C>& tr, const std::vector<char>& next) {
    for (std::size_t j : tr.next_index)
      if (!next[j]) return false;
    return true;
  }

  /// Text matrix: one row per state key of layer t, one column per n.
  std::string to_text(Time t) const {
    std::ostringstream out;
    out << "viability t=" << t << "\n";
    const auto& layer = graph_->layer(t);
    const Steps max_n = flags_.at(t - first_).size();
    for (std::size_t i = 0; i < layer.size(); ++i) {
      out << to_key(layer.states()[i]);
      for (Steps n = 0; n < max_n; ++n) out << ' ' << (flags_[t - first_][n][i] ? '1' : '0');
      out << "\n";
    }
    return out.str();
  }

 private:
  std::shared_ptr<const Graph> graph_;
  Time first_ = 0;
  std::vector<std::vector<std::vector<char>>> flags_;  // [t - first][n][state]
};

template <Keyed S, Keyed C>
struct ReachWitness {
  S prev;
  C ctrl;
};

template <Keyed S, Keyed C>
class ReachabilityTable {
 public:
  using Graph = TransitionGraph<S, C>;

  /// Forward closure over layers 0..graph.last()+1. Each reachable state at
  /// t+1 records the first (state, control) pair in canonical order that
  /// reaches it.
  static ReachabilityTable build(std::shared_ptr<const Graph> graph) {
    ReachabilityTable rt;
    rt.graph_ = std::move(graph);
    const Time end = rt.graph_->last() + 1;
    rt.flags_.resize(end + 1);
    rt.witness_.resize(end + 1);
    rt.flags_[0].assign(rt.graph_->layer(0).size(), char{1});
    rt.witness_[0].assign(rt.graph_->layer(0).size(), std::nullopt);
    for (Time t = 0; t < end; ++t) {
      const std::size_t next_size = rt.graph_->layer(t + 1).size();
      rt.flags_[t + 1].assign(next_size, char{0});
      rt.witness_[t + 1].assign(next_size, std::nullopt);
      for (std::size_t i = 0; i < rt.flags_[t].size(); ++i) {
        if (!rt.flags_[t][i]) continue;
        const auto& trs = rt.graph_->transitions(t, i);
        for (std::size_t k = 0; k < trs.size(); ++k) {
          for (std::size_t j : trs[k].next_index) {
            if (rt.flags_[t + 1][j]) continue;
            rt.flags_[t + 1][j] = 1;
            rt.witness_[t + 1][j] = std::pair{i, k};
          }
        }
      }
    }
    return rt;
  }

  const Graph& graph() const noexcept { return *graph_; }

  bool covers(Time t) const noexcept { return t < flags_.size(); }

  const std::vector<char>& flags(Time t) const {
    if (!covers(t)) throw Error(ErrorCode::TableMiss, "reachability table lacks t=" + std::to_string(t));
    return flags_[t];
  }

  bool reachable_at(Time t, std::size_t i) const { return flags(t)[i] != 0; }
  bool reachable(Time t, const S& x) const { return flags(t)[graph_->index_of(t, x)] != 0; }

  /// A predecessor (state at t-1, control) reaching x at t; none at t = 0 or
  /// for unreachable x.
  std::optional<ReachWitness<S, C>> witness(Time t, const S& x) const {
    flags(t);
    const auto& w = witness_[t][graph_->index_of(t, x)];
    if (!w) return std::nullopt;
    const auto& [i, k] = *w;
    return ReachWitness<S, C>{graph_->layer(t - 1).states()[i], graph_->transitions(t - 1, i)[k].ctrl};
  }

  /// Text matrix: one row per state key, one column per t in [0, last].
  std::string to_text(Time last) const {
    std::ostringstream out;
    out << "reachability t=0.." << last << "\n";
    std::vector<S> keys;
    for (Time t = 0; t <= last; ++t)
      for (const S& x : graph_->layer(t).states()) keys.push_back(x);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    for (const S& x : keys) {
      out << to_key(x);
      for (Time t = 0; t <= last; ++t) {
        auto i = graph_->layer(t).index_of(x);
        out << ' ' << (!i ? '.' : (flags(t)[*i] ? '1' : '0'));
      }
      out << "\n";
    }
    return out.str();
  }

 private:
  std::shared_ptr<const Graph> graph_;
  std::vector<std::vector<char>> flags_;
  std::vector<std::vector<std::optional<std::pair<std::size_t, std::size_t>>>> witness_;
};

/// A control together with the number of steps it is known to be feasible for.
template <Keyed C>
struct GoodCtrl {
  C ctrl;
  Steps feasibility_steps;

  friend bool operator==(const GoodCtrl&, const GoodCtrl&) = default;
};

namespace detail {

template <Keyed S, Keyed C>
void require_state(const Problem<S, C>& p, Time t, const S& x) {
  const auto layer = p.states(t);
  if (!std::binary_search(layer.begin(), layer.end(), x))
    throw Error(ErrorCode::InvalidState, to_key(x) + " is not in layer " + std::to_string(t));
}

}  // namespace detail

/// One entry per control of x, paired with its step container.
template <Keyed S, Keyed C>
std::vector<std::pair<C, Container<S>>> succs(const Problem<S, C>& p, Time t, const S& x) {
  detail::require_state(p, t, x);
  std::vector<std::pair<C, Container<S>>> out;
  for (const C& y : p.controls(t, x)) out.emplace_back(y, p.step(t, x, y));
  return out;
}

/// all_true(fmap(viable(n, t+1, .), step(t, x, y))).
template <Keyed S, Keyed C>
bool feasible(const Problem<S, C>& p, const ViabilityTable<S, C>& vt, Steps n, Time t, const S& x, const C& y) {
  if (!vt.covers(t + 1, n))
    throw Error(ErrorCode::TableMiss, "viability table lacks t=" + std::to_string(t + 1) + " n=" + std::to_string(n));
  detail::require_state(p, t, x);
  const Container<S> next = p.step(t, x, y);
  return all_true(fmap([&](const S& x2) { return vt.graph().layer(t + 1).contains(x2) && vt.viable(n, t + 1, x2); },
                       next));
}

template <Keyed S, Keyed C>
std::vector<GoodCtrl<C>> good_ctrls(const Problem<S, C>& p, const ViabilityTable<S, C>& vt, Time t, Steps n,
                                    const S& x) {
  detail::require_state(p, t, x);
  std::vector<GoodCtrl<C>> out;
  for (const C& y : p.controls(t, x))
    if (feasible(p, vt, n, t, x, y)) out.push_back({y, n});
  return out;
}

/// Builds a table covering layers t..t+n and queries it.
template <Keyed S, Keyed C>
bool viable(const Problem<S, C>& p, Steps n, Time t, const S& x) {
  detail::require_state(p, t, x);
  if (n == 0) return true;
  auto graph = std::make_shared<const TransitionGraph<S, C>>(TransitionGraph<S, C>::build(p, t + n - 1));
  return ViabilityTable<S, C>::build(graph, t).viable(n, t, x);
}

template <Keyed S, Keyed C>
bool reachable(const Problem<S, C>& p, Time t, const S& x) {
  detail::require_state(p, t, x);
  if (t == 0) return true;
  auto graph = std::make_shared<const TransitionGraph<S, C>>(TransitionGraph<S, C>::build(p, t - 1));
  return ReachabilityTable<S, C>::build(graph).reachable(t, x);
}

}  // namespace sdp
