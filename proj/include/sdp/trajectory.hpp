#pragma once

// The container of all state-control sequences a policy sequence can induce.

#include <sstream>
#include <string>
#include <vector>

#include "sdp/solver.hpp"

namespace sdp {

template <Keyed S, Keyed C>
struct StateCtrlSeq {
  struct Step {
    Time t;
    S x;
    C y;

    friend bool operator==(const Step&, const Step&) = default;
    friend auto operator<=>(const Step&, const Step&) = default;
  };

  std::vector<Step> steps;
  S final_state;

  Steps length() const noexcept { return steps.size(); }

  friend bool operator==(const StateCtrlSeq&, const StateCtrlSeq&) = default;
  friend auto operator<=>(const StateCtrlSeq&, const StateCtrlSeq&) = default;
};

namespace detail {

template <Keyed S, Keyed C>
Container<StateCtrlSeq<S, C>> trajectories_from(const Problem<S, C>& p, const PolicySeq<S, C>& ps, std::size_t k,
                                                const S& x) {
  using Seq = StateCtrlSeq<S, C>;
  if (k == ps.policies.size()) return ret(p.kind(), Seq{{}, x});
  const Policy<S, C>& policy = ps.policies[k];
  const Time t = policy.t;
  const C& y = policy.at(x);
  auto prepend = [&](const Seq& rest) {
    Seq out;
    out.steps.reserve(rest.steps.size() + 1);
    out.steps.push_back({t, x, y});
    out.steps.insert(out.steps.end(), rest.steps.begin(), rest.steps.end());
    out.final_state = rest.final_state;
    return out;
  };
  return fmap(prepend, sdp::bind(tag_members(p.step(t, x, y)),
                            [&](const Member<S>& m) { return trajectories_from(p, ps, k + 1, m.value); }));
}

}  // namespace detail

template <Keyed S, Keyed C>
Container<StateCtrlSeq<S, C>> state_ctrl_trj(const Problem<S, C>& p, const PolicySeq<S, C>& ps, Time t, Steps n,
                                             const S& x) {
  if (n == 0) return ret(p.kind(), StateCtrlSeq<S, C>{{}, x});
  if (ps.start_t != t || ps.length() != n)
    throw Error(ErrorCode::DomainMiss, "policy sequence does not start at t=" + std::to_string(t) +
                                           " with length " + std::to_string(n));
  return detail::trajectories_from(p, ps, 0, x);
}

/// Sum of rewards along one realized path.
template <Keyed S, Keyed C>
double trajectory_value(const Problem<S, C>& p, const StateCtrlSeq<S, C>& traj) {
  double total = 0.0;
  for (std::size_t i = 0; i < traj.steps.size(); ++i) {
    const auto& s = traj.steps[i];
    const S& next = i + 1 < traj.steps.size() ? traj.steps[i + 1].x : traj.final_state;
    total += p.reward(s.t, s.x, s.y, next);
  }
  return total;
}

/// Every consecutive pair is connected by the problem's step.
template <Keyed S, Keyed C>
bool connected(const Problem<S, C>& p, const StateCtrlSeq<S, C>& traj) {
  for (std::size_t i = 0; i < traj.steps.size(); ++i) {
    const auto& s = traj.steps[i];
    const S& next = i + 1 < traj.steps.size() ? traj.steps[i + 1].x : traj.final_state;
    if (!contains(next, p.step(s.t, s.x, s.y))) return false;
    if (i + 1 < traj.steps.size() && traj.steps[i + 1].t != s.t + 1) return false;
  }
  return true;
}

/// `x0 -y0-> x1 -y1-> ... xn`
template <Keyed S, Keyed C>
std::string path_text(const StateCtrlSeq<S, C>& traj) {
  std::string out;
  for (const auto& s : traj.steps) out += to_key(s.x) + " -" + to_key(s.y) + "-> ";
  return out + to_key(traj.final_state);
}

/// One line per trajectory, canonical order: `prob|path : value` for
/// stochastic containers, `path : value` otherwise.
template <Keyed S, Keyed C>
std::string to_text(const Problem<S, C>& p, const Container<StateCtrlSeq<S, C>>& trajs) {
  std::ostringstream out;
  for (const auto& [traj, prob] : trajs.weighted()) {
    if (trajs.kind() == Kind::Stochastic) out << to_key(prob) << "|";
    out << path_text(traj) << " : " << to_key(trajectory_value(p, traj)) << "\n";
  }
  return out.str();
}

}  // namespace sdp
