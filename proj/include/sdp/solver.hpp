#pragma once

// Policies, the measured value of a policy sequence, optimal extension and
// backwards induction.

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <utility>
#include <vector>

#include "sdp/model.hpp"

namespace sdp {

/// Control table for one decision step. `steps_remaining` counts this step;
/// the domain is exactly the states of layer t that are reachable and viable
/// for `steps_remaining` steps.
template <Keyed S, Keyed C>
struct Policy {
  Time t = 0;
  Steps steps_remaining = 0;
  std::map<S, C> table;

  const C& at(const S& x) const {
    auto it = table.find(x);
    if (it == table.end())
      throw Error(ErrorCode::DomainMiss, to_key(x) + " is outside the policy domain at t=" + std::to_string(t));
    return it->second;
  }

  friend bool operator==(const Policy&, const Policy&) = default;
};

/// Policies for times start_t, start_t+1, ... with steps_remaining length, length-1, ..., 1.
template <Keyed S, Keyed C>
struct PolicySeq {
  Time start_t = 0;
  std::vector<Policy<S, C>> policies;

  Steps length() const noexcept { return policies.size(); }

  /// The sequence without its first policy.
  PolicySeq tail() const {
    if (policies.empty()) throw Error(ErrorCode::DomainMiss, "tail of an empty policy sequence");
    return {start_t + 1, std::vector<Policy<S, C>>(policies.begin() + 1, policies.end())};
  }

  PolicySeq prepend(Policy<S, C> p) const {
    PolicySeq out{p.t, {}};
    out.policies.reserve(policies.size() + 1);
    out.policies.push_back(std::move(p));
    out.policies.insert(out.policies.end(), policies.begin(), policies.end());
    return out;
  }

  /// Checks the time/step chaining of the policies.
  bool chained() const {
    for (std::size_t i = 0; i < policies.size(); ++i)
      if (policies[i].t != start_t + i || policies[i].steps_remaining != policies.size() - i) return false;
    return true;
  }

  friend bool operator==(const PolicySeq&, const PolicySeq&) = default;
};

/// Optimal values at (t, n) over the policy domain; (t, 0) is identically 0.
template <Keyed S>
struct ValueLayer {
  Time t = 0;
  Steps n = 0;
  std::map<S, double> values;

  double at(const S& x) const {
    auto it = values.find(x);
    if (it == values.end())
      throw Error(ErrorCode::DomainMiss, to_key(x) + " has no value at t=" + std::to_string(t) +
                                             " n=" + std::to_string(n));
    return it->second;
  }

  friend bool operator==(const ValueLayer&, const ValueLayer&) = default;
};

/// Largest value and the first control attaining it, in enumeration order.
template <Keyed C>
std::pair<C, double> max_argmax(std::span<const std::pair<C, double>> choices) {
  if (choices.empty()) throw Error(ErrorCode::EmptyChoice, "max over an empty set of controls");
  std::size_t best = 0;
  for (std::size_t i = 1; i < choices.size(); ++i)
    if (choices[i].second > choices[best].second) best = i;
  return choices[best];
}

template <Keyed C>
double max_value(std::span<const std::pair<C, double>> choices) {
  return max_argmax(choices).second;
}

template <Keyed C>
C argmax(std::span<const std::pair<C, double>> choices) {
  return max_argmax(choices).first;
}

namespace detail {

template <Keyed S, Keyed C>
double mval_from(const Problem<S, C>& p, const PolicySeq<S, C>& ps, std::size_t k, const S& x) {
  if (k == ps.policies.size()) return 0.0;
  const Policy<S, C>& policy = ps.policies[k];
  const Time t = policy.t;
  const C& y = policy.at(x);
  const Container<S> next = p.step(t, x, y);
  return p.meas(fmap([&](const Member<S>& m) { return p.reward(t, x, y, m.value) + mval_from(p, ps, k + 1, m.value); },
                     tag_members(next)));
}

}  // namespace detail

/// Measured value of following ps from x at time t for n steps.
template <Keyed S, Keyed C>
double mval(const Problem<S, C>& p, const PolicySeq<S, C>& ps, Time t, Steps n, const S& x) {
  if (n == 0) return 0.0;
  if (ps.start_t != t || ps.length() != n)
    throw Error(ErrorCode::DomainMiss, "policy sequence does not start at t=" + std::to_string(t) +
                                           " with length " + std::to_string(n));
  return detail::mval_from(p, ps, 0, x);
}

/// Value of one transition given the values of its successors:
/// meas(fmap(x' -> reward(t, x, y, x') + next(x'), tag_members(step(t, x, y)))).
template <Keyed S, Keyed C, class NextValue>
double transition_value(const Problem<S, C>& p, Time t, const S& x, const C& y, const Container<S>& next,
                        NextValue&& next_value) {
  return p.meas(fmap([&](const Member<S>& m) { return p.reward(t, x, y, m.value) + next_value(m.value); },
                     tag_members(next)));
}

/// Optimal extension of a policy sequence whose values at (t+1, n) are
/// `value_next`: picks, for every state reachable and viable for n+1 steps at
/// t, the feasible control maximizing the measured one-step value.
template <Keyed S, Keyed C>
std::pair<Policy<S, C>, ValueLayer<S>> opt_ext(const Model<S, C>& model, const ValueLayer<S>& value_next,
                                                Exec exec) {
  if (value_next.t == 0) throw Error(ErrorCode::TableMiss, "no layer before t=0");
  const Time t = value_next.t - 1;
  const Steps n = value_next.n;
  const auto& p = model.problem();
  const auto domain = model.domain(t, n + 1);

  std::vector<std::optional<std::pair<C, double>>> chosen(domain.size());
  for_each_index(exec, domain.size(), [&](std::size_t d) {
    const std::size_t i = domain[d];
    const S& x = model.state(t, i);
    const auto& trs = model.graph().transitions(t, i);
    std::vector<std::pair<C, double>> candidates;
    for (std::size_t k : model.good_transitions(t, n, i))
      candidates.emplace_back(trs[k].ctrl, transition_value(p, t, x, trs[k].ctrl, trs[k].next,
                                                            [&](const S& x2) { return value_next.at(x2); }));
    chosen[d] = max_argmax<C>(candidates);
  });

  Policy<S, C> policy{t, n + 1, {}};
  ValueLayer<S> values{t, n + 1, {}};
  for (std::size_t d = 0; d < domain.size(); ++d) {
    const S& x = model.state(t, domain[d]);
    policy.table.emplace_hint(policy.table.end(), x, chosen[d]->first);
    values.values.emplace_hint(values.values.end(), x, chosen[d]->second);
  }
  return {std::move(policy), std::move(values)};
}

template <Keyed S, Keyed C>
std::pair<Policy<S, C>, ValueLayer<S>> opt_ext(const Model<S, C>& model, const ValueLayer<S>& value_next) {
  return opt_ext(model, value_next, model.exec());
}

/// Values of ps at (t, n) over the policy domain, computed with mval.
template <Keyed S, Keyed C>
ValueLayer<S> values_of(const Model<S, C>& model, const PolicySeq<S, C>& ps) {
  ValueLayer<S> out{ps.start_t, ps.length(), {}};
  for (std::size_t i : model.domain(ps.start_t, ps.length())) {
    const S& x = model.state(ps.start_t, i);
    out.values.emplace_hint(out.values.end(), x, mval(model.problem(), ps, ps.start_t, ps.length(), x));
  }
  return out;
}

/// Zero values at (t, 0) over the reachable states of layer t.
template <Keyed S, Keyed C>
ValueLayer<S> zero_values(const Model<S, C>& model, Time t) {
  ValueLayer<S> out{t, 0, {}};
  for (std::size_t i : model.domain(t, 0)) out.values.emplace_hint(out.values.end(), model.state(t, i), 0.0);
  return out;
}

enum class Memory {
  Full,       ///< keep every intermediate value layer
  Streaming,  ///< keep only the value layer at the start time
};

struct SolveOptions {
  Exec exec = Exec::Serial;
  Memory memory = Memory::Full;
  bool validate = true;
};

template <Keyed S, Keyed C>
struct Solution {
  PolicySeq<S, C> policies;
  /// values[i] holds (t + i, n - i); with Memory::Streaming only values[0].
  std::vector<ValueLayer<S>> values;

  const ValueLayer<S>& start_values() const { return values.front(); }
};

namespace detail {

template <Keyed S, Keyed C>
void require_certified(const Problem<S, C>& p) {
  if (!p.measure().certified())
    throw Error(ErrorCode::UncheckedMeasure, "measure '" + p.measure().name() +
                                                 "' has not passed the monotonicity check");
  if (!p.measure().supports(p.kind()))
    throw Error(ErrorCode::KindMismatch, "measure '" + p.measure().name() + "' does not support " +
                                             std::string(to_string(p.kind())) + " problems");
}

}  // namespace detail

/// Backwards induction on a prebuilt model: n opt_ext sweeps from t+n-1 down to t.
template <Keyed S, Keyed C>
Solution<S, C> backwards_induction(const Model<S, C>& model, Time t, Steps n, const SolveOptions& options = {}) {
  const auto& p = model.problem();
  if (options.validate) {
    const ValidationReport report = validate(p, t + n);
    if (!report.ok()) throw Error(ErrorCode::IllPosed, "\n" + report.to_text());
  }
  detail::require_certified(p);
  if (!model.covers(t, n))
    throw Error(ErrorCode::TableMiss, "model does not cover t=" + std::to_string(t) + " n=" + std::to_string(n));

  Solution<S, C> sol;
  std::vector<ValueLayer<S>> stack{zero_values(model, t + n)};
  for (Steps k = n; k-- > 0;) {
    auto [policy, values] = opt_ext(model, stack.back(), options.exec);
    sol.policies.policies.push_back(std::move(policy));
    if (options.memory == Memory::Streaming) stack.clear();
    stack.push_back(std::move(values));
  }
  sol.policies.start_t = t;
  std::reverse(sol.policies.policies.begin(), sol.policies.policies.end());
  std::reverse(stack.begin(), stack.end());
  sol.values = std::move(stack);
  return sol;
}

template <Keyed S, Keyed C>
Solution<S, C> backwards_induction(const Problem<S, C>& p, Time t, Steps n, const SolveOptions& options = {}) {
  return backwards_induction(Model<S, C>::for_horizon(p, t, n, options.exec), t, n, options);
}

/// Lifts a time-parametrized rule (t, x) -> control to a policy sequence on
/// the policy domains. Throws InvalidState if the rule picks an infeasible control.
template <Keyed S, Keyed C, class Rule>
PolicySeq<S, C> policy_seq_from_rule(const Model<S, C>& model, Time t, Steps n, Rule&& rule) {
  PolicySeq<S, C> ps{t, {}};
  for (Steps k = 0; k < n; ++k) {
    const Time tk = t + k;
    const Steps remaining = n - k;
    Policy<S, C> policy{tk, remaining, {}};
    for (std::size_t i : model.domain(tk, remaining)) {
      const S& x = model.state(tk, i);
      C y = rule(tk, x);
      bool ok = false;
      const auto& trs = model.graph().transitions(tk, i);
      for (std::size_t g : model.good_transitions(tk, remaining - 1, i)) ok = ok || trs[g].ctrl == y;
      if (!ok)
        throw Error(ErrorCode::InvalidState, "rule picks infeasible control " + to_key(y) + " at t=" +
                                                 std::to_string(tk) + " x=" + to_key(x));
      policy.table.emplace(x, std::move(y));
    }
    ps.policies.push_back(std::move(policy));
  }
  return ps;
}

/// One block per time: `t=<t> steps=<k>` followed by `x -> y : value` lines.
template <Keyed S, Keyed C>
std::string to_text(const Solution<S, C>& sol) {
  std::ostringstream out;
  for (std::size_t k = 0; k < sol.policies.policies.size(); ++k) {
    const auto& policy = sol.policies.policies[k];
    out << "t=" << policy.t << " steps=" << policy.steps_remaining << "\n";
    const ValueLayer<S>* values = k < sol.values.size() ? &sol.values[k] : nullptr;
    for (const auto& [x, y] : policy.table) {
      out << to_key(x) << " -> " << to_key(y);
      if (values) out << " : " << to_key(values->at(x));
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace sdp
