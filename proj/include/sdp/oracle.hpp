#pragma once

// Brute-force ground truth for small instances: enumeration of control
// sequences (deterministic problems) and of policy sequences, and
// executable optimality and Bellman checks built on them. Nothing here uses
// the solver's value tables; candidate values come from `mval` only.

#include <atomic>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sdp/solver.hpp"

namespace sdp {

inline constexpr double kOptimalityTolerance = 1e-9;
inline constexpr std::uint64_t kDefaultCap = 1'000'000;

template <Keyed S, Keyed C>
struct CtrlSeq {
  Time start_t = 0;
  S start_x;
  std::vector<C> ctrls;

  friend bool operator==(const CtrlSeq&, const CtrlSeq&) = default;
};

/// All control sequences of length n from x in which every control is
/// feasible for the steps that remain after it.
template <Keyed S, Keyed C>
std::vector<CtrlSeq<S, C>> enum_ctrl_seqs(const Model<S, C>& model, Time t, Steps n, const S& x) {
  if (model.problem().kind() != Kind::Deterministic)
    throw Error(ErrorCode::NotDeterministic, "control sequences are only meaningful for deterministic problems");
  const std::size_t i0 = model.graph().index_of(t, x);
  if (!model.viability().viable_at(n, t, i0))
    throw Error(ErrorCode::NotViable, to_key(x) + " is not viable for " + std::to_string(n) + " steps at t=" +
                                          std::to_string(t));
  std::vector<CtrlSeq<S, C>> out;
  std::vector<C> prefix;
  auto extend = [&](auto&& self, Time tk, std::size_t i, Steps remaining) -> void {
    if (remaining == 0) {
      out.push_back({t, x, prefix});
      return;
    }
    const auto& trs = model.graph().transitions(tk, i);
    for (std::size_t k : model.good_transitions(tk, remaining - 1, i)) {
      prefix.push_back(trs[k].ctrl);
      self(self, tk + 1, trs[k].next_index.front(), remaining - 1);
      prefix.pop_back();
    }
  };
  extend(extend, t, i0, n);
  return out;
}

/// Sum of rewards along the chain induced by a control sequence.
template <Keyed S, Keyed C>
double seq_value(const Problem<S, C>& p, const CtrlSeq<S, C>& cs) {
  if (p.kind() != Kind::Deterministic)
    throw Error(ErrorCode::NotDeterministic, "control sequences are only meaningful for deterministic problems");
  double total = 0.0;
  S x = cs.start_x;
  Time t = cs.start_t;
  for (const C& y : cs.ctrls) {
    S next = p.step(t, x, y).as_single();
    total += p.reward(t, x, y, next);
    x = std::move(next);
    ++t;
  }
  return total;
}

struct CheckReport {
  bool pass = true;
  Time t = 0;
  std::string x = "-";
  double gap = 0.0;
  std::uint64_t evaluated = 0;

  /// `PASS` or `FAIL t=<t> x=<key> gap=<g>`.
  std::string to_text() const {
    if (pass) return "PASS";
    return "FAIL t=" + std::to_string(t) + " x=" + x + " gap=" + to_key(gap);
  }
};

/// Domain-restricted policy sequences from (t, n) as a mixed-radix space:
/// one digit per (step, domain state), radix = number of good controls.
template <Keyed S, Keyed C>
class PolicySpace {
 public:
  PolicySpace(const Model<S, C>& model, Time t, Steps n) : model_(&model), t_(t), n_(n) {
    for (Steps k = 0; k < n; ++k) {
      const Time tk = t + k;
      const Steps remaining = n - k;
      Level level;
      level.domain = model.domain(tk, remaining);
      for (std::size_t i : level.domain) {
        std::vector<C> options;
        const auto& trs = model.graph().transitions(tk, i);
        for (std::size_t g : model.good_transitions(tk, remaining - 1, i)) options.push_back(trs[g].ctrl);
        level.options.push_back(std::move(options));
      }
      levels_.push_back(std::move(level));
    }
  }

  /// Product of all radices (as a double: it may exceed 2^64).
  double count() const {
    double c = 1.0;
    for (const auto& level : levels_)
      for (const auto& options : level.options) c *= static_cast<double>(options.size());
    return c;
  }

  /// The sequence whose every digit is 0 (first good control everywhere).
  PolicySeq<S, C> first() const {
    PolicySeq<S, C> ps{t_, {}};
    for (Steps k = 0; k < n_; ++k) {
      Policy<S, C> policy{t_ + k, n_ - k, {}};
      const auto& level = levels_[k];
      for (std::size_t d = 0; d < level.domain.size(); ++d)
        policy.table.emplace(model_->state(t_ + k, level.domain[d]), level.options[d].front());
      ps.policies.push_back(std::move(policy));
    }
    return ps;
  }

  /// Overwrites the controls of `ps` (shaped like `first()`) with candidate `index`.
  /// The last state of the last step is the fastest-varying digit.
  void decode(std::uint64_t index, PolicySeq<S, C>& ps) const {
    for (Steps k = n_; k-- > 0;) {
      const auto& level = levels_[k];
      auto& table = ps.policies[k].table;
      auto it = table.end();
      for (std::size_t d = level.domain.size(); d-- > 0;) {
        --it;
        const std::uint64_t radix = level.options[d].size();
        it->second = level.options[d][index % radix];
        index /= radix;
      }
    }
  }

  Steps steps() const noexcept { return n_; }

 private:
  struct Level {
    std::vector<std::size_t> domain;
    std::vector<std::vector<C>> options;
  };

  const Model<S, C>* model_;
  Time t_;
  Steps n_;
  std::vector<Level> levels_;
};

/// Every domain-restricted policy sequence from (t, n), in canonical order.
template <Keyed S, Keyed C>
std::vector<PolicySeq<S, C>> enum_policy_seqs(const Model<S, C>& model, Time t, Steps n,
                                               std::uint64_t cap = kDefaultCap) {
  const PolicySpace<S, C> space(model, t, n);
  const double count = space.count();
  if (count > static_cast<double>(cap))
    throw Error(ErrorCode::TooLarge, "policy space holds " + std::to_string(count) + " sequences, cap is " +
                                         std::to_string(cap));
  std::vector<PolicySeq<S, C>> out;
  PolicySeq<S, C> ps = space.first();
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(count); ++i) {
    space.decode(i, ps);
    out.push_back(ps);
  }
  return out;
}

/// A policy sequence choosing uniformly among good controls at every domain state.
template <Keyed S, Keyed C, class Rng>
PolicySeq<S, C> random_policy_seq(const Model<S, C>& model, Time t, Steps n, Rng& rng) {
  const PolicySpace<S, C> space(model, t, n);
  PolicySeq<S, C> ps = space.first();
  for (Steps k = 0; k < n; ++k) {
    for (auto& [x, y] : ps.policies[k].table) {
      const std::size_t i = model.graph().index_of(t + k, x);
      const auto good = model.good_transitions(t + k, n - k - 1, i);
      std::uniform_int_distribution<std::size_t> pick(0, good.size() - 1);
      y = model.graph().transitions(t + k, i)[good[pick(rng)]].ctrl;
    }
  }
  return ps;
}

enum class CheckMode {
  /// Full cartesian product of policy sequences, every start state.
  Exhaustive,
  /// Per start state, every assignment of controls to the states that can be
  /// visited from it. mval reads only visited states, so this attains every
  /// value the exhaustive space attains, at a fraction of the cost.
  Restricted,
};

namespace detail {

inline std::string count_text(double count) {
  std::ostringstream out;
  out.precision(0);
  out << std::fixed << count;
  return out.str();
}

template <Keyed S, Keyed C>
CheckReport summarize(const Model<S, C>& model, Time t, const std::vector<std::size_t>& starts,
                      const std::vector<double>& gaps, std::uint64_t evaluated) {
  CheckReport report;
  report.evaluated = evaluated;
  report.t = t;
  std::size_t worst = 0;
  for (std::size_t s = 1; s < gaps.size(); ++s)
    if (gaps[s] > gaps[worst]) worst = s;
  if (!gaps.empty()) {
    report.gap = gaps[worst];
    report.x = to_key(model.state(t, starts[worst]));
    report.pass = gaps[worst] <= kOptimalityTolerance;
  }
  return report;
}

template <Keyed S, Keyed C>
CheckReport check_exhaustive(const Model<S, C>& model, const PolicySeq<S, C>& ps, std::uint64_t cap) {
  const Time t = ps.start_t;
  const Steps n = ps.length();
  const auto& p = model.problem();
  const auto starts = model.domain(t, n);
  const PolicySpace<S, C> space(model, t, n);
  const double pairs = space.count() * static_cast<double>(starts.size());
  if (pairs > static_cast<double>(cap))
    throw Error(ErrorCode::TooLarge, detail::count_text(pairs) + " (policy sequence, start) pairs exceed cap " +
                                         std::to_string(cap));
  const auto count = static_cast<std::uint64_t>(space.count());

  std::vector<double> target(starts.size());
  for (std::size_t s = 0; s < starts.size(); ++s) target[s] = mval(p, ps, t, n, model.state(t, starts[s]));

  const std::size_t blocks = std::min<std::uint64_t>(count, 64 * static_cast<std::uint64_t>(max_threads()));
  std::vector<std::vector<double>> block_gaps(blocks, std::vector<double>(starts.size(), -1e300));
  for_each_index(model.exec(), blocks, [&](std::size_t b) {
    PolicySeq<S, C> candidate = space.first();
    const std::uint64_t lo = count * b / blocks;
    const std::uint64_t hi = count * (b + 1) / blocks;
    for (std::uint64_t i = lo; i < hi; ++i) {
      space.decode(i, candidate);
      for (std::size_t s = 0; s < starts.size(); ++s) {
        const double gap = mval(p, candidate, t, n, model.state(t, starts[s])) - target[s];
        if (gap > block_gaps[b][s]) block_gaps[b][s] = gap;
      }
    }
  });
  std::vector<double> gaps(starts.size(), -1e300);
  for (const auto& bg : block_gaps)
    for (std::size_t s = 0; s < starts.size(); ++s) gaps[s] = std::max(gaps[s], bg[s]);
  return summarize(model, t, starts, gaps, count * starts.size());
}

template <Keyed S, Keyed C>
CheckReport check_restricted(const Model<S, C>& model, const PolicySeq<S, C>& ps, std::uint64_t cap) {
  const Time t = ps.start_t;
  const Steps n = ps.length();
  const auto& p = model.problem();
  const auto starts = model.domain(t, n);
  std::atomic<std::uint64_t> evaluated{0};
  std::vector<double> gaps(starts.size(), -1e300);

  for_each_index(model.exec(), starts.size(), [&](std::size_t s) {
    const S& x0 = model.state(t, starts[s]);
    const double target = mval(p, ps, t, n, x0);
    PolicySeq<S, C> candidate = ps;
    std::vector<std::size_t> chosen;

    // Assign a control to each frontier state of step k, then move on to the
    // union of their successors.
    auto level = [&](auto&& self, Steps k, const std::vector<std::size_t>& frontier) -> void {
      if (k == n) {
        if (evaluated.fetch_add(1) + 1 > cap)
          throw Error(ErrorCode::TooLarge, "more than " + std::to_string(cap) + " (policy sequence, start) pairs");
        gaps[s] = std::max(gaps[s], mval(p, candidate, t, n, x0) - target);
        return;
      }
      const Time tk = t + k;
      auto assign = [&](auto&& assign_self, std::size_t j) -> void {
        if (j == frontier.size()) {
          std::vector<std::size_t> next;
          for (std::size_t f = 0; f < frontier.size(); ++f) {
            const auto& tr = model.graph().transitions(tk, frontier[f])[chosen[chosen.size() - frontier.size() + f]];
            next.insert(next.end(), tr.next_index.begin(), tr.next_index.end());
          }
          std::sort(next.begin(), next.end());
          next.erase(std::unique(next.begin(), next.end()), next.end());
          self(self, k + 1, next);
          return;
        }
        const std::size_t i = frontier[j];
        const auto& trs = model.graph().transitions(tk, i);
        for (std::size_t g : model.good_transitions(tk, n - k - 1, i)) {
          candidate.policies[k].table.at(model.state(tk, i)) = trs[g].ctrl;
          chosen.push_back(g);
          assign_self(assign_self, j + 1);
          chosen.pop_back();
        }
      };
      assign(assign, 0);
    };
    level(level, 0, {starts[s]});
  });
  return summarize(model, t, starts, gaps, evaluated.load());
}

}  // namespace detail

/// Checks that no policy sequence beats ps from any reachable, viable start
/// by more than kOptimalityTolerance. `cap` bounds the number of evaluated
/// (candidate, start) pairs; TooLarge is thrown beyond it.
template <Keyed S, Keyed C>
CheckReport check_opt_policy_seq(const Model<S, C>& model, const PolicySeq<S, C>& ps, std::uint64_t cap = kDefaultCap,
                                 CheckMode mode = CheckMode::Restricted) {
  if (ps.length() == 0) {
    CheckReport vacuous;
    vacuous.t = ps.start_t;
    return vacuous;
  }
  if (!ps.chained()) throw Error(ErrorCode::DomainMiss, "policy sequence is not chained");
  if (!model.covers(ps.start_t, ps.length()))
    throw Error(ErrorCode::TableMiss, "model does not cover the policy sequence");
  return mode == CheckMode::Exhaustive ? detail::check_exhaustive(model, ps, cap)
                                       : detail::check_restricted(model, ps, cap);
}

/// Given ps optimal at (t+1, n), extends it by opt_ext and checks that the
/// extension is optimal at (t, n+1). Returns the failing precondition report
/// if ps itself is not optimal.
template <Keyed S, Keyed C>
CheckReport check_bellman(const Model<S, C>& model, const PolicySeq<S, C>& ps_next, std::uint64_t cap = kDefaultCap,
                          CheckMode mode = CheckMode::Restricted) {
  if (ps_next.start_t == 0) throw Error(ErrorCode::TableMiss, "Bellman check needs a sequence starting after t=0");
  CheckReport pre = check_opt_policy_seq(model, ps_next, cap, mode);
  if (!pre.pass) return pre;
  const ValueLayer<S> value_next = values_of(model, ps_next);
  auto [policy, values] = opt_ext(model, value_next);
  CheckReport post = check_opt_policy_seq(model, ps_next.prepend(std::move(policy)), cap, mode);
  post.evaluated += pre.evaluated;
  return post;
}

}  // namespace sdp
