#pragma once

// The problem interface: time-indexed state layers, per-state control
// enumerations, a transition returning an uncertainty container, a reward
// and an aggregation measure. A state is valid at time t iff it appears in
// `states(t)`.

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sdp/measure.hpp"
#include "sdp/uncertainty.hpp"

namespace sdp {

using Time = std::size_t;
using Steps = std::size_t;

template <Keyed S, Keyed C>
class Problem {
 public:
  using State = S;
  using Ctrl = C;

  virtual ~Problem() = default;

  virtual Kind kind() const = 0;
  /// Sorted, duplicate-free.
  virtual std::vector<S> states(Time t) const = 0;
  /// Sorted, duplicate-free; the order is the argmax tie-break order.
  virtual std::vector<C> controls(Time t, const S& x) const = 0;
  virtual Container<S> step(Time t, const S& x, const C& y) const = 0;
  virtual double reward(Time t, const S& x, const C& y, const S& next) const = 0;
  virtual const Measure& measure() const = 0;
  virtual std::optional<Time> horizon_hint() const { return std::nullopt; }

  double meas(const Container<double>& m) const { return measure()(m); }
};

/// Forwards to `base` but aggregates with a different measure.
template <Keyed S, Keyed C>
class Remeasured final : public Problem<S, C> {
 public:
  Remeasured(const Problem<S, C>& base, Measure measure) : base_(base), measure_(std::move(measure)) {}

  Kind kind() const override { return base_.kind(); }
  std::vector<S> states(Time t) const override { return base_.states(t); }
  std::vector<C> controls(Time t, const S& x) const override { return base_.controls(t, x); }
  Container<S> step(Time t, const S& x, const C& y) const override { return base_.step(t, x, y); }
  double reward(Time t, const S& x, const C& y, const S& next) const override {
    return base_.reward(t, x, y, next);
  }
  const Measure& measure() const override { return measure_; }
  std::optional<Time> horizon_hint() const override { return base_.horizon_hint(); }

 private:
  const Problem<S, C>& base_;
  Measure measure_;
};

enum class ViolationKind {
  OrderViolation,
  StepError,
  KindViolation,
  EmptyStep,
  LayerViolation,
  NormalizationViolation,
  NotViable,
};

std::string_view to_string(ViolationKind kind) noexcept;

struct Violation {
  ViolationKind kind;
  Time t = 0;
  std::string x = "-";
  std::string y = "-";
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }

  /// One line per violation: `KIND t=<t> x=<key> y=<key> detail=<msg>`.
  std::string to_text() const {
    std::ostringstream out;
    for (const auto& v : violations)
      out << to_string(v.kind) << " t=" << v.t << " x=" << v.x << " y=" << v.y << " detail=" << v.detail << "\n";
    return out.str();
  }
};

namespace detail {

template <class T>
bool strictly_sorted(const std::vector<T>& xs) {
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i - 1] < xs[i])) return false;
  return true;
}

}  // namespace detail

/// Checks every transition out of layers 0..max_t: the output is non-empty,
/// of the problem's kind, normalized, and lies in the next layer. Layer and
/// control enumerations must be sorted and duplicate-free.
template <Keyed S, Keyed C>
ValidationReport validate(const Problem<S, C>& p, Time max_t) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, Time t, std::string x, std::string y, std::string detail) {
    report.violations.push_back({kind, t, std::move(x), std::move(y), std::move(detail)});
  };

  std::vector<S> layer = p.states(0);
  for (Time t = 0; t <= max_t; ++t) {
    std::vector<S> next_layer = p.states(t + 1);
    if (!detail::strictly_sorted(layer)) add(ViolationKind::OrderViolation, t, "-", "-", "state layer not sorted");

    for (const S& x : layer) {
      const std::vector<C> ctrls = p.controls(t, x);
      if (!detail::strictly_sorted(ctrls))
        add(ViolationKind::OrderViolation, t, to_key(x), "-", "controls not sorted");
      for (const C& y : ctrls) {
        std::optional<Container<S>> next;
        try {
          next = p.step(t, x, y);
        } catch (const std::exception& e) {
          add(ViolationKind::StepError, t, to_key(x), to_key(y), e.what());
          continue;
        }
        if (next->kind() != p.kind()) {
          add(ViolationKind::KindViolation, t, to_key(x), to_key(y),
              std::string("step returned ") + std::string(to_string(next->kind())));
          continue;
        }
        if (next->empty()) {
          add(ViolationKind::EmptyStep, t, to_key(x), to_key(y), "step returned an empty container");
          continue;
        }
        if (next->kind() == Kind::Stochastic && !next->as_dist().normalized())
          add(ViolationKind::NormalizationViolation, t, to_key(x), to_key(y),
              "total mass " + to_key(next->as_dist().total_mass()));
        for (const S& x2 : next->support())
          if (!std::binary_search(next_layer.begin(), next_layer.end(), x2))
            add(ViolationKind::LayerViolation, t, to_key(x), to_key(y),
                "next state " + to_key(x2) + " not in layer " + std::to_string(t + 1));
      }
    }
    layer = std::move(next_layer);
  }
  return report;
}

}  // namespace sdp
