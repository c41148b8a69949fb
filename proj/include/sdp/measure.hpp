#pragma once

// Aggregation of a container of reals into one real. The solver only accepts
// measures that are monotone (see `certify_measure` in laws.hpp); the three
// shipped measures are certified by construction and covered by the law suite.

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "sdp/uncertainty.hpp"

namespace sdp {

/// Σ value·prob over the canonical support. Deterministic input is a point mass.
double meas_expected(const Container<double>& m);
/// Minimum over the support.
double meas_worst(const Container<double>& m);
/// Maximum over the support.
double meas_best(const Container<double>& m);
/// Variance over the support. Not monotone; used only to demonstrate why
/// monotonicity is required.
double meas_variance(const Container<double>& m);

class Measure {
 public:
  using Fn = std::function<double(const Container<double>&)>;

  enum class Status { Certified, Uncertified, Unchecked };

  static Measure expected() { return {"expected", meas_expected, Status::Certified}; }
  static Measure worst() { return {"worst", meas_worst, Status::Certified}; }
  static Measure best() { return {"best", meas_best, Status::Certified}; }

  /// A user measure; must pass `certify_measure` before the solver accepts it.
  static Measure custom(std::string name, Fn fn) { return {std::move(name), std::move(fn), Status::Uncertified}; }

  /// Permanently excluded from the verified solver path.
  static Measure unchecked(std::string name, Fn fn) { return {std::move(name), std::move(fn), Status::Unchecked}; }

  static Measure variance_unchecked() { return unchecked("variance", meas_variance); }

  /// "expected", "worst" or "best".
  static std::optional<Measure> by_name(std::string_view name);

  double operator()(const Container<double>& m) const { return fn_(m); }

  const std::string& name() const noexcept { return name_; }
  Status status() const noexcept { return status_; }
  bool certified() const noexcept { return status_ == Status::Certified; }

  /// Whether the measure accepts containers of `kind` (expected rejects sets).
  bool supports(Kind kind) const noexcept { return !(name_ == "expected" && kind == Kind::NonDeterministic); }

  Measure with_status(Status s) const {
    Measure m = *this;
    m.status_ = s;
    return m;
  }

 private:
  Measure(std::string name, Fn fn, Status status) : name_(std::move(name)), fn_(std::move(fn)), status_(status) {}

  std::string name_;
  Fn fn_;
  Status status_;
};

}  // namespace sdp
