#include "sdp/measure.hpp"

#include <algorithm>

namespace sdp {

double meas_expected(const Container<double>& m) {
  if (m.kind() == Kind::NonDeterministic)
    throw Error(ErrorCode::KindMismatch, "expected value is undefined for non-deterministic containers");
  double total = 0.0;
  for (const auto& [value, prob] : m.weighted()) total += value * prob;
  return total;
}

double meas_worst(const Container<double>& m) {
  const auto support = m.support();
  if (support.empty()) throw Error(ErrorCode::EmptyContainer, "worst-case measure of an empty container");
  return *std::min_element(support.begin(), support.end());
}

double meas_best(const Container<double>& m) {
  const auto support = m.support();
  if (support.empty()) throw Error(ErrorCode::EmptyContainer, "best-case measure of an empty container");
  return *std::max_element(support.begin(), support.end());
}

double meas_variance(const Container<double>& m) {
  const auto entries = m.weighted();
  if (entries.empty()) throw Error(ErrorCode::EmptyContainer, "variance of an empty container");
  // Sets are treated as uniform.
  const double w = m.kind() == Kind::NonDeterministic ? 1.0 / static_cast<double>(entries.size()) : 0.0;
  double mean = 0.0;
  for (const auto& [v, p] : entries) mean += v * (w > 0.0 ? w : p);
  double var = 0.0;
  for (const auto& [v, p] : entries) var += (v - mean) * (v - mean) * (w > 0.0 ? w : p);
  return var;
}

std::optional<Measure> Measure::by_name(std::string_view name) {
  if (name == "expected") return expected();
  if (name == "worst") return worst();
  if (name == "best") return best();
  return std::nullopt;
}

}  // namespace sdp
