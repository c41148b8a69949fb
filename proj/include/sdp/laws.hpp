#pragma once

// Randomized law suites for the uncertainty containers and for measures.

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "sdp/measure.hpp"

namespace sdp {

struct LawResult {
  std::string name;
  Kind kind;
  bool pass = true;
  std::uint64_t trials = 0;
  std::string detail;
};

/// Small random containers over the integers [0, universe).
Container<int> random_container(Kind kind, std::mt19937_64& rng, int universe = 8, int max_size = 5);

/// Functor and monad laws, the membership and tagging specifications,
/// normalization and canonical-form determinism, each on `trials` inputs.
std::vector<LawResult> container_laws(Kind kind, std::uint64_t trials, std::uint64_t seed);

/// meas(fmap(f, mx)) <= meas(fmap(g, mx)) + tol for random mx and f <= g.
LawResult measure_monotonicity(const Measure& m, Kind kind, std::uint64_t trials, std::uint64_t seed,
                               double tol = 1e-12);

/// Runs the monotonicity harness on every kind in `kinds` and returns the
/// measure marked certified. Throws UncheckedMeasure if a check fails or the
/// measure is quarantined.
Measure certify_measure(const Measure& m, std::span<const Kind> kinds, std::uint64_t trials = 1000,
                        std::uint64_t seed = 1);

/// `<name> kind=<kind> trials=<n>: PASS|FAIL [detail]`, one per line.
std::string to_text(const std::vector<LawResult>& results);

}  // namespace sdp
