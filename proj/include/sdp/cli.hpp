#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sdp::cli {

/// Process exit codes.
enum Exit : int {
  kOk = 0,
  kInternal = 1,
  kIllPosed = 2,
  kDomain = 3,
  kResourceCap = 4,
};

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Registered example ids: cyl-det, cyl-time, cyl-nondet, cyl-stoch, knapsack.
const std::vector<std::string>& example_ids();

}  // namespace sdp::cli
