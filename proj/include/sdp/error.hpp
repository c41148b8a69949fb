#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sdp {

enum class ErrorCode {
  KindMismatch,
  EmptyContainer,
  InvalidDistribution,
  InvalidState,
  TableMiss,
  DomainMiss,
  EmptyChoice,
  NotDeterministic,
  NotViable,
  TooLarge,
  InvalidSlip,
  UncheckedMeasure,
  ParseError,
  IllPosed,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; `code()` identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sdp
