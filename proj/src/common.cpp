#include "sdp/error.hpp"
#include "sdp/parallel.hpp"
#include "sdp/problem.hpp"
#include "sdp/uncertainty.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sdp {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::EmptyContainer: return "EmptyContainer";
    case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::TableMiss: return "TableMiss";
    case ErrorCode::DomainMiss: return "DomainMiss";
    case ErrorCode::EmptyChoice: return "EmptyChoice";
    case ErrorCode::NotDeterministic: return "NotDeterministic";
    case ErrorCode::NotViable: return "NotViable";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InvalidSlip: return "InvalidSlip";
    case ErrorCode::UncheckedMeasure: return "UncheckedMeasure";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IllPosed: return "IllPosed";
  }
  return "Unknown";
}

std::string_view to_string(Kind kind) noexcept {
  switch (kind) {
    case Kind::Deterministic: return "deterministic";
    case Kind::NonDeterministic: return "non-deterministic";
    case Kind::Stochastic: return "stochastic";
  }
  return "unknown";
}

std::string_view to_string(ViolationKind kind) noexcept {
  switch (kind) {
    case ViolationKind::OrderViolation: return "OrderViolation";
    case ViolationKind::StepError: return "StepError";
    case ViolationKind::KindViolation: return "KindViolation";
    case ViolationKind::EmptyStep: return "EmptyStep";
    case ViolationKind::LayerViolation: return "LayerViolation";
    case ViolationKind::NormalizationViolation: return "NormalizationViolation";
    case ViolationKind::NotViable: return "NotViable";
  }
  return "Unknown";
}

int max_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace sdp
