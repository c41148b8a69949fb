#pragma once

// Loop driver shared by the layer kernels. `Exec::Serial` is the reference
// path; `Exec::Parallel` distributes independent iterations over OpenMP
// threads. Kernels write results into pre-sized slots indexed by the loop
// variable, so both paths produce bitwise identical output.

#include <cstddef>
#include <exception>
#include <mutex>

namespace sdp {

enum class Exec { Serial, Parallel };

int max_threads() noexcept;

template <class Body>
void for_each_index(Exec exec, std::size_t count, Body&& body) {
  if (exec == Exec::Serial || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  // Exceptions must not escape an OpenMP region; the one from the lowest
  // index is rethrown so the error matches the serial path.
  std::exception_ptr error;
  std::size_t error_index = count;
  std::mutex error_mutex;
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (static_cast<std::size_t>(i) < error_index) {
        error_index = static_cast<std::size_t>(i);
        error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace sdp
