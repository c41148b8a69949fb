#pragma once

// Canonical string keys for state and control values. Problem-specific
// types provide `to_key` in their own namespace (found by ADL); the
// overloads here cover built-in types.

#include <concepts>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <string>

namespace sdp {

inline std::string to_key(const std::string& s) { return s; }
inline std::string to_key(char c) { return std::string(1, c); }
inline std::string to_key(bool b) { return b ? "true" : "false"; }

/// Reals are keyed with nine decimal digits, the precision used by every text output.
inline std::string to_key(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v == 0.0 ? 0.0 : v);
  return buf;
}

template <std::integral T>
  requires(!std::same_as<T, bool> && !std::same_as<T, char>)
std::string to_key(T v) {
  return std::to_string(v);
}

/// Values usable as states or controls: copyable, totally ordered and keyed.
template <class T>
concept Keyed = std::copyable<T> && std::totally_ordered<T> && std::three_way_comparable<T> && requires(const T& v) {
  { to_key(v) } -> std::convertible_to<std::string>;
};

}  // namespace sdp
