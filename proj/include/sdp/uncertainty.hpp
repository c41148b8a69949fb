#pragma once

// Uncertainty containers: the structure of possible next states returned by
// a transition. Three instances ship: a single value (deterministic), a finite
// set (non-deterministic) and a finite-support distribution (stochastic).
// All operations are pure; containers are immutable values.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "sdp/error.hpp"
#include "sdp/key.hpp"

namespace sdp {

enum class Kind { Deterministic = 0, NonDeterministic = 1, Stochastic = 2 };

std::string_view to_string(Kind kind) noexcept;

/// Tolerance on the total mass of a distribution and on probability equality.
inline constexpr double kProbTolerance = 1e-9;

/// Finite, duplicate-free, sorted set of values.
template <class A>
class NonDetSet {
 public:
  NonDetSet() = default;

  explicit NonDetSet(std::vector<A> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }

  NonDetSet(std::initializer_list<A> members) : NonDetSet(std::vector<A>(members)) {}

  const std::vector<A>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }

  bool contains(const A& x) const { return std::binary_search(members_.begin(), members_.end(), x); }

  friend bool operator==(const NonDetSet&, const NonDetSet&) = default;

 private:
  std::vector<A> members_;
};

/// Finite-support probability distribution.
///
/// `make` validates and canonicalizes. `raw` keeps the entries exactly as
/// given, so ill-formed distributions emitted by a user transition can be
/// reported by validation instead of failing at construction.
template <class A>
class SimpleProb {
 public:
  using Entry = std::pair<A, double>;

  SimpleProb() = default;

  static SimpleProb make(std::vector<Entry> entries) {
    double total = 0.0;
    for (const auto& [value, prob] : entries) {
      if (!(prob >= 0.0)) throw Error(ErrorCode::InvalidDistribution, "negative probability");
      total += prob;
    }
    if (std::abs(total - 1.0) > kProbTolerance)
      throw Error(ErrorCode::InvalidDistribution, "probabilities sum to " + to_key(total));
    return raw(std::move(entries)).canonicalized();
  }

  static SimpleProb make(std::initializer_list<Entry> entries) { return make(std::vector<Entry>(entries)); }

  static SimpleProb raw(std::vector<Entry> entries) {
    SimpleProb d;
    d.entries_ = std::move(entries);
    d.canonical_ = false;
    return d;
  }

  static SimpleProb point(A x) {
    SimpleProb d;
    d.entries_.emplace_back(std::move(x), 1.0);
    d.canonical_ = true;
    return d;
  }

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  bool canonical() const noexcept { return canonical_; }
  std::size_t size() const noexcept { return entries_.size(); }

  double total_mass() const {
    double total = 0.0;
    for (const auto& e : entries_) total += e.second;
    return total;
  }

  bool normalized() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Entry& e) { return e.second >= 0.0; }) &&
           std::abs(total_mass() - 1.0) <= kProbTolerance;
  }

  /// Sorted by value, duplicates merged, zero-mass entries dropped.
  SimpleProb canonicalized() const {
    if (canonical_) return *this;
    std::vector<Entry> sorted = entries_;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Entry& a, const Entry& b) { return a.first < b.first; });
    SimpleProb d;
    d.canonical_ = true;
    for (auto& e : sorted) {
      if (!d.entries_.empty() && d.entries_.back().first == e.first)
        d.entries_.back().second += e.second;
      else
        d.entries_.push_back(std::move(e));
    }
    std::erase_if(d.entries_, [](const Entry& e) { return e.second <= 0.0; });
    return d;
  }

  double prob_of(const A& x) const {
    double mass = 0.0;
    for (const auto& [value, prob] : entries_)
      if (value == x) mass += prob;
    return mass;
  }

 private:
  std::vector<Entry> entries_;
  bool canonical_ = true;
};

/// Pairs a contained value with evidence of its membership: its position in
/// the canonical support of the originating container and the mass it carries.
struct Membership {
  std::size_t position = 0;
  double mass = 1.0;
};

template <class A>
struct Member {
  A value;
  Membership evidence;

  friend bool operator==(const Member& a, const Member& b) { return a.value == b.value; }
  friend auto operator<=>(const Member& a, const Member& b) { return a.value <=> b.value; }
};

template <class A>
class Container {
 public:
  using value_type = A;
  using Payload = std::variant<A, NonDetSet<A>, SimpleProb<A>>;

  static Container single(A x) { return Container(Payload(std::in_place_index<0>, std::move(x))); }
  static Container set(NonDetSet<A> s) { return Container(Payload(std::in_place_index<1>, std::move(s))); }
  static Container set(std::vector<A> xs) { return set(NonDetSet<A>(std::move(xs))); }
  static Container set(std::initializer_list<A> xs) { return set(std::vector<A>(xs)); }
  static Container dist(SimpleProb<A> d) { return Container(Payload(std::in_place_index<2>, std::move(d))); }
  static Container dist(std::vector<std::pair<A, double>> entries) {
    return dist(SimpleProb<A>::make(std::move(entries)));
  }

  Kind kind() const noexcept { return static_cast<Kind>(payload_.index()); }
  const Payload& payload() const noexcept { return payload_; }

  const A& as_single() const { return std::get<0>(payload_); }
  const NonDetSet<A>& as_set() const { return std::get<1>(payload_); }
  const SimpleProb<A>& as_dist() const { return std::get<2>(payload_); }

  /// (value, mass) over the canonical support. Non-probabilistic kinds carry mass 1.
  std::vector<std::pair<A, double>> weighted() const {
    switch (kind()) {
      case Kind::Deterministic:
        return {{as_single(), 1.0}};
      case Kind::NonDeterministic: {
        std::vector<std::pair<A, double>> out;
        out.reserve(as_set().size());
        for (const auto& x : as_set().members()) out.emplace_back(x, 1.0);
        return out;
      }
      case Kind::Stochastic:
        return as_dist().canonicalized().entries();
    }
    return {};
  }

  std::vector<A> support() const {
    std::vector<A> out;
    for (auto& e : weighted()) out.push_back(std::move(e.first));
    return out;
  }

  bool empty() const {
    switch (kind()) {
      case Kind::Deterministic: return false;
      case Kind::NonDeterministic: return as_set().empty();
      case Kind::Stochastic: return as_dist().canonicalized().size() == 0;
    }
    return true;
  }

 private:
  explicit Container(Payload p) : payload_(std::move(p)) {}
  Payload payload_;
};

template <class A>
Container<A> ret(Kind kind, A x) {
  switch (kind) {
    case Kind::Deterministic: return Container<A>::single(std::move(x));
    case Kind::NonDeterministic: return Container<A>::set(NonDetSet<A>{std::move(x)});
    case Kind::Stochastic: return Container<A>::dist(SimpleProb<A>::point(std::move(x)));
  }
  throw Error(ErrorCode::KindMismatch, "unknown kind");
}

template <class A>
Container<A> canonicalize(const Container<A>& m) {
  if (m.kind() == Kind::Stochastic) return Container<A>::dist(m.as_dist().canonicalized());
  return m;
}

template <class F, class A>
auto fmap(F&& f, const Container<A>& m) -> Container<std::decay_t<std::invoke_result_t<F&, const A&>>> {
  using B = std::decay_t<std::invoke_result_t<F&, const A&>>;
  switch (m.kind()) {
    case Kind::Deterministic:
      return Container<B>::single(std::invoke(f, m.as_single()));
    case Kind::NonDeterministic: {
      std::vector<B> out;
      out.reserve(m.as_set().size());
      for (const auto& x : m.as_set().members()) out.push_back(std::invoke(f, x));
      return Container<B>::set(std::move(out));
    }
    case Kind::Stochastic: {
      std::vector<std::pair<B, double>> out;
      out.reserve(m.as_dist().size());
      for (const auto& [x, p] : m.as_dist().entries()) out.emplace_back(std::invoke(f, x), p);
      return Container<B>::dist(SimpleProb<B>::raw(std::move(out)).canonicalized());
    }
  }
  throw Error(ErrorCode::KindMismatch, "unknown kind");
}

template <class A, class F>
auto bind(const Container<A>& m, F&& f) -> std::decay_t<std::invoke_result_t<F&, const A&>> {
  using MB = std::decay_t<std::invoke_result_t<F&, const A&>>;
  using B = typename MB::value_type;
  auto checked = [&](const A& x) {
    MB r = std::invoke(f, x);
    if (r.kind() != m.kind())
      throw Error(ErrorCode::KindMismatch,
                  std::string("bind continuation returned ") + std::string(to_string(r.kind())) + " for " +
                      std::string(to_string(m.kind())) + " input");
    return r;
  };
  switch (m.kind()) {
    case Kind::Deterministic:
      return checked(m.as_single());
    case Kind::NonDeterministic: {
      std::vector<B> out;
      for (const auto& x : m.as_set().members()) {
        MB r = checked(x);
        out.insert(out.end(), r.as_set().members().begin(), r.as_set().members().end());
      }
      return MB::set(std::move(out));
    }
    case Kind::Stochastic: {
      std::vector<std::pair<B, double>> out;
      for (const auto& [x, p] : m.as_dist().entries()) {
        MB r = checked(x);
        for (const auto& [y, q] : r.as_dist().entries()) out.emplace_back(y, p * q);
      }
      return MB::dist(SimpleProb<B>::raw(std::move(out)).canonicalized());
    }
  }
  throw Error(ErrorCode::KindMismatch, "unknown kind");
}

/// Membership over the strictly positive support.
template <class A>
bool contains(const A& x, const Container<A>& m) {
  switch (m.kind()) {
    case Kind::Deterministic: return m.as_single() == x;
    case Kind::NonDeterministic: return m.as_set().contains(x);
    case Kind::Stochastic: return m.as_dist().prob_of(x) > 0.0;
  }
  return false;
}

inline bool all_true(const Container<bool>& mb) {
  for (const auto& [b, mass] : mb.weighted())
    if (!b) return false;
  return true;
}

template <class A>
Container<Member<A>> tag_members(const Container<A>& m) {
  std::size_t position = 0;
  switch (m.kind()) {
    case Kind::Deterministic:
      return Container<Member<A>>::single({m.as_single(), {0, 1.0}});
    case Kind::NonDeterministic: {
      std::vector<Member<A>> out;
      for (const auto& x : m.as_set().members()) out.push_back({x, {position++, 1.0}});
      return Container<Member<A>>::set(std::move(out));
    }
    case Kind::Stochastic: {
      std::vector<std::pair<Member<A>, double>> out;
      const SimpleProb<A> canonical = m.as_dist().canonicalized();
      for (const auto& [x, p] : canonical.entries()) out.push_back({{x, {position++, p}}, p});
      return Container<Member<A>>::dist(SimpleProb<Member<A>>::raw(std::move(out)).canonicalized());
    }
  }
  throw Error(ErrorCode::KindMismatch, "unknown kind");
}

/// Checks that `member` carries valid evidence of membership in `m`.
template <class A>
bool witnesses(const Container<A>& m, const Member<A>& member) {
  const auto support = m.weighted();
  if (member.evidence.position >= support.size()) return false;
  const auto& [value, mass] = support[member.evidence.position];
  return value == member.value && mass > 0.0 && std::abs(mass - member.evidence.mass) <= kProbTolerance;
}

template <class A>
A first(const Member<A>& m) {
  return m.value;
}

/// Equality of canonical forms; probabilities compared with absolute tolerance.
template <class A>
bool equal(const Container<A>& lhs, const Container<A>& rhs, double tol = kProbTolerance) {
  if (lhs.kind() != rhs.kind()) return false;
  const auto a = lhs.weighted();
  const auto b = rhs.weighted();
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i].first == b[i].first)) return false;
    if (std::abs(a[i].second - b[i].second) > tol) return false;
  }
  return true;
}

template <class A>
bool operator==(const Container<A>& lhs, const Container<A>& rhs) {
  return equal(lhs, rhs);
}

/// Canonical text: `=v`, `{v1,v2}` or `{v1:p1,v2:p2}`.
template <class A, class KeyFn>
std::string to_text(const Container<A>& m, KeyFn&& key) {
  std::string out;
  switch (m.kind()) {
    case Kind::Deterministic:
      return "=" + std::string(key(m.as_single()));
    case Kind::NonDeterministic: {
      out = "{";
      bool sep = false;
      for (const auto& x : m.as_set().members()) {
        if (sep) out += ",";
        out += key(x);
        sep = true;
      }
      return out + "}";
    }
    case Kind::Stochastic: {
      out = "{";
      bool sep = false;
      const SimpleProb<A> canonical = m.as_dist().canonicalized();
      for (const auto& [x, p] : canonical.entries()) {
        if (sep) out += ",";
        out += key(x) + ":" + to_key(p);
        sep = true;
      }
      return out + "}";
    }
  }
  return out;
}

template <class A>
std::string to_text(const Container<A>& m) {
  return to_text(m, [](const A& x) { return to_key(x); });
}

}  // namespace sdp
