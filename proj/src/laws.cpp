#include "sdp/laws.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace sdp {

namespace {

using IntFn = std::vector<int>;                // [0, universe) -> [0, universe)
using KleisliFn = std::vector<Container<int>>;  // [0, universe) -> M int

constexpr int kUniverse = 8;

IntFn random_fn(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, kUniverse - 1);
  IntFn f(kUniverse);
  for (auto& v : f) v = pick(rng);
  return f;
}

KleisliFn random_kleisli(Kind kind, std::mt19937_64& rng) {
  KleisliFn f;
  for (int i = 0; i < kUniverse; ++i) f.push_back(random_container(kind, rng, kUniverse, 3));
  return f;
}

/// Canonical entry sequences agree: identical values, masses within tol.
bool identical_entries(const Container<int>& a, const Container<int>& b, double tol) {
  const auto ea = a.weighted();
  const auto eb = b.weighted();
  if (a.kind() != b.kind() || ea.size() != eb.size()) return false;
  for (std::size_t i = 0; i < ea.size(); ++i)
    if (ea[i].first != eb[i].first || std::abs(ea[i].second - eb[i].second) > tol) return false;
  return true;
}

class LawRunner {
 public:
  LawRunner(Kind kind, std::uint64_t trials, std::uint64_t seed) : kind_(kind), trials_(trials), rng_(seed) {}

  template <class Check>
  void run(const std::string& name, Check&& check) {
    LawResult result{name, kind_, true, trials_, {}};
    for (std::uint64_t i = 0; i < trials_ && result.pass; ++i) {
      std::string detail;
      if (!check(rng_, detail)) {
        result.pass = false;
        result.detail = "trial " + std::to_string(i) + (detail.empty() ? "" : ": " + detail);
      }
    }
    results_.push_back(std::move(result));
  }

  Kind kind() const { return kind_; }
  std::vector<LawResult> take() { return std::move(results_); }

 private:
  Kind kind_;
  std::uint64_t trials_;
  std::mt19937_64 rng_;
  std::vector<LawResult> results_;
};

}  // namespace

Container<int> random_container(Kind kind, std::mt19937_64& rng, int universe, int max_size) {
  std::uniform_int_distribution<int> value(0, universe - 1);
  std::uniform_int_distribution<int> size(1, max_size);
  switch (kind) {
    case Kind::Deterministic:
      return Container<int>::single(value(rng));
    case Kind::NonDeterministic: {
      std::vector<int> xs(static_cast<std::size_t>(size(rng)));
      for (auto& x : xs) x = value(rng);
      return Container<int>::set(std::move(xs));
    }
    case Kind::Stochastic: {
      std::uniform_real_distribution<double> weight(0.05, 1.0);
      std::vector<std::pair<int, double>> entries(static_cast<std::size_t>(size(rng)));
      double total = 0.0;
      for (auto& [x, p] : entries) {
        x = value(rng);
        p = weight(rng);
        total += p;
      }
      for (auto& e : entries) e.second /= total;
      return Container<int>::dist(SimpleProb<int>::raw(std::move(entries)).canonicalized());
    }
  }
  throw Error(ErrorCode::KindMismatch, "unknown kind");
}

std::vector<LawResult> container_laws(Kind kind, std::uint64_t trials, std::uint64_t seed) {
  LawRunner laws(kind, trials, seed);
  const auto show = [](const Container<int>& m) { return to_text(m); };

  laws.run("functor-identity", [&](auto& rng, std::string& detail) {
    const auto m = random_container(kind, rng);
    const auto r = fmap([](int x) { return x; }, m);
    detail = show(m) + " vs " + show(r);
    return r == m;
  });
  laws.run("functor-composition", [&](auto& rng, std::string& detail) {
    const auto m = random_container(kind, rng);
    const auto f = random_fn(rng);
    const auto g = random_fn(rng);
    const auto lhs = fmap([&](int x) { return f[g[x]]; }, m);
    const auto rhs = fmap([&](int x) { return f[x]; }, fmap([&](int x) { return g[x]; }, m));
    detail = show(lhs) + " vs " + show(rhs);
    return lhs == rhs;
  });
  laws.run("monad-fmap-ret", [&](auto& rng, std::string& detail) {
    const int x = std::uniform_int_distribution<int>(0, kUniverse - 1)(rng);
    const auto f = random_fn(rng);
    const auto lhs = fmap([&](int v) { return f[v]; }, ret(kind, x));
    const auto rhs = ret(kind, f[x]);
    detail = show(lhs) + " vs " + show(rhs);
    return lhs == rhs && lhs.kind() == kind;
  });
  laws.run("monad-left-identity", [&](auto& rng, std::string& detail) {
    const int a = std::uniform_int_distribution<int>(0, kUniverse - 1)(rng);
    const auto f = random_kleisli(kind, rng);
    const auto lhs = bind(ret(kind, a), [&](int x) { return f[x]; });
    detail = show(lhs) + " vs " + show(f[a]);
    return lhs == f[a];
  });
  laws.run("monad-right-identity", [&](auto& rng, std::string& detail) {
    const auto m = random_container(kind, rng);
    const auto r = bind(m, [&](int x) { return ret(kind, x); });
    detail = show(m) + " vs " + show(r);
    return r == m;
  });
  laws.run("monad-associativity", [&](auto& rng, std::string& detail) {
    const auto m = random_container(kind, rng);
    const auto f = random_kleisli(kind, rng);
    const auto g = random_kleisli(kind, rng);
    const auto lhs = bind(bind(m, [&](int x) { return f[x]; }), [&](int y) { return g[y]; });
    const auto rhs = bind(m, [&](int x) { return bind(f[x], [&](int y) { return g[y]; }); });
    detail = show(lhs) + " vs " + show(rhs);
    return lhs == rhs;
  });
  laws.run("all-true-ret", [&](auto&, std::string&) {
    return all_true(ret(kind, true)) && !all_true(ret(kind, false));
  });
  laws.run("is-in-all-true", [&](auto& rng, std::string& detail) {
    const auto m = random_container(kind, rng);
    std::vector<bool> pred(kUniverse);
    std::bernoulli_distribution coin(0.8);
    for (std::size_t i = 0; i < pred.size(); ++i) pred[i] = coin(rng);
    if (!all_true(fmap([&](int x) { return static_cast<bool>(pred[x]); }, m))) return true;
    for (int x = 0; x < kUniverse; ++x) {
      if (contains(x, m) && !pred[x]) {
        detail = "member " + std::to_string(x) + " of " + show(m) + " violates p";
        return false;
      }
    }
    return true;
  });
  laws.run("tag-members", [&](auto& rng, std::string& detail) {
    const auto m = random_container(kind, rng);
    const auto tagged = tag_members(m);
    detail = show(m);
    for (const auto& member : tagged.support())
      if (!witnesses(m, member)) return false;
    return fmap([](const Member<int>& mm) { return first(mm); }, tagged) == m;
  });
  if (kind == Kind::Stochastic) {
    laws.run("normalization", [&](auto& rng, std::string& detail) {
      const auto m = random_container(kind, rng);
      const auto f = random_kleisli(kind, rng);
      const auto g = random_fn(rng);
      const auto r = fmap([&](int x) { return g[x]; }, bind(bind(m, [&](int x) { return f[x]; }),
                                                            [&](int y) { return f[y]; }));
      const double mass = r.as_dist().total_mass();
      detail = "mass " + to_key(mass);
      return std::abs(mass - 1.0) <= kProbTolerance;
    });
  }
  laws.run("canonical-determinism", [&](auto& rng, std::string& detail) {
    const auto m = random_container(kind, rng);
    const auto f = random_kleisli(kind, rng);
    const auto g = random_fn(rng);
    const auto lhs = fmap([&](int y) { return g[y]; }, bind(m, [&](int x) { return f[x]; }));
    const auto rhs = bind(m, [&](int x) { return fmap([&](int y) { return g[y]; }, f[x]); });
    detail = show(lhs) + " vs " + show(rhs);
    return identical_entries(lhs, rhs, 1e-12);
  });
  return laws.take();
}

LawResult measure_monotonicity(const Measure& m, Kind kind, std::uint64_t trials, std::uint64_t seed, double tol) {
  LawResult result{"measure-monotone[" + m.name() + "]", kind, true, trials, {}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> value(-10.0, 10.0);
  std::uniform_real_distribution<double> lift(0.0, 5.0);
  std::bernoulli_distribution equal(0.3);
  for (std::uint64_t i = 0; i < trials; ++i) {
    const auto mx = random_container(kind, rng);
    std::vector<double> f(kUniverse), g(kUniverse);
    for (int x = 0; x < kUniverse; ++x) {
      f[x] = value(rng);
      g[x] = equal(rng) ? f[x] : f[x] + lift(rng);
    }
    double lhs = 0.0, rhs = 0.0;
    try {
      lhs = m(fmap([&](int x) { return f[x]; }, mx));
      rhs = m(fmap([&](int x) { return g[x]; }, mx));
    } catch (const Error& e) {
      result.pass = false;
      result.detail = e.what();
      return result;
    }
    if (!(lhs <= rhs + tol)) {
      result.pass = false;
      result.detail = "trial " + std::to_string(i) + ": " + to_key(lhs) + " > " + to_key(rhs) + " on " + to_text(mx);
      return result;
    }
  }
  return result;
}

Measure certify_measure(const Measure& m, std::span<const Kind> kinds, std::uint64_t trials, std::uint64_t seed) {
  if (m.status() == Measure::Status::Unchecked)
    throw Error(ErrorCode::UncheckedMeasure, "measure '" + m.name() + "' is quarantined");
  for (Kind kind : kinds) {
    const LawResult r = measure_monotonicity(m, kind, trials, seed);
    if (!r.pass) throw Error(ErrorCode::UncheckedMeasure, "measure '" + m.name() + "' is not monotone: " + r.detail);
  }
  return m.with_status(Measure::Status::Certified);
}

std::string to_text(const std::vector<LawResult>& results) {
  std::ostringstream out;
  for (const auto& r : results) {
    out << r.name << " kind=" << to_string(r.kind) << " trials=" << r.trials << ": " << (r.pass ? "PASS" : "FAIL");
    if (!r.pass && !r.detail.empty()) out << " " << r.detail;
    out << "\n";
  }
  return out.str();
}

}  // namespace sdp
