#include "sdp/examples/problem_file.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace sdp::examples {

namespace {

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

class LineParser {
 public:
  explicit LineParser(std::size_t line) : line_(line) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_) + ": " + msg);
  }

  Time time(const std::string& s) const {
    Time t = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), t);
    if (ec != std::errc{} || ptr != s.data() + s.size()) fail("expected a time index, got '" + s + "'");
    return t;
  }

  double real(const std::string& s) const {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    fail("expected a number, got '" + s + "'");
  }

  /// Splits `lhs = rhs` into words on each side.
  std::pair<std::vector<std::string>, std::vector<std::string>> sides(const std::string& s) const {
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail("expected '='");
    return {split_words(s.substr(0, eq)), split_words(s.substr(eq + 1))};
  }

 private:
  std::size_t line_;
};

template <class T>
std::vector<T> sorted_unique(std::vector<T> xs, const LineParser& lp, const char* what) {
  std::sort(xs.begin(), xs.end());
  if (std::adjacent_find(xs.begin(), xs.end()) != xs.end()) lp.fail(std::string("duplicate ") + what);
  return xs;
}

}  // namespace

std::vector<std::string> TabularProblem::states(Time t) const {
  auto it = layers_.find(t);
  return it == layers_.end() ? std::vector<std::string>{} : it->second;
}

std::vector<std::string> TabularProblem::controls(Time t, const std::string& x) const {
  auto it = controls_.find({t, x});
  return it == controls_.end() ? std::vector<std::string>{} : it->second;
}

Container<std::string> TabularProblem::step(Time t, const std::string& x, const std::string& y) const {
  auto it = steps_.find({t, x, y});
  if (it == steps_.end())
    throw Error(ErrorCode::InvalidState, "no transition for t=" + std::to_string(t) + " x=" + x + " y=" + y);
  return it->second;
}

double TabularProblem::reward(Time t, const std::string& x, const std::string& y, const std::string& next) const {
  if (auto it = rewards_.find({t, x, y, next}); it != rewards_.end()) return it->second;
  if (auto it = source_rewards_.find({t, x}); it != source_rewards_.end()) return it->second;
  return 0.0;
}

TabularProblem parse_problem(std::istream& in) {
  TabularProblem p;
  std::string section;
  std::string raw;
  std::size_t line_no = 0;
  bool have_kind = false;
  std::vector<std::pair<TabularProblem::Key3, std::pair<std::vector<std::string>, std::size_t>>> step_rows;

  while (std::getline(in, raw)) {
    ++line_no;
    const LineParser lp(line_no);
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') lp.fail("unterminated section header");
      section = line.substr(1, line.size() - 2);
      if (section != "kind" && section != "layers" && section != "controls" && section != "step" &&
          section != "reward" && section != "measure")
        lp.fail("unknown section [" + section + "]");
      continue;
    }
    if (section == "kind") {
      if (line == "deterministic") p.kind_ = Kind::Deterministic;
      else if (line == "nondeterministic") p.kind_ = Kind::NonDeterministic;
      else if (line == "stochastic") p.kind_ = Kind::Stochastic;
      else lp.fail("unknown kind '" + line + "'");
      have_kind = true;
    } else if (section == "measure") {
      auto m = Measure::by_name(line);
      if (!m) lp.fail("unknown measure '" + line + "'");
      p.measure_ = *m;
    } else if (section == "layers") {
      auto [lhs, rhs] = lp.sides(line);
      if (lhs.size() != 1) lp.fail("expected '<t> = <states>'");
      const Time t = lp.time(lhs[0]);
      if (p.layers_.count(t)) lp.fail("layer " + lhs[0] + " listed twice");
      p.layers_[t] = sorted_unique(std::move(rhs), lp, "state");
      p.last_layer_ = std::max(p.last_layer_, t);
    } else if (section == "controls") {
      auto [lhs, rhs] = lp.sides(line);
      if (lhs.size() != 2) lp.fail("expected '<t> <state> = <controls>'");
      const TabularProblem::Key2 key{lp.time(lhs[0]), lhs[1]};
      if (p.controls_.count(key)) lp.fail("controls listed twice");
      p.controls_[key] = sorted_unique(std::move(rhs), lp, "control");
    } else if (section == "step") {
      auto [lhs, rhs] = lp.sides(line);
      if (lhs.size() != 3) lp.fail("expected '<t> <state> <ctrl> = <next states>'");
      step_rows.push_back({{lp.time(lhs[0]), lhs[1], lhs[2]}, {std::move(rhs), line_no}});
    } else if (section == "reward") {
      auto [lhs, rhs] = lp.sides(line);
      if (rhs.size() != 1) lp.fail("expected a single reward value");
      const double r = lp.real(rhs[0]);
      if (lhs.size() == 4) p.rewards_[{lp.time(lhs[0]), lhs[1], lhs[2], lhs[3]}] = r;
      else if (lhs.size() == 2) p.source_rewards_[{lp.time(lhs[0]), lhs[1]}] = r;
      else lp.fail("expected '<t> <state> <ctrl> <next> = <r>' or '<t> <state> = <r>'");
    } else {
      lp.fail("content outside a section");
    }
  }
  if (!have_kind) throw Error(ErrorCode::ParseError, "missing [kind] section");

  // Steps are interpreted once the kind is known, whatever the section order.
  for (auto& [key, row] : step_rows) {
    const LineParser lp(row.second);
    auto& words = row.first;
    if (p.steps_.count(key)) lp.fail("transition listed twice");
    const auto& [t, x, y] = key;
    const auto& ctrls = p.controls(t, x);
    if (!std::binary_search(ctrls.begin(), ctrls.end(), y)) lp.fail("transition for undeclared control '" + y + "'");
    switch (p.kind_) {
      case Kind::Deterministic:
        if (words.size() != 1) lp.fail("deterministic transitions have exactly one next state");
        p.steps_.emplace(key, Container<std::string>::single(words[0]));
        break;
      case Kind::NonDeterministic:
        p.steps_.emplace(key, Container<std::string>::set(words));
        break;
      case Kind::Stochastic: {
        std::vector<std::pair<std::string, double>> entries;
        for (const auto& w : words) {
          const auto colon = w.rfind(':');
          if (colon == std::string::npos) lp.fail("expected '<state>:<prob>', got '" + w + "'");
          entries.emplace_back(w.substr(0, colon), lp.real(w.substr(colon + 1)));
        }
        p.steps_.emplace(key, Container<std::string>::dist(SimpleProb<std::string>::raw(std::move(entries))));
        break;
      }
    }
  }
  for (const auto& [key, ctrls] : p.controls_)
    for (const auto& y : ctrls)
      if (!p.steps_.count({key.first, key.second, y}))
        throw Error(ErrorCode::ParseError, "no transition for t=" + std::to_string(key.first) + " x=" + key.second +
                                               " y=" + y);
  return p;
}

TabularProblem load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  return parse_problem(in);
}

}  // namespace sdp::examples
