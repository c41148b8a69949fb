#include "sdp/cli.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sdp/examples/cylinder.hpp"
#include "sdp/examples/knapsack.hpp"
#include "sdp/examples/problem_file.hpp"
#include "sdp/laws.hpp"
#include "sdp/oracle.hpp"
#include "sdp/trajectory.hpp"

namespace sdp::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string problem;
  Time t0 = 0;
  Steps steps = 0;
  std::string measure;
  double slip = 0.2;
  std::string start;
  std::string format = "text";
  bool parallel = false;
  std::uint64_t cap = kDefaultCap;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  std::string mode = "restricted";
  std::optional<Time> max_t;

  Exec exec() const { return parallel ? Exec::Parallel : Exec::Serial; }
  bool json_out() const { return format == "json"; }
};

/// Ends a command with an exit code after printing `message` to stderr.
struct Stop {
  int code;
  std::string message;
};

template <class F>
int with_problem(const Options& o, F&& f) {
  auto go = [&](const auto& base) -> int {
    using Base = std::decay_t<decltype(base)>;
    using S = typename Base::State;
    using C = typename Base::Ctrl;
    const Problem<S, C>& p = base;
    if (o.measure.empty()) return f(p);
    auto m = Measure::by_name(o.measure);
    if (!m) throw Stop{kIllPosed, "unknown measure '" + o.measure + "'"};
    const Remeasured<S, C> remeasured(p, *m);
    return f(static_cast<const Problem<S, C>&>(remeasured));
  };
  if (o.problem == "cyl-det") return go(examples::cylinder_det());
  if (o.problem == "cyl-time") return go(examples::cylinder_timedep());
  if (o.problem == "cyl-nondet") return go(examples::cylinder_nondet());
  if (o.problem == "cyl-stoch") return go(examples::cylinder_stoch(o.slip));
  if (o.problem == "knapsack") return go(examples::shipped_knapsack());
  return go(examples::load_problem_file(o.problem));
}

template <class S>
std::optional<S> find_state(const std::vector<S>& layer, const std::string& key) {
  for (const S& x : layer)
    if (to_key(x) == key) return x;
  return std::nullopt;
}

std::string header(const Options& o, Kind kind, const std::string& measure) {
  std::ostringstream h;
  h << "# problem=" << o.problem << " kind=" << to_string(kind) << " measure=" << measure << " t0=" << o.t0
    << " steps=" << o.steps;
  return h.str();
}

json report_json(const ValidationReport& r) {
  json v = json::array();
  for (const auto& x : r.violations)
    v.push_back({{"kind", to_string(x.kind)}, {"t", x.t}, {"x", x.x}, {"y", x.y}, {"detail", x.detail}});
  return {{"violations", v}};
}

/// Transition checks on layers t0..t0+n plus: some state of layer t0 is viable for n steps.
template <Keyed S, Keyed C>
ValidationReport well_posedness(const Problem<S, C>& p, Time t0, Steps n) {
  ValidationReport report = validate(p, t0 + n);
  if (!report.ok()) return report;
  const auto model = Model<S, C>::for_horizon(p, t0, n);
  if (model.domain(t0, n).empty())
    report.violations.push_back({ViolationKind::NotViable, t0, "-", "-",
                                 "no reachable state of layer " + std::to_string(t0) + " is viable for " +
                                     std::to_string(n) + " steps"});
  return report;
}

int print_ill_posed(const Options& o, const ValidationReport& report, std::ostream& out, std::ostream& err) {
  if (o.json_out())
    out << report_json(report).dump(2) << "\n";
  else
    out << report.to_text();
  err << "problem is not well-posed (" << report.violations.size() << " violation(s))\n";
  return kIllPosed;
}

template <Keyed S, Keyed C>
int cmd_solve(const Problem<S, C>& p, const Options& o, std::ostream& out, std::ostream& err) {
  const ValidationReport report = well_posedness(p, o.t0, o.steps);
  if (!report.ok()) return print_ill_posed(o, report, out, err);

  const auto model = Model<S, C>::for_horizon(p, o.t0, o.steps, o.exec());
  std::optional<S> start;
  if (!o.start.empty()) {
    start = find_state(model.graph().layer(o.t0).states(), o.start);
    if (!start || !model.in_domain(o.t0, o.steps, model.graph().index_of(o.t0, *start)))
      throw Stop{kDomain, "start " + o.start + " is not reachable and viable for " + std::to_string(o.steps) +
                              " steps at t=" + std::to_string(o.t0)};
  }
  const auto sol = backwards_induction(model, o.t0, o.steps, {o.exec(), Memory::Full, false});

  auto keep = [&](std::size_t k, const S& x) { return k != 0 || !start || x == *start; };
  if (o.json_out()) {
    json blocks = json::array();
    for (std::size_t k = 0; k < sol.policies.policies.size(); ++k) {
      const auto& policy = sol.policies.policies[k];
      json entries = json::array();
      for (const auto& [x, y] : policy.table)
        if (keep(k, x)) entries.push_back({{"x", to_key(x)}, {"y", to_key(y)}, {"value", sol.values[k].at(x)}});
      blocks.push_back({{"t", policy.t}, {"steps", policy.steps_remaining}, {"entries", entries}});
    }
    out << json{{"problem", o.problem},
                {"kind", to_string(p.kind())},
                {"measure", p.measure().name()},
                {"t0", o.t0},
                {"steps", o.steps},
                {"policies", blocks}}
               .dump(2)
        << "\n";
    return kOk;
  }
  out << header(o, p.kind(), p.measure().name()) << "\n";
  for (std::size_t k = 0; k < sol.policies.policies.size(); ++k) {
    const auto& policy = sol.policies.policies[k];
    out << "t=" << policy.t << " steps=" << policy.steps_remaining << "\n";
    for (const auto& [x, y] : policy.table)
      if (keep(k, x)) out << to_key(x) << " -> " << to_key(y) << " : " << to_key(sol.values[k].at(x)) << "\n";
  }
  return kOk;
}

template <Keyed S, Keyed C>
int cmd_trajectories(const Problem<S, C>& p, const Options& o, std::ostream& out, std::ostream& err) {
  const ValidationReport report = validate(p, o.t0 + o.steps);
  if (!report.ok()) return print_ill_posed(o, report, out, err);

  const auto model = Model<S, C>::for_horizon(p, o.t0, o.steps, o.exec());
  const auto start = find_state(model.graph().layer(o.t0).states(), o.start);
  if (!start || !model.in_domain(o.t0, o.steps, model.graph().index_of(o.t0, *start)))
    throw Stop{kDomain, "start " + o.start + " is not reachable and viable for " + std::to_string(o.steps) +
                            " steps at t=" + std::to_string(o.t0)};
  const auto sol = backwards_induction(model, o.t0, o.steps, {o.exec(), Memory::Streaming, false});
  const auto trajs = state_ctrl_trj(p, sol.policies, o.t0, o.steps, *start);
  const double aggregate = p.meas(fmap([&](const auto& tr) { return trajectory_value(p, tr); }, trajs));

  if (o.json_out()) {
    json list = json::array();
    for (const auto& [tr, prob] : trajs.weighted()) {
      json path = json::array();
      for (const auto& s : tr.steps) path.push_back({{"t", s.t}, {"x", to_key(s.x)}, {"y", to_key(s.y)}});
      json entry{{"path", path}, {"final", to_key(tr.final_state)}, {"value", trajectory_value(p, tr)}};
      if (trajs.kind() == Kind::Stochastic) entry["prob"] = prob;
      list.push_back(entry);
    }
    out << json{{"problem", o.problem},
                {"kind", to_string(p.kind())},
                {"measure", p.measure().name()},
                {"start", o.start},
                {"t0", o.t0},
                {"steps", o.steps},
                {"trajectories", list},
                {"aggregate", aggregate}}
               .dump(2)
        << "\n";
    return kOk;
  }
  out << header(o, p.kind(), p.measure().name()) << " start=" << o.start << "\n";
  out << to_text(p, trajs);
  out << "# aggregate " << p.measure().name() << " : " << to_key(aggregate) << "\n";
  return kOk;
}

struct CheckLine {
  std::string name;
  bool pass;
  std::string detail;
};

template <Keyed S, Keyed C>
int cmd_verify(const Problem<S, C>& p, const Options& o, std::ostream& out, std::ostream&) {
  std::vector<CheckLine> lines;
  const ValidationReport report = well_posedness(p, o.t0, o.steps);
  lines.push_back({"validate", report.ok(), report.to_text()});

  for (const auto& law : container_laws(p.kind(), o.trials, o.seed))
    lines.push_back({"law " + law.name + " kind=" + std::string(to_string(law.kind)) + " trials=" +
                         std::to_string(law.trials),
                     law.pass, law.detail});
  const LawResult mono = measure_monotonicity(p.measure(), p.kind(), o.trials, o.seed);
  lines.push_back({mono.name + " kind=" + std::string(to_string(mono.kind)) + " trials=" + std::to_string(mono.trials),
                   mono.pass, mono.detail});

  if (report.ok()) {
    const CheckMode mode = o.mode == "exhaustive" ? CheckMode::Exhaustive : CheckMode::Restricted;
    const auto model = Model<S, C>::for_horizon(p, o.t0, o.steps, o.exec());
    const SolveOptions solve{o.exec(), Memory::Full, false};
    const auto sol = backwards_induction(model, o.t0, o.steps, solve);
    const CheckReport opt = check_opt_policy_seq(model, sol.policies, o.cap, mode);
    lines.push_back({"opt-policy-seq t=" + std::to_string(o.t0) + " n=" + std::to_string(o.steps), opt.pass,
                     opt.to_text()});
    for (Steps n = 0; n < o.steps; ++n) {
      const auto next = backwards_induction(model, o.t0 + 1, n, solve);
      const CheckReport bellman = check_bellman(model, next.policies, o.cap, mode);
      lines.push_back({"bellman t=" + std::to_string(o.t0) + " n=" + std::to_string(n) + "->" + std::to_string(n + 1),
                       bellman.pass, bellman.to_text()});
    }
  }

  const bool all = std::all_of(lines.begin(), lines.end(), [](const CheckLine& l) { return l.pass; });
  if (o.json_out()) {
    json checks = json::array();
    for (const auto& l : lines) checks.push_back({{"name", l.name}, {"pass", l.pass}, {"detail", l.detail}});
    out << json{{"problem", o.problem}, {"checks", checks}, {"pass", all}}.dump(2) << "\n";
  } else {
    out << header(o, p.kind(), p.measure().name()) << "\n";
    for (const auto& l : lines) {
      out << l.name << ": " << (l.pass ? "PASS" : "FAIL");
      if (!l.pass && !l.detail.empty()) out << " " << l.detail;
      out << "\n";
      if (!l.pass && l.name == "validate") out << l.detail;
    }
  }
  return all ? kOk : kInternal;
}

template <Keyed S, Keyed C>
int cmd_validate(const Problem<S, C>& p, const Options& o, std::ostream& out, std::ostream& err) {
  const Time max_t = o.max_t.value_or(p.horizon_hint().value_or(8));
  const ValidationReport report = validate(p, max_t);
  if (!report.ok()) return print_ill_posed(o, report, out, err);
  if (o.json_out())
    out << report_json(report).dump(2) << "\n";
  else
    out << "OK max_t=" << max_t << "\n";
  return kOk;
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::IllPosed:
    case ErrorCode::ParseError:
    case ErrorCode::InvalidSlip:
    case ErrorCode::InvalidDistribution:
    case ErrorCode::UncheckedMeasure:
    case ErrorCode::KindMismatch:
      return kIllPosed;
    case ErrorCode::DomainMiss:
    case ErrorCode::NotViable:
    case ErrorCode::InvalidState:
      return kDomain;
    case ErrorCode::TooLarge:
      return kResourceCap;
    default:
      return kInternal;
  }
}

}  // namespace

const std::vector<std::string>& example_ids() {
  static const std::vector<std::string> ids{"cyl-det", "cyl-time", "cyl-nondet", "cyl-stoch", "knapsack"};
  return ids;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-horizon sequential decision problems: backwards induction, viability, trajectories"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub, bool needs_steps) {
    sub->add_option("problem", o.problem, "example id or problem file")->required();
    sub->add_option("--t0", o.t0, "start time");
    auto* steps = sub->add_option("--steps,-n", o.steps, "number of decision steps");
    if (needs_steps) steps->required();
    sub->add_option("--measure", o.measure, "override the measure")->check(CLI::IsMember({"expected", "worst", "best"}));
    sub->add_option("--slip", o.slip, "slip probability for cyl-stoch");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_flag("--parallel", o.parallel, "use the OpenMP kernels");
  };

  auto* solve = app.add_subcommand("solve", "run backwards induction and print the policy sequence");
  common(solve, true);
  solve->add_option("--start", o.start, "only print this start state in the first block");

  auto* trajectories = app.add_subcommand("trajectories", "print every trajectory of the optimal policy sequence");
  common(trajectories, true);
  trajectories->add_option("--start", o.start, "start state")->required();

  auto* verify = app.add_subcommand("verify", "run the law suites and the brute-force optimality checks");
  common(verify, true);
  verify->add_option("--cap", o.cap, "maximum (policy sequence, start) pairs to evaluate");
  verify->add_option("--trials", o.trials, "randomized trials per law");
  verify->add_option("--seed", o.seed, "seed for the law suites");
  verify->add_option("--mode", o.mode, "policy enumeration")->check(CLI::IsMember({"restricted", "exhaustive"}));

  auto* validate_cmd = app.add_subcommand("validate", "check well-posedness of every transition up to --max-t");
  common(validate_cmd, false);
  validate_cmd->add_option("--max-t", o.max_t, "last layer whose transitions are checked");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kIllPosed;
  }

  try {
    return with_problem(o, [&](const auto& p) -> int {
      if (solve->parsed()) return cmd_solve(p, o, out, err);
      if (trajectories->parsed()) return cmd_trajectories(p, o, out, err);
      if (verify->parsed()) return cmd_verify(p, o, out, err);
      return cmd_validate(p, o, out, err);
    });
  } catch (const Stop& s) {
    err << s.message << "\n";
    return s.code;
  } catch (const Error& e) {
    err << e.what() << "\n";
    if (e.code() == ErrorCode::TooLarge) err << "lower --steps or raise --cap\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace sdp::cli
