#pragma once

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "renewalkit/renewalkit.hpp"

// Command-line frontend. `run_cli` is the whole program; main() only forwards
// argv so tests can drive it in-process.

namespace renewalkit::cli {

using nlohmann::json;

enum ExitCode : int { kOk = 0, kRuntimeError = 1, kValidationError = 2 };

/// Output of one experiment: the JSON body plus named CSV artifacts.
struct Outcome {
  json body;
  std::string summary;
  std::vector<std::pair<std::string, std::function<void(std::ostream&)>>> csv;
};

namespace detail {

inline DistributionSpec parse_dist(const std::string& field, const std::string& literal) {
  try {
    return DistributionSpec::parse(literal);
  } catch (const Error& e) {
    throw ConfigError(field + ": " + e.what());
  }
}

inline DistributionSpec parse_lifetime(const std::string& field, const std::string& literal) {
  auto d = parse_dist(field, literal);
  if (!d.is_lifetime())
    throw ConfigError(field + ": '" + literal + "' must be supported on (0, inf) with a finite mean");
  return d;
}

inline std::size_t as_count(const std::string& field, double v, std::size_t min_value) {
  if (!(v >= static_cast<double>(min_value)) || v != std::floor(v) || v > 1e15)
    throw ConfigError(field + ": expected an integer >= " + std::to_string(min_value));
  return static_cast<std::size_t>(v);
}

inline double positive(const std::string& field, double v) {
  if (!(v > 0) || !std::isfinite(v)) throw ConfigError(field + ": must be finite and > 0");
  return v;
}

inline JointCycleSampler make_sampler(const std::string& x_literal, const std::string& reward) {
  if (reward == "cauchy-triangle") return CauchyTriangle{};
  if (x_literal.empty()) throw ConfigError("--x: required unless --reward cauchy-triangle");
  const auto x = parse_lifetime("--x", x_literal);
  static const std::map<std::string, RewardFunction> functions = {
      {"one", RewardFunction::one},
      {"x", RewardFunction::length},
      {"x2", RewardFunction::square},
      {"halfx2", RewardFunction::half_square}};
  if (auto it = functions.find(reward); it != functions.end()) return FunctionOfX{x, it->second};
  return Independent{x, parse_dist("--reward", reward)};
}

inline AccrualMode make_mode(const std::string& mode) {
  if (mode == "end") return EndOfCycle{};
  if (mode == "start") return StartOfCycle{};
  if (mode == "ramp") return Partial{PiecewiseLinearShape::ramp()};
  if (mode == "triangle") return Partial{PiecewiseLinearShape::triangle()};
  throw ConfigError("--mode: expected end|start|ramp|triangle, got '" + mode + "'");
}

inline std::vector<double> default_checkpoints(double t_max) {
  std::vector<double> cps;
  for (double t = 10.0; t < t_max; t *= 10.0) cps.push_back(t);
  cps.push_back(t_max);
  return cps;
}

inline std::string fmt(double v) { return renewalkit::detail::format_number(v); }

inline std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

/// Every option of `app` with its resolved value(s), as strings.
inline json resolved_options(const CLI::App& app) {
  json out = json::object();
  for (const CLI::Option* opt : app.get_options()) {
    const auto& names = opt->get_lnames();
    if (names.empty() || names.front() == "help" || names.front() == "config") continue;
    const auto& res = opt->results();
    if (res.empty()) {
      if (opt->get_default_str().empty()) continue;
      out[names.front()] = opt->get_default_str();
    } else if (res.size() == 1) {
      out[names.front()] = res.front();
    } else {
      out[names.front()] = res;
    }
  }
  return out;
}

}  // namespace detail

/// Parses `args` (without the program name), runs the experiment, writes
/// artifacts and returns the process exit status.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace detail;

  CLI::App app{"renewalkit: renewal reward simulation and estimation", "renewalkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Config file of key = value lines ([section] per subcommand)");

  std::uint64_t seed = 1;
  std::string out_dir;
  std::string format = "json";
  std::size_t threads = 1;
  app.add_option("--seed", seed, "Base seed")->envname("RENEWALKIT_SEED")->capture_default_str();
  app.add_option("--out", out_dir, "Directory for JSON/CSV artifacts");
  app.add_option("--format", format, "json|csv|both")
      ->check(CLI::IsMember({"json", "csv", "both"}))
      ->capture_default_str();
  app.add_option("--threads", threads, "Worker threads for ensembles (0 = all cores)")
      ->capture_default_str();

  std::function<Outcome()> action;
  std::string experiment;

  auto command = [&](const std::string& name, const std::string& description) {
    return app.add_subcommand(name, description);
  };

  // Shared per-command storage.
  std::string x_lit, reward = "one", mode = "end";
  double t_max = 1e4, t = 1e3, reps = 200, cycles = 1e5, n_max = 1000, y_reps = 1e4;
  std::vector<double> checkpoints;

  // rate ---------------------------------------------------------------------
  {
    auto* sub = command("rate", "Pathwise reward rate R(t)/t along one path");
    sub->add_option("--x", x_lit, "Cycle-length distribution literal");
    sub->add_option("--reward", reward, "one|x|x2|halfx2|cauchy-triangle|DIST")->capture_default_str();
    sub->add_option("--mode", mode, "end|start|ramp|triangle")->capture_default_str();
    sub->add_option("--t-max", t_max, "Horizon")->capture_default_str();
    sub->add_option("--checkpoints", checkpoints, "Comma-separated checkpoint times")->delimiter(',');
    sub->final_callback([&] {
      action = [&]() -> Outcome {
        const auto sampler = make_sampler(x_lit, reward);
        const auto accrual = make_mode(mode);
        positive("--t-max", t_max);
        auto cps = checkpoints.empty() ? default_checkpoints(t_max) : checkpoints;
        for (std::size_t i = 0; i < cps.size(); ++i) {
          if (!(cps[i] > 0 && cps[i] <= t_max) || (i > 0 && !(cps[i] > cps[i - 1])))
            throw ConfigError("--checkpoints: must be increasing within (0, t-max]");
        }
        RngStream rng(seed, 0);
        const auto rp = realize_rewarded_path(sampler, t_max, rng);
        const auto trace = pathwise_rate(rp, accrual, cps);
        const double point = reward_rate(rp, accrual, t_max);
        Outcome o;
        o.body = {{"point", point},
                  {"n_cycles", rp.path().size()},
                  {"heavy_tail_flag", sampler.heavy_tailed()},
                  {"sampler", sampler.describe()},
                  {"mode", describe(accrual)},
                  {"t_max", t_max},
                  {"trace", to_json(trace)}};
        if (rp.path().size() >= 2) {
          const auto regen = regenerative_ratio(rp, sampler.heavy_tailed());
          o.body["stderr"] = regen.std_error;
          o.body["ci_low"] = regen.ci_low;
          o.body["ci_high"] = regen.ci_high;
          o.body["regenerative"] = to_json(regen);
        }
        o.summary = "rate: R(t)/t = " + fmt(point) + " at t = " + fmt(t_max) + " (" +
                    std::to_string(rp.path().size()) + " renewals)";
        o.csv.emplace_back("rate_trace.csv", [trace](std::ostream& os) { write_trace_csv(os, trace); });
        o.csv.emplace_back("rate_path.csv", [rp, desc = sampler.describe()](std::ostream& os) {
          write_rewarded_csv(os, rp, desc);
        });
        return o;
      };
    });
  }

  // ensemble -----------------------------------------------------------------
  {
    auto* sub = command("ensemble", "Ensemble estimate of E[R(t)]/t");
    sub->add_option("--x", x_lit, "Cycle-length distribution literal");
    sub->add_option("--reward", reward, "one|x|x2|halfx2|cauchy-triangle|DIST")->capture_default_str();
    sub->add_option("--mode", mode, "end|start|ramp|triangle")->capture_default_str();
    sub->add_option("--t", t, "Evaluation time")->capture_default_str();
    sub->add_option("--reps", reps, "Replications")->capture_default_str();
    sub->final_callback([&] {
      action = [&]() -> Outcome {
        const auto sampler = make_sampler(x_lit, reward);
        const auto accrual = make_mode(mode);
        positive("--t", t);
        const auto n = as_count("--reps", reps, 2);
        const auto est = ensemble_mean_rate(sampler, accrual, t, n, seed, threads);
        Outcome o;
        o.body = to_json(est);
        o.body["sampler"] = sampler.describe();
        o.body["mode"] = describe(accrual);
        o.body["t"] = t;
        o.summary = "ensemble: E[R(t)]/t ~ " + fmt(est.mean) + " +/- " + fmt(est.std_error) +
                    " over " + std::to_string(n) + " replications";
        return o;
      };
    });
  }

  // ratio --------------------------------------------------------------------
  {
    auto* sub = command("ratio", "Regenerative ratio estimate from i.i.d. cycles");
    sub->add_option("--x", x_lit, "Cycle-length distribution literal");
    sub->add_option("--reward", reward, "one|x|x2|halfx2|cauchy-triangle|DIST")->capture_default_str();
    sub->add_option("--cycles", cycles, "Number of cycles")->capture_default_str();
    sub->final_callback([&] {
      action = [&]() -> Outcome {
        const auto sampler = make_sampler(x_lit, reward);
        const auto n = as_count("--cycles", cycles, 2);
        RngStream rng(seed, 0);
        std::vector<CycleSample> drawn;
        drawn.reserve(n);
        for (std::size_t i = 0; i < n; ++i) drawn.push_back(sampler.draw(rng));
        const auto est = regenerative_ratio(drawn, sampler.heavy_tailed());
        Outcome o;
        o.body = to_json(est);
        o.body["sampler"] = sampler.describe();
        o.summary = "ratio: " + fmt(est.point) + " [" + fmt(est.ci_low) + ", " + fmt(est.ci_high) +
                    "] from " + std::to_string(n) + " cycles";
        return o;
      };
    });
  }

  // wald ---------------------------------------------------------------------
  {
    auto* sub = command("wald", "Wald's equation check at the stopping time N(t)+1");
    sub->add_option("--x", x_lit, "Interarrival distribution literal")->required();
    sub->add_option("--t", t, "Evaluation time")->capture_default_str();
    sub->add_option("--reps", reps, "Replications")->capture_default_str();
    sub->final_callback([&] {
      action = [&]() -> Outcome {
        const JointCycleSampler sampler(FunctionOfX{parse_lifetime("--x", x_lit), RewardFunction::one});
        positive("--t", t);
        const auto n = as_count("--reps", reps, 1);
        const auto w = wald_check(sampler, t, n, seed, threads);
        Outcome o;
        o.body = to_json(w);
        o.body["point"] = w.mean_cycle_sum;
        o.body["t"] = t;
        o.summary = "wald: E[S_{N(t)+1}] = " + fmt(w.mean_cycle_sum) + " vs E[N(t)+1]E[X] = " +
                    fmt(w.predicted()) + " (gap " + fmt(w.relative_gap) + ")";
        return o;
      };
    });
  }

  // as-vs-mean ---------------------------------------------------------------
  {
    auto* sub = command("as-vs-mean", "Y_n: almost-sure limit 0 versus mean 1");
    sub->add_option("--n-max", n_max, "Largest n")->capture_default_str();
    sub->add_option("--reps", y_reps, "Draws per n")->capture_default_str();
    sub->final_callback([&] {
      action = [&]() -> Outcome {
        const auto nm = as_count("--n-max", n_max, 1);
        const auto r = as_count("--reps", y_reps, 1);
        const auto rows = as_vs_mean_demo(nm, seed, r);
        Outcome o;
        json arr = json::array();
        for (const auto& row : rows) {
          arr.push_back({{"n", row.n},
                         {"analytic_mean", row.analytic_mean},
                         {"nonzero_probability", row.nonzero_probability},
                         {"empirical_nonzero", row.empirical_nonzero},
                         {"empirical_mean", row.empirical_mean}});
        }
        o.body = {{"rows", arr}, {"n_reps", r}, {"point", rows.back().empirical_nonzero}};
        o.summary = "as-vs-mean: at n = " + std::to_string(rows.back().n) + ", E[Y_n] = " +
                    fmt(rows.back().analytic_mean) + ", P[Y_n != 0] observed " +
                    fmt(rows.back().empirical_nonzero);
        o.csv.emplace_back("as_vs_mean.csv", [rows](std::ostream& os) {
          os << "n,analytic_mean,nonzero_probability,empirical_nonzero,empirical_mean\n";
          for (const auto& row : rows)
            os << row.n << ',' << fmt(row.analytic_mean) << ',' << fmt(row.nonzero_probability)
               << ',' << fmt(row.empirical_nonzero) << ',' << fmt(row.empirical_mean) << '\n';
        });
        return o;
      };
    });
  }

  // replacement / replacement-opt -------------------------------------------
  std::string life_lit;
  double T = 0, c = 1, cf = 5, tol = 1e-6;
  std::vector<double> bracket;
  {
    auto* sub = command("replacement", "Age-replacement cost rate, analytic and simulated");
    sub->add_option("--life", life_lit, "Lifetime distribution literal")->required();
    sub->add_option("--T", T, "Replacement age (inf for failure-only)")->required();
    sub->add_option("--c", c, "Preventive replacement cost")->capture_default_str();
    sub->add_option("--cf", cf, "Failure replacement cost")->capture_default_str();
    sub->add_option("--t-max", t_max, "Simulation horizon")->capture_default_str();
    sub->final_callback([&] {
      action = [&]() -> Outcome {
        const auto life = parse_lifetime("--life", life_lit);
        positive("--t-max", t_max);
        if (!(T > 0)) throw ConfigError("--T: must be > 0");
        if (!(c > 0 && c <= cf)) throw ConfigError("--c: need 0 < c <= cf");
        const ReplacementPolicy policy(T, c, cf);
        const double g = replacement_cost_rate(policy, life);
        const auto sim = simulate_replacement(policy, life, t_max, seed);
        Outcome o;
        o.body = to_json(sim.regenerative);
        o.body["point"] = sim.cost_rate;
        o.body["analytic_cost_rate"] = g;
        o.body["T"] = T;
        o.body["t_max"] = t_max;
        o.summary = "replacement: simulated cost rate " + fmt(sim.cost_rate) + ", analytic " + fmt(g);
        return o;
      };
    });
  }
  {
    auto* sub = command("replacement-opt", "Optimal age-replacement T (grid scan + golden-section refinement)");
    sub->add_option("--life", life_lit, "Lifetime distribution literal")->required();
    sub->add_option("--c", c, "Preventive replacement cost")->capture_default_str();
    sub->add_option("--cf", cf, "Failure replacement cost")->capture_default_str();
    sub->add_option("--bracket", bracket, "T_lo,T_hi")->delimiter(',')->expected(2)->required();
    sub->add_option("--tol", tol, "Absolute tolerance on T")->capture_default_str();
    sub->add_option("--t-max", t_max, "Horizon of the confirming simulation")->capture_default_str();
    sub->final_callback([&] {
      action = [&]() -> Outcome {
        const auto life = parse_lifetime("--life", life_lit);
        if (!(c > 0 && c < cf)) throw InvalidCosts("--c/--cf: optimization needs 0 < c < cf");
        if (!(bracket[0] > 0 && bracket[0] < bracket[1] && std::isfinite(bracket[1])))
          throw ConfigError("--bracket: need 0 < T_lo < T_hi < inf");
        positive("--tol", tol);
        positive("--t-max", t_max);
        const auto opt = optimize_replacement(life, c, cf, bracket[0], bracket[1], tol);
        const auto sim = simulate_replacement(ReplacementPolicy(opt.T, c, cf), life, t_max, seed);
        Outcome o;
        o.body = to_json(sim.regenerative);
        o.body["T_star"] = opt.T;
        o.body["g_star"] = opt.g;
        o.body["monotone"] = opt.monotone;
        o.body["boundary"] = to_string(opt.boundary);
        o.body["iterations"] = opt.iterations;
        o.body["simulated_cost_rate"] = sim.cost_rate;
        o.body["point"] = opt.g;
        o.summary = "replacement-opt: T* = " + fmt(opt.T) + ", g* = " + fmt(opt.g) +
                    (opt.monotone ? " (boundary)" : "") + ", simulated " + fmt(sim.cost_rate);
        return o;
      };
    });
  }

  // alternating --------------------------------------------------------------
  std::string on_lit, off_lit;
  {
    auto* sub = command("alternating", "Long-run ON fraction of an alternating renewal process");
    sub->add_option("--on", on_lit, "ON-period distribution literal")->required();
    sub->add_option("--off", off_lit, "OFF-period distribution literal")->required();
    sub->add_option("--t-max", t_max, "Horizon")->capture_default_str();
    sub->final_callback([&] {
      action = [&]() -> Outcome {
        const auto on = parse_lifetime("--on", on_lit);
        const auto off = parse_lifetime("--off", off_lit);
        positive("--t-max", t_max);
        const auto r = alternating_on_fraction(on, off, t_max, seed);
        Outcome o;
        o.body = {{"point", r.on_fraction},
                  {"off_fraction", r.off_fraction},
                  {"expected_on_fraction", r.expected_on_fraction},
                  {"n_cycles", r.n_cycles},
                  {"t_max", t_max}};
        o.summary = "alternating: ON fraction " + fmt(r.on_fraction) + " (limit " +
                    fmt(r.expected_on_fraction) + ")";
        return o;
      };
    });
  }

  // age-excess ---------------------------------------------------------------
  {
    auto* sub = command("age-excess", "Time averages of age, residual life and spread");
    sub->add_option("--x", x_lit, "Interarrival distribution literal")->required();
    sub->add_option("--t-max", t_max, "Horizon")->capture_default_str();
    sub->final_callback([&] {
      action = [&]() -> Outcome {
        const auto x = parse_lifetime("--x", x_lit);
        positive("--t-max", t_max);
        const auto r = age_excess_averages(x, t_max, seed);
        Outcome o;
        o.body = {{"point", r.age_average},
                  {"stderr", r.age_std_error},
                  {"ci_low", r.age_average - kZ95 * r.age_std_error},
                  {"ci_high", r.age_average + kZ95 * r.age_std_error},
                  {"residual_average", r.residual_average},
                  {"spread_average", r.spread_average},
                  {"mean_interarrival", r.mean_interarrival},
                  {"n_cycles", r.n_renewals},
                  {"t_max", t_max}};
        o.body["age_limit"] = r.age_limit ? json(*r.age_limit) : json(nullptr);
        o.body["spread_limit"] = r.spread_limit ? json(*r.spread_limit) : json(nullptr);
        o.summary = "age-excess: age " + fmt(r.age_average) + ", residual " +
                    fmt(r.residual_average) + ", spread " + fmt(r.spread_average) + " vs E[X] " +
                    fmt(r.mean_interarrival);
        return o;
      };
    });
  }

  // queue --------------------------------------------------------------------
  std::string arrival_lit, service_lit;
  double cycles_queue = 1e4;
  {
    auto* sub = command("queue", "GI/GI/1 simulation and Little's law check");
    sub->add_option("--arrival", arrival_lit, "Interarrival distribution literal")->required();
    sub->add_option("--service", service_lit, "Service distribution literal")->required();
    sub->add_option("--cycles", cycles_queue, "Complete regeneration cycles")->capture_default_str();
    sub->final_callback([&] {
      action = [&]() -> Outcome {
        const auto arrival = parse_lifetime("--arrival", arrival_lit);
        const auto service = parse_lifetime("--service", service_lit);
        if (!(*mean(service) < *mean(arrival)))
          throw ConfigError("--service: mean service must be below mean interarrival (rho < 1)");
        const auto n = as_count("--cycles", cycles_queue, 1);
        const auto trace = gg1_simulate(arrival, service, n, seed);
        const auto rep = little_check(trace);
        Outcome o;
        o.body = to_json(rep);
        o.body["point"] = rep.L;
        o.summary = "queue: L = " + fmt(rep.L) + ", lambda T = " + fmt(rep.lambda * rep.T) +
                    ", cycle identity residual " + fmt(rep.identity_residual);
        o.csv.emplace_back("queue_trace.csv", [trace](std::ostream& os) { write_queue_csv(os, trace); });
        return o;
      };
    });
  }

  // counterexample -----------------------------------------------------------
  std::vector<double> probes = {0.0, 0.25, 0.5, 0.75, 1.0};
  double cycles_cx = 1e5;
  {
    auto* sub = command("counterexample", "Cauchy partial-reward counterexample");
    sub->add_option("--cycles", cycles_cx, "Number of unit cycles")->capture_default_str();
    sub->add_option("--probes", probes, "Offsets in [0,1] to probe in every cycle")->delimiter(',');
    sub->final_callback([&] {
      action = [&]() -> Outcome {
        const auto n = as_count("--cycles", cycles_cx, 1);
        for (double u : probes)
          if (!(u >= 0 && u <= 1)) throw ConfigError("--probes: offsets must lie in [0, 1]");
        const auto r = cauchy_counterexample(n, seed, probes);
        Outcome o;
        o.body = {{"point", r.running_mean.back()},
                  {"n_cycles", r.n_cycles},
                  {"heavy_tail_flag", true},
                  {"median", sample_quantile(r.half_values, 0.5)},
                  {"iqr", sample_quantile(r.half_values, 0.75) - sample_quantile(r.half_values, 0.25)},
                  {"integers_zero", r.integers_zero},
                  {"max_abs_at_integers", r.max_abs_at_integers},
                  {"ks_statistic", r.ks_statistic},
                  {"ks_critical_1pct", r.ks_critical},
                  {"ks_pass", r.ks_pass},
                  {"max_abs_running_mean", r.max_abs_running_mean},
                  {"running_mean_window", {r.window_lo, r.window_hi}}};
        o.summary = std::string("counterexample: integers-are-zero ") +
                    (r.integers_zero ? "PASS" : "FAIL") + ", KS " + (r.ks_pass ? "PASS" : "FAIL") +
                    " (D = " + fmt(r.ks_statistic) + "), max |running mean| " +
                    fmt(r.max_abs_running_mean);
        o.csv.emplace_back("counterexample_probes.csv", [r](std::ostream& os) {
          os << "cycle,offset,time,value\n";
          for (const auto& p : r.probes)
            os << p.cycle << ',' << fmt(p.offset) << ',' << fmt(static_cast<double>(p.cycle) + p.offset)
               << ',' << fmt(p.value) << '\n';
        });
        o.csv.emplace_back("counterexample_running_mean.csv", [r](std::ostream& os) {
          os << "checkpoint,value\n";
          for (std::size_t i = 0; i < r.running_mean.size(); ++i)
            os << i + 1 << ',' << fmt(r.running_mean[i]) << '\n';
        });
        return o;
      };
    });
  }

  // --------------------------------------------------------------------------
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidationError;
  } catch (const Error& e) {
    err << "error: " << e.name() << ": " << e.what() << "\n";
    return kValidationError;
  }

  try {
    if ((format == "csv" || format == "both") && out_dir.empty())
      throw ConfigError("--format: csv output requires --out");
    experiment = app.get_subcommands().front()->get_name();
    Outcome outcome = action();

    json doc = json::object();
    doc["experiment"] = experiment;
    doc["seed"] = seed;
    doc["algorithm"] = kRngAlgorithm;
    doc["stream_derivation"] = kStreamDerivation;
    doc["version"] = RENEWALKIT_VERSION;
    json config = resolved_options(app);
    config["command"] = experiment;
    config.update(resolved_options(*app.get_subcommand(experiment)));
    doc["config"] = config;
    doc.update(outcome.body);
    doc["metadata"] = {{"generated_at", timestamp()}};

    if (out_dir.empty()) {
      out << doc.dump(2) << "\n";
      err << outcome.summary << "\n";
    } else {
      std::filesystem::create_directories(out_dir);
      const std::filesystem::path dir(out_dir);
      if (format != "csv") {
        std::ofstream f(dir / (experiment + ".json"));
        f << doc.dump(2) << "\n";
      }
      if (format != "json") {
        for (const auto& [name, write] : outcome.csv) {
          std::ofstream f(dir / name);
          write(f);
        }
      }
      out << outcome.summary << "\n";
    }
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.name() << ": " << e.what() << "\n";
    const auto& n = e.name();
    const bool validation = n == "ConfigError" || n == "InvalidParameter" || n == "ParseError" ||
                            n == "InvalidRole" || n == "InvalidCosts";
    return validation ? kValidationError : kRuntimeError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
}

}  // namespace renewalkit::cli
