#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "renewalkit/distributions.hpp"
#include "renewalkit/error.hpp"
#include "renewalkit/estimators.hpp"
#include "renewalkit/golden_section.hpp"
#include "renewalkit/renewal.hpp"
#include "renewalkit/reward.hpp"

namespace renewalkit {

// ===========================================================================
// Age replacement

/// Replace at failure or at age T. Preventive replacement costs c, failure
/// replacement c_f. T may be +inf (failure replacement only).
class ReplacementPolicy {
 public:
  ReplacementPolicy(double T, double c, double c_f) : T_(T), c_(c), c_f_(c_f) {
    if (!(T_ > 0)) throw InvalidParameter("replacement age T must be > 0");
    if (!std::isfinite(c_) || !std::isfinite(c_f_) || !(c_ > 0) || !(c_ <= c_f_))
      throw InvalidCosts("replacement costs need 0 < c <= c_f");
  }

  double T() const noexcept { return T_; }
  double c() const noexcept { return c_; }
  double c_f() const noexcept { return c_f_; }

  AgeReplacementCost cost() const noexcept { return {T_, c_, c_f_}; }

 private:
  double T_, c_, c_f_;
};

/// Long-run cost rate g(T) = [c (1 - F(T)) + c_f F(T)] / E[min(X, T)].
inline double replacement_cost_rate(const ReplacementPolicy& policy, const DistributionSpec& life) {
  require_lifetime(life, "lifetime");
  const double F = std::isinf(policy.T()) ? 1.0 : cdf(life, policy.T());
  return (policy.c() * (1.0 - F) + policy.c_f() * F) / limited_mean(life, policy.T());
}

enum class BracketEnd { none, lower, upper };

inline const char* to_string(BracketEnd b) {
  switch (b) {
    case BracketEnd::none: return "none";
    case BracketEnd::lower: return "lower";
    case BracketEnd::upper: return "upper";
  }
  return "?";
}

struct ReplacementOptimum {
  double T = 0.0;
  double g = 0.0;
  /// Set when no interior minimum exists in the bracket; T is then the
  /// bracket end in `boundary`.
  bool monotone = false;
  BracketEnd boundary = BracketEnd::none;
  int iterations = 0;
};

/// Minimizes g over [T_lo, T_hi]: 1000-cell grid scan, then golden-section
/// search inside the cells around the best grid point.
inline ReplacementOptimum optimize_replacement(const DistributionSpec& life, double c, double c_f,
                                               double T_lo, double T_hi, double tol = 1e-6) {
  if (!(c > 0) || !(c < c_f)) throw InvalidCosts("optimization needs 0 < c < c_f");
  if (!(T_lo > 0) || !(T_lo < T_hi) || !std::isfinite(T_hi))
    throw InvalidParameter("bracket must satisfy 0 < T_lo < T_hi < inf");
  require_lifetime(life, "lifetime");

  auto g = [&](double T) { return replacement_cost_rate(ReplacementPolicy(T, c, c_f), life); };

  // g need not be unimodal (e.g. Pareto lives: a dip just above the scale,
  // then a hump), so locate the best grid cell first and refine inside it.
  constexpr int kGrid = 1000;
  const auto grid_T = [&](int i) { return i == kGrid ? T_hi : T_lo + (T_hi - T_lo) * i / kGrid; };
  int best = 0;
  double best_g = g(T_lo);
  for (int i = 1; i <= kGrid; ++i) {
    const double gi = g(grid_T(i));
    if (gi < best_g) best_g = gi, best = i;
  }
  auto found = golden_section_minimize(g, grid_T(std::max(best - 1, 0)), grid_T(std::min(best + 1, kGrid)), tol);
  if (best_g < found.fx) {
    found.x = grid_T(best);
    found.fx = best_g;
  }

  ReplacementOptimum out{found.x, found.fx, false, BracketEnd::none, found.iterations};
  const double snap = 10.0 * tol;
  if (T_hi - found.x <= snap && g(T_hi) <= found.fx) {
    out.T = T_hi;
    out.g = g(T_hi);
    out.boundary = BracketEnd::upper;
  } else if (found.x - T_lo <= snap && g(T_lo) <= found.fx) {
    out.T = T_lo;
    out.g = g(T_lo);
    out.boundary = BracketEnd::lower;
  }
  out.monotone = out.boundary != BracketEnd::none;
  return out;
}

struct ReplacementSimulation {
  double cost_rate = 0.0;  // R(t_max) / t_max
  RatioEstimate regenerative;
  std::size_t n_replacements = 0;
};

/// Renewal-reward simulation with cycle min(X, T) and cost c_f 1{X <= T} +
/// c 1{X > T}. Runs on stream 0 of `seed`.
inline ReplacementSimulation simulate_replacement(const ReplacementPolicy& policy,
                                                  const DistributionSpec& life, double t_max,
                                                  std::uint64_t seed) {
  const JointCycleSampler sampler(FunctionOfX{life, policy.cost()});
  RngStream rng(seed, 0);
  const auto rp = realize_rewarded_path(sampler, t_max, rng);
  ReplacementSimulation out;
  out.cost_rate = reward_rate(rp, EndOfCycle{}, t_max);
  out.regenerative = regenerative_ratio(rp);
  out.n_replacements = rp.path().size();
  return out;
}

// ===========================================================================
// Alternating renewal

struct AlternatingResult {
  double on_fraction = 0.0;
  double off_fraction = 0.0;
  double expected_on_fraction = 0.0;  // E[ON] / (E[ON] + E[OFF])
  std::size_t n_cycles = 0;
};

/// ON time in [0, t]: completed cycles plus min(ON_{N+1}, elapsed).
inline double on_time(const RewardedPath& rp, double t) {
  const std::size_t n = rp.path().count(t);
  const double elapsed = t - rp.path().epoch(n);
  return rp.reward_sum(n) + std::min(rp.cycles()[n].r, elapsed);
}

/// OFF time in [0, t] on the same path.
inline double off_time(const RewardedPath& rp, double t) {
  const std::size_t n = rp.path().count(t);
  double off = 0.0;
  for (std::size_t k = 0; k < n; ++k) off += rp.cycles()[k].x - rp.cycles()[k].r;
  const double elapsed = t - rp.path().epoch(n);
  return off + std::max(0.0, elapsed - rp.cycles()[n].r);
}

inline AlternatingResult alternating_on_fraction(const DistributionSpec& on,
                                                 const DistributionSpec& off, double t_max,
                                                 std::uint64_t seed) {
  const JointCycleSampler sampler(AlternatingOnOff{on, off});
  RngStream rng(seed, 0);
  const auto rp = realize_rewarded_path(sampler, t_max, rng);
  AlternatingResult out;
  out.on_fraction = on_time(rp, t_max) / t_max;
  out.off_fraction = off_time(rp, t_max) / t_max;
  out.expected_on_fraction = *mean(on) / (*mean(on) + *mean(off));
  out.n_cycles = rp.path().size();
  return out;
}

// ===========================================================================
// Age, residual life and spread

struct AgeExcessResult {
  double age_average = 0.0;
  double residual_average = 0.0;
  double spread_average = 0.0;
  double mean_interarrival = 0.0;
  /// E[X^2] / (2 E[X]) and E[X^2] / E[X]; absent when E[X^2] is infinite.
  Moment age_limit;
  Moment spread_limit;
  /// Regenerative standard error of the age (and residual) average.
  double age_std_error = 0.0;
  std::size_t n_renewals = 0;
};

inline AgeExcessResult age_excess_averages(const DistributionSpec& interarrival, double t_max,
                                           std::uint64_t seed) {
  RngStream rng(seed, 0);
  const auto path = generate_path(interarrival, t_max, rng);
  AgeExcessResult out;
  out.age_average = path.time_average(Process::age, t_max);
  out.residual_average = path.time_average(Process::residual, t_max);
  out.spread_average = path.time_average(Process::spread, t_max);
  out.mean_interarrival = *mean(interarrival);
  if (const auto m2 = second_moment(interarrival)) {
    out.age_limit = *m2 / (2.0 * out.mean_interarrival);
    out.spread_limit = *m2 / out.mean_interarrival;
  }
  std::vector<CycleSample> cycles;
  cycles.reserve(path.size());
  for (std::size_t n = 1; n <= path.size(); ++n) {
    const double x = path.epoch(n) - path.epoch(n - 1);
    cycles.push_back({x, 0.5 * x * x, std::nullopt});
  }
  if (cycles.size() >= 2) out.age_std_error = regenerative_ratio(cycles).std_error;
  out.n_renewals = path.size();
  return out;
}

// ===========================================================================
// GI/GI/1 queue

struct CustomerRecord {
  double arrival = 0.0;
  double service_start = 0.0;
  double departure = 0.0;
  double sojourn = 0.0;
  std::size_t cycle_id = 0;
};

/// One regeneration cycle: from an arrival finding the system empty to the
/// next such arrival.
struct QueueCycle {
  double start = 0.0;
  double length = 0.0;
  double area = 0.0;         // integral of n(y) over the cycle, by event sweep
  double sojourn_sum = 0.0;  // T_1 + ... + T_N
  std::size_t customers = 0;
};

struct QueueTrace {
  std::vector<CustomerRecord> customers;  // complete cycles only, FIFO order
  std::vector<QueueCycle> cycles;
  double arrival_mean = 0.0;
  double service_mean = 0.0;
};

namespace detail {

/// Integral of the queue-length step function over [start, end], found by
/// sweeping arrival and departure events in time order. Departures are
/// processed first at equal times.
inline double queue_area(std::span<const CustomerRecord> cycle, double start, double end) {
  double area = 0.0, last = start;
  long in_system = 0;
  std::size_t i = 0, j = 0;
  while (i < cycle.size() || j < cycle.size()) {
    const bool departure = j < cycle.size() && (i == cycle.size() || cycle[j].departure <= cycle[i].arrival);
    const double when = departure ? cycle[j].departure : cycle[i].arrival;
    area += static_cast<double>(in_system) * (when - last);
    last = when;
    if (departure) {
      --in_system;
      ++j;
    } else {
      ++in_system;
      ++i;
    }
  }
  area += static_cast<double>(in_system) * (end - last);
  return area;
}

}  // namespace detail

/// FIFO single-server queue started by an arrival to an empty system, run for
/// `n_cycles` complete regeneration cycles. Interarrivals use stream 0 of
/// `seed`, services stream 1.
inline QueueTrace gg1_simulate(const DistributionSpec& arrival, const DistributionSpec& service,
                               std::size_t n_cycles, std::uint64_t seed,
                               std::size_t max_customers_per_cycle = 10'000'000) {
  require_lifetime(arrival, "interarrival");
  require_lifetime(service, "service");
  if (n_cycles < 1) throw InvalidParameter("n_cycles must be >= 1");
  QueueTrace trace;
  trace.arrival_mean = *mean(arrival);
  trace.service_mean = *mean(service);
  if (!(trace.service_mean < trace.arrival_mean)) {
    throw Unstable("utilization " + detail::format_number(trace.service_mean / trace.arrival_mean) +
                   " >= 1");
  }

  RngStream arrivals(seed, 0), services(seed, 1);
  double a = 0.0;
  double last_departure = -std::numeric_limits<double>::infinity();
  std::size_t cycle_begin = 0;

  auto close_cycle = [&](double end) {
    std::span<const CustomerRecord> members(trace.customers.data() + cycle_begin,
                                            trace.customers.size() - cycle_begin);
    QueueCycle cyc;
    cyc.start = members.front().arrival;
    cyc.length = end - cyc.start;
    cyc.customers = members.size();
    for (const auto& c : members) cyc.sojourn_sum += c.sojourn;
    cyc.area = detail::queue_area(members, cyc.start, end);
    trace.cycles.push_back(cyc);
  };

  while (true) {
    const bool finds_empty = a >= last_departure;
    if (finds_empty && !trace.customers.empty()) {
      close_cycle(a);
      if (trace.cycles.size() == n_cycles) break;
      cycle_begin = trace.customers.size();
    }
    if (trace.customers.size() - cycle_begin >= max_customers_per_cycle) {
      throw NonConvergence("cycle exceeded " + std::to_string(max_customers_per_cycle) +
                           " customers");
    }
    CustomerRecord rec;
    rec.arrival = a;
    rec.service_start = std::max(a, last_departure);
    rec.departure = rec.service_start + sample(service, services);
    rec.sojourn = rec.departure - rec.arrival;
    rec.cycle_id = trace.cycles.size();
    trace.customers.push_back(rec);
    last_departure = rec.departure;
    a += sample(arrival, arrivals);
  }
  return trace;
}

struct LittleReport {
  double L = 0.0;       // sum of cycle areas / sum of cycle lengths
  double lambda = 0.0;  // customers / sum of cycle lengths
  double T = 0.0;       // mean sojourn
  double relative_gap = 0.0;        // |L - lambda T| / L
  double identity_residual = 0.0;   // |sum area - sum sojourn| / sum sojourn
  double max_cycle_residual = 0.0;  // worst per-cycle relative residual
  double mean_cycle_length = 0.0;
  double mean_customers = 0.0;
  /// |E[C] / E[X] - E[N]| / E[N] with E[X] the analytic interarrival mean.
  double wald_gap = 0.0;
  std::size_t n_cycles = 0;
};

inline LittleReport little_check(const QueueTrace& trace) {
  if (trace.cycles.empty()) throw EmptyTrace("queue trace has no complete cycle");
  double area = 0.0, length = 0.0, sojourn = 0.0, customers = 0.0;
  LittleReport out;
  for (const auto& c : trace.cycles) {
    area += c.area;
    length += c.length;
    sojourn += c.sojourn_sum;
    customers += static_cast<double>(c.customers);
    const double resid = std::abs(c.area - c.sojourn_sum) / c.sojourn_sum;
    out.max_cycle_residual = std::max(out.max_cycle_residual, resid);
  }
  const double k = static_cast<double>(trace.cycles.size());
  out.L = area / length;
  out.lambda = customers / length;
  out.T = sojourn / customers;
  out.relative_gap = std::abs(out.L - out.lambda * out.T) / out.L;
  out.identity_residual = std::abs(area - sojourn) / sojourn;
  out.mean_cycle_length = length / k;
  out.mean_customers = customers / k;
  out.wald_gap = std::abs(out.mean_cycle_length / trace.arrival_mean - out.mean_customers) /
                 out.mean_customers;
  out.n_cycles = trace.cycles.size();
  return out;
}

// ===========================================================================
// Partial-reward counterexample

struct Probe {
  std::size_t cycle = 0;  // j: probe lies in [j, j+1)
  double offset = 0.0;    // u in [0, 1]
  double value = 0.0;     // R(j + u)
};

struct CounterexampleReport {
  std::vector<Probe> probes;
  bool integers_zero = false;
  double max_abs_at_integers = 0.0;
  std::vector<double> half_values;  // R(k + 1/2), k = 0..n-1
  double ks_statistic = 0.0;
  double ks_critical = 0.0;
  bool ks_pass = false;
  std::vector<double> running_mean;  // running mean of half_values
  double max_abs_running_mean = 0.0;  // over the window below
  std::size_t window_lo = 0;
  std::size_t window_hi = 0;
  std::size_t n_cycles = 0;
};

/// x = 1, r = 0 and within-cycle reward C_j f(u) with the triangle f. R(k) is
/// zero at integers while R(k + 1/2) = C/2 has no mean.
inline CounterexampleReport cauchy_counterexample(std::size_t n_cycles, std::uint64_t seed,
                                                  const std::vector<double>& probe_offsets,
                                                  std::size_t window_lo = 1000,
                                                  std::size_t window_hi = 100000) {
  if (n_cycles < 1) throw InvalidParameter("n_cycles must be >= 1");
  for (double u : probe_offsets)
    if (!(u >= 0 && u <= 1)) throw InvalidParameter("probe offsets must lie in [0, 1]");

  const CauchyTriangle law{};
  const JointCycleSampler sampler(law);
  const AccrualMode mode = Partial{PiecewiseLinearShape::triangle()};
  RngStream rng(seed, 0);
  const auto rp = realize_rewarded_path(sampler, static_cast<double>(n_cycles), rng);

  CounterexampleReport out;
  out.n_cycles = n_cycles;
  out.probes.reserve(n_cycles * probe_offsets.size());
  for (std::size_t j = 0; j < n_cycles; ++j) {
    for (double u : probe_offsets) {
      out.probes.push_back({j, u, cumulative_reward(rp, mode, static_cast<double>(j) + u)});
    }
  }

  out.integers_zero = true;
  for (std::size_t k = 0; k <= n_cycles; ++k) {
    const double v = cumulative_reward(rp, mode, static_cast<double>(k));
    out.max_abs_at_integers = std::max(out.max_abs_at_integers, std::abs(v));
    out.integers_zero = out.integers_zero && v == 0.0;
  }

  out.half_values.reserve(n_cycles);
  for (std::size_t k = 0; k < n_cycles; ++k)
    out.half_values.push_back(cumulative_reward(rp, mode, static_cast<double>(k) + 0.5));

  const DistributionSpec half_law(Cauchy{0.5 * law.location, 0.5 * law.scale});
  out.ks_statistic = ks_statistic(out.half_values, [&](double x) { return cdf(half_law, x); });
  out.ks_critical = ks_critical_1pct(out.half_values.size());
  out.ks_pass = out.ks_statistic < out.ks_critical;

  out.running_mean = running_mean(out.half_values);
  out.window_lo = std::max<std::size_t>(window_lo, 1);
  out.window_hi = std::min(window_hi, n_cycles);
  for (std::size_t n = out.window_lo; n <= out.window_hi; ++n)
    out.max_abs_running_mean = std::max(out.max_abs_running_mean, std::abs(out.running_mean[n - 1]));
  return out;
}

}  // namespace renewalkit
