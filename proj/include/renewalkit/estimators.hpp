#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <thread>
#include <vector>

#include "renewalkit/distributions.hpp"
#include "renewalkit/error.hpp"
#include "renewalkit/reward.hpp"

namespace renewalkit {

/// Two-sided 95% normal quantile used for every interval in the toolkit.
inline constexpr double kZ95 = 1.959963984540054;

/// Point estimate r/tau with a delta-method standard error.
struct RatioEstimate {
  double point = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t n_cycles = 0;
  bool heavy_tail = false;

  bool covers(double value) const noexcept { return ci_low <= value && value <= ci_high; }
};

/// Estimates evaluated at ascending checkpoints.
struct ConvergenceTrace {
  std::vector<double> checkpoints;
  std::vector<double> values;

  ConvergenceTrace() = default;
  ConvergenceTrace(std::vector<double> cps, std::vector<double> vals)
      : checkpoints(std::move(cps)), values(std::move(vals)) {
    if (checkpoints.size() != values.size())
      throw InvalidParameter("trace checkpoints and values differ in length");
    for (std::size_t i = 1; i < checkpoints.size(); ++i)
      if (!(checkpoints[i] > checkpoints[i - 1]))
        throw InvalidParameter("trace checkpoints must be strictly increasing");
  }
};

// ---------------------------------------------------------------------------
// Small sample statistics.

/// Linear-interpolation (type 7) quantile of an unsorted sample.
inline double sample_quantile(std::vector<double> xs, double q) {
  if (xs.empty()) throw InvalidParameter("quantile of an empty sample");
  std::sort(xs.begin(), xs.end());
  const double h = q * static_cast<double>(xs.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, xs.size() - 1);
  return xs[lo] + (h - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
}

/// m_k = (x_1 + ... + x_k) / k, summed in index order.
inline std::vector<double> running_mean(std::span<const double> xs) {
  std::vector<double> out;
  out.reserve(xs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    acc += xs[i];
    out.push_back(acc / static_cast<double>(i + 1));
  }
  return out;
}

/// Kolmogorov-Smirnov statistic sup |F_n - F| of `xs` against `cdf`.
template <class Cdf>
double ks_statistic(std::vector<double> xs, Cdf&& cdf) {
  if (xs.empty()) throw InvalidParameter("KS statistic of an empty sample");
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, (static_cast<double>(i) + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

/// Asymptotic 1% critical value of the one-sample KS statistic.
inline double ks_critical_1pct(std::size_t n) { return 1.6276 / std::sqrt(static_cast<double>(n)); }

// ---------------------------------------------------------------------------

/// Classical regenerative ratio estimator: point = sum r / sum x, standard
/// error from the i.i.d. residuals r_n - point * x_n.
inline RatioEstimate regenerative_ratio(std::span<const CycleSample> cycles, bool heavy_tail = false) {
  if (cycles.size() < 2) throw DegenerateCycles("regenerative ratio needs at least 2 cycles");
  double sum_r = 0.0, sum_x = 0.0;
  for (const auto& c : cycles) {
    sum_r += c.r;
    sum_x += c.x;
  }
  const double n = static_cast<double>(cycles.size());
  const double point = sum_r / sum_x;
  double ss = 0.0;
  for (const auto& c : cycles) {
    const double d = c.r - point * c.x;
    ss += d * d;
  }
  const double se = std::sqrt(ss / (n - 1)) / ((sum_x / n) * std::sqrt(n));
  RatioEstimate est;
  est.point = point;
  est.std_error = se;
  est.ci_low = point - kZ95 * se;
  est.ci_high = point + kZ95 * se;
  est.n_cycles = cycles.size();
  est.heavy_tail = heavy_tail;
  return est;
}

/// Ratio over the cycles completed within the path horizon. Equals
/// R(S_K) / S_K under end-of-cycle accrual.
inline RatioEstimate regenerative_ratio(const RewardedPath& rp, bool heavy_tail = false) {
  return regenerative_ratio(rp.complete_cycles(), heavy_tail);
}

/// R(t)/t along one path at each checkpoint.
inline ConvergenceTrace pathwise_rate(const RewardedPath& rp, const AccrualMode& mode,
                                      std::vector<double> checkpoints) {
  std::vector<double> values;
  values.reserve(checkpoints.size());
  for (double t : checkpoints) values.push_back(reward_rate(rp, mode, t));
  return ConvergenceTrace(std::move(checkpoints), std::move(values));
}

// ---------------------------------------------------------------------------
// Ensembles.

/// Runs `task(i)` for i in [0, n) across `threads` workers and returns the
/// results indexed by i, so the outcome never depends on scheduling.
template <class Task>
auto run_replications(std::size_t n, Task&& task, std::size_t threads = 0) {
  using Result = decltype(task(std::size_t{0}));
  std::vector<Result> results(n);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(n, 1));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) results[i] = task(i);
    return results;
  }
  std::vector<std::jthread> workers;
  for (std::size_t w = 0; w < threads; ++w) {
    workers.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += threads) results[i] = task(i);
    });
  }
  workers.clear();
  return results;
}

/// R(t) for replications 0..n_reps-1; replication i runs on stream i of `seed`.
inline std::vector<double> replicate_cumulative(const JointCycleSampler& sampler,
                                                const AccrualMode& mode, double t,
                                                std::size_t n_reps, std::uint64_t seed,
                                                std::size_t threads = 0) {
  return run_replications(
      n_reps,
      [&](std::size_t i) {
        RngStream rng(seed, i);
        const auto rp = realize_rewarded_path(sampler, t, rng);
        return cumulative_reward(rp, mode, t);
      },
      threads);
}

/// R(t)/t per replication.
inline std::vector<double> replicate_rates(const JointCycleSampler& sampler, const AccrualMode& mode,
                                           double t, std::size_t n_reps, std::uint64_t seed,
                                           std::size_t threads = 0) {
  if (!(t > 0)) throw InvalidParameter("t must be > 0");
  auto values = replicate_cumulative(sampler, mode, t, n_reps, seed, threads);
  for (double& v : values) v /= t;
  return values;
}

struct EnsembleEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_reps = 0;
  bool heavy_tail = false;
  std::optional<double> median;
  std::optional<double> iqr;
};

/// Mean and standard error of per-replication values, reduced in index order.
/// Median and IQR are added for heavy-tailed inputs.
inline EnsembleEstimate summarize_ensemble(std::span<const double> values, bool heavy_tail) {
  if (values.size() < 2) throw InvalidParameter("an ensemble needs at least 2 replications");
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double m = sum / n;
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  EnsembleEstimate est;
  est.mean = m;
  est.std_error = std::sqrt(ss / (n - 1) / n);
  est.n_reps = values.size();
  est.heavy_tail = heavy_tail;
  if (heavy_tail) {
    std::vector<double> copy(values.begin(), values.end());
    est.median = sample_quantile(copy, 0.5);
    est.iqr = sample_quantile(copy, 0.75) - sample_quantile(copy, 0.25);
  }
  return est;
}

/// Estimate of E[R(t)]/t from independent replications.
inline EnsembleEstimate ensemble_mean_rate(const JointCycleSampler& sampler, const AccrualMode& mode,
                                           double t, std::size_t n_reps, std::uint64_t seed,
                                           std::size_t threads = 0) {
  if (n_reps < 2) throw InvalidParameter("n_reps must be >= 2");
  if (!(t > 0)) throw InvalidParameter("t must be > 0");
  const auto values = replicate_rates(sampler, mode, t, n_reps, seed, threads);
  return summarize_ensemble(values, sampler.heavy_tailed());
}

// ---------------------------------------------------------------------------

/// Ensemble comparison of E[S_{N(t)+1}] with E[N(t)+1] * E[X].
struct WaldReport {
  double mean_cycle_sum = 0.0;       // E[X_1 + ... + X_{N(t)+1}]
  double mean_stopping_count = 0.0;  // E[N(t) + 1]
  double cycle_mean = 0.0;           // E[X]
  double relative_gap = 0.0;
  std::size_t n_reps = 0;

  double predicted() const noexcept { return mean_stopping_count * cycle_mean; }
};

inline WaldReport wald_check(const JointCycleSampler& sampler, double t, std::size_t n_reps,
                             std::uint64_t seed, std::size_t threads = 0) {
  if (n_reps < 1) throw InvalidParameter("n_reps must be >= 1");
  struct Rep {
    double cycle_sum = 0.0;
    double count = 0.0;
  };
  const auto reps = run_replications(
      n_reps,
      [&](std::size_t i) {
        RngStream rng(seed, i);
        const auto rp = realize_rewarded_path(sampler, t, rng);
        return Rep{rp.path().overshoot(), static_cast<double>(rp.path().size() + 1)};
      },
      threads);
  WaldReport out;
  for (const auto& r : reps) {
    out.mean_cycle_sum += r.cycle_sum;
    out.mean_stopping_count += r.count;
  }
  out.mean_cycle_sum /= static_cast<double>(n_reps);
  out.mean_stopping_count /= static_cast<double>(n_reps);
  out.cycle_mean = sampler.cycle_mean();
  out.relative_gap = std::abs(out.mean_cycle_sum - out.predicted()) / out.predicted();
  out.n_reps = n_reps;
  return out;
}

// ---------------------------------------------------------------------------

/// One row of the Y_n demonstration: Y_n = n+1 with probability 1/(n+1),
/// else 0.
struct AsVsMeanRow {
  std::uint64_t n = 0;
  double analytic_mean = 0.0;
  double nonzero_probability = 0.0;
  double empirical_nonzero = 0.0;
  double empirical_mean = 0.0;
};

inline DistributionSpec y_n_law(std::uint64_t n) {
  const double m = static_cast<double>(n);
  return TwoPoint{m / (m + 1.0), 0.0, m + 1.0};
}

/// 1, 2, 5, 10, 20, 50, ... up to and including n_max.
inline std::vector<std::uint64_t> decade_grid(std::uint64_t n_max) {
  std::vector<std::uint64_t> ns;
  for (std::uint64_t base = 1; base <= n_max; base *= 10) {
    for (std::uint64_t k : {1, 2, 5}) {
      if (base * k <= n_max) ns.push_back(base * k);
    }
    if (base > n_max / 10) break;
  }
  if (ns.empty() || ns.back() != n_max) ns.push_back(n_max);
  return ns;
}

/// Analytic E[Y_n] against the empirical frequency of Y_n != 0 over `reps`
/// draws, for n on a decade grid up to `n_max`. Row n draws from stream n.
inline std::vector<AsVsMeanRow> as_vs_mean_demo(std::uint64_t n_max, std::uint64_t seed,
                                                std::size_t reps = 10000) {
  if (n_max < 1) throw InvalidParameter("n_max must be >= 1");
  if (reps < 1) throw InvalidParameter("reps must be >= 1");
  std::vector<AsVsMeanRow> rows;
  for (std::uint64_t n : decade_grid(n_max)) {
    const auto law = y_n_law(n);
    RngStream rng(seed, n);
    std::size_t nonzero = 0;
    double sum = 0.0;
    for (std::size_t i = 0; i < reps; ++i) {
      const double y = sample(law, rng);
      nonzero += (y != 0.0);
      sum += y;
    }
    AsVsMeanRow row;
    row.n = n;
    row.analytic_mean = *mean(law);
    row.nonzero_probability = 1.0 / (static_cast<double>(n) + 1.0);
    row.empirical_nonzero = static_cast<double>(nonzero) / static_cast<double>(reps);
    row.empirical_mean = sum / static_cast<double>(reps);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace renewalkit
