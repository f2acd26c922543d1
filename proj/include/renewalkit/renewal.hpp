#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "renewalkit/detail/numbers.hpp"
#include "renewalkit/distributions.hpp"
#include "renewalkit/error.hpp"
#include "renewalkit/rng.hpp"

namespace renewalkit {

/// Where a path came from.
struct Provenance {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

enum class Process { age, residual, spread };

inline const char* to_string(Process p) {
  switch (p) {
    case Process::age: return "age";
    case Process::residual: return "residual";
    case Process::spread: return "spread";
  }
  return "?";
}

/// A realized renewal sequence 0 < S_1 < ... < S_K <= horizon, plus the
/// overshoot epoch S_{K+1} > horizon so that age and residual life are
/// defined on all of [0, horizon].
///
/// Renewals are counted at their epoch: N(t) = max{n : S_n <= t}, and the age
/// at an epoch is 0.
class RenewalPath {
 public:
  /// `epochs` holds S_1..S_{K+1}; the last entry must exceed `horizon` and all
  /// others must not.
  RenewalPath(std::vector<double> epochs, double horizon, bool delayed_first = false,
              Provenance provenance = {})
      : epochs_(std::move(epochs)),
        horizon_(horizon),
        delayed_first_(delayed_first),
        provenance_(provenance) {
    if (!(horizon_ > 0)) throw InvalidParameter("path horizon must be > 0");
    if (epochs_.empty() || !(epochs_.back() > horizon_))
      throw InvalidParameter("path must end with an epoch beyond the horizon");
    if (epochs_.size() > 1 && epochs_[epochs_.size() - 2] > horizon_)
      throw InvalidParameter("only the final epoch may exceed the horizon");
    if (!(epochs_.front() > 0) || !std::is_sorted(epochs_.begin(), epochs_.end()))
      throw InvalidParameter("epochs must be positive and ascending");

    sq_prefix_.reserve(epochs_.size() + 1);
    sq_prefix_.push_back(0.0);
    double prev = 0.0, acc = 0.0;
    for (double s : epochs_) {
      const double x = s - prev;
      acc += x * x;
      sq_prefix_.push_back(acc);
      prev = s;
    }
  }

  /// S_1..S_K (renewals within the horizon).
  std::span<const double> epochs() const noexcept {
    return {epochs_.data(), epochs_.size() - 1};
  }
  /// S_1..S_{K+1}.
  std::span<const double> epochs_with_overshoot() const noexcept { return epochs_; }
  /// Number of renewals within the horizon, K = N(horizon).
  std::size_t size() const noexcept { return epochs_.size() - 1; }
  double overshoot() const noexcept { return epochs_.back(); }
  double horizon() const noexcept { return horizon_; }
  bool delayed_first() const noexcept { return delayed_first_; }
  const Provenance& provenance() const noexcept { return provenance_; }

  /// S_n for n in [0, K+1], with S_0 = 0.
  double epoch(std::size_t n) const { return n == 0 ? 0.0 : epochs_.at(n - 1); }

  /// N(t).
  std::size_t count(double t) const {
    check(t);
    return static_cast<std::size_t>(
        std::upper_bound(epochs_.begin(), epochs_.end(), t) - epochs_.begin());
  }

  /// A(t) = t - S_{N(t)}.
  double age(double t) const { return t - epoch(count(t)); }

  /// B(t) = S_{N(t)+1} - t.
  double residual(double t) const { return epoch(count(t) + 1) - t; }

  /// A(t) + B(t), the length of the cycle covering t.
  double spread(double t) const { return age(t) + residual(t); }

  double value(Process p, double t) const {
    switch (p) {
      case Process::age: return age(t);
      case Process::residual: return residual(t);
      case Process::spread: return spread(t);
    }
    return 0.0;
  }

  /// Integral of the process over [0, t]. Each complete cycle of length x
  /// contributes x^2/2 (age, residual) or x^2 (spread); the cycle covering t
  /// is split analytically.
  double integral(Process p, double t) const {
    const std::size_t n = count(t);
    const double complete = sq_prefix_[n];
    const double elapsed = t - epoch(n);
    const double cycle = epoch(n + 1) - epoch(n);
    switch (p) {
      case Process::age: return 0.5 * complete + 0.5 * elapsed * elapsed;
      case Process::residual: return 0.5 * complete + elapsed * (cycle - 0.5 * elapsed);
      case Process::spread: return complete + elapsed * cycle;
    }
    return 0.0;
  }

  /// (1/t) * integral over [0, t], t > 0.
  double time_average(Process p, double t) const {
    if (!(t > 0)) throw InvalidParameter("time average needs t > 0");
    return integral(p, t) / t;
  }

 private:
  void check(double t) const {
    if (!(t >= 0 && t <= horizon_)) {
      throw OutOfHorizon("t = " + detail::format_number(t) + " outside [0, " +
                         detail::format_number(horizon_) + "]");
    }
  }

  std::vector<double> epochs_;
  std::vector<double> sq_prefix_;  // sum of x_k^2 for k <= n
  double horizon_;
  bool delayed_first_;
  Provenance provenance_;
};

/// Draws interarrivals until the first epoch beyond `t_max`. When
/// `first_cycle` is given the path is delayed: X_1 follows it instead.
inline RenewalPath generate_path(const DistributionSpec& interarrival, double t_max,
                                 RngStream& rng,
                                 const std::optional<DistributionSpec>& first_cycle = {}) {
  require_lifetime(interarrival, "interarrival");
  if (first_cycle) require_lifetime(*first_cycle, "first-cycle");
  if (!(t_max > 0) || !std::isfinite(t_max)) throw InvalidParameter("t_max must be finite and > 0");

  std::vector<double> epochs;
  double s = sample(first_cycle ? *first_cycle : interarrival, rng);
  epochs.push_back(s);
  while (s <= t_max) {
    s += sample(interarrival, rng);
    epochs.push_back(s);
  }
  return RenewalPath(std::move(epochs), t_max, first_cycle.has_value(),
                     {rng.seed(), rng.stream()});
}

}  // namespace renewalkit
