#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "renewalkit/distributions.hpp"
#include "renewalkit/renewal.hpp"

namespace renewalkit {

/// One cycle: length x, reward r credited when the cycle completes, and an
/// optional coefficient scaling the within-cycle shape under partial accrual.
struct CycleSample {
  double x;
  double r;
  std::optional<double> coeff;
};

/// Rewards that are deterministic functions of the cycle length.
enum class RewardFunction {
  one,          // r = 1
  length,       // r = x
  square,       // r = x^2
  half_square,  // r = x^2 / 2
};

inline const char* to_string(RewardFunction g) {
  switch (g) {
    case RewardFunction::one: return "one";
    case RewardFunction::length: return "x";
    case RewardFunction::square: return "x2";
    case RewardFunction::half_square: return "halfx2";
  }
  return "?";
}

/// Age replacement: a component with life X is replaced at min(X, T); the
/// cycle costs c_f on failure (X <= T) and c otherwise.
struct AgeReplacementCost {
  double T;
  double c;
  double c_f;
};

/// (X, R) with R drawn independently of X.
struct Independent {
  DistributionSpec x_dist;
  DistributionSpec r_dist;
};

/// R (and possibly the cycle length) derived from a single lifetime draw.
struct FunctionOfX {
  DistributionSpec x_dist;
  std::variant<RewardFunction, AgeReplacementCost> g;
};

/// Cycle = ON period then OFF period; reward is the ON duration (or the OFF
/// duration when `reward_off`).
struct AlternatingOnOff {
  DistributionSpec on;
  DistributionSpec off;
  bool reward_off = false;
};

/// x = 1, r = 0, coeff ~ Cauchy(location, scale). E|coeff| is infinite.
struct CauchyTriangle {
  double location = 0.0;
  double scale = 1.0;
};

/// Emits i.i.d. cycle samples from one joint law.
class JointCycleSampler {
 public:
  using Kind = std::variant<Independent, FunctionOfX, AlternatingOnOff, CauchyTriangle>;

  template <class K>
    requires std::is_constructible_v<Kind, K>
  JointCycleSampler(K kind) : kind_(std::move(kind)) {  // NOLINT
    validate();
  }

  const Kind& kind() const noexcept { return kind_; }

  /// Rewards without a finite first moment. Estimators report median and IQR
  /// alongside the mean for these.
  bool heavy_tailed() const noexcept {
    if (std::holds_alternative<CauchyTriangle>(kind_)) return true;
    if (const auto* ind = std::get_if<Independent>(&kind_)) return !mean(ind->r_dist).has_value();
    return false;
  }

  /// E[X], the mean cycle length.
  double cycle_mean() const {
    return std::visit(
        [](const auto& k) -> double {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, Independent>) return *mean(k.x_dist);
          if constexpr (std::is_same_v<T, FunctionOfX>) {
            if (const auto* rep = std::get_if<AgeReplacementCost>(&k.g))
              return limited_mean(k.x_dist, rep->T);
            return *mean(k.x_dist);
          }
          if constexpr (std::is_same_v<T, AlternatingOnOff>) return *mean(k.on) + *mean(k.off);
          if constexpr (std::is_same_v<T, CauchyTriangle>) return 1.0;
        },
        kind_);
  }

  /// Draws one cycle. The number of uniforms consumed per call is fixed per
  /// kind: Independent 2, FunctionOfX 1, AlternatingOnOff 2, CauchyTriangle 1.
  CycleSample draw(RngStream& rng) const {
    return std::visit(
        [&rng](const auto& k) -> CycleSample {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, Independent>) {
            const double x = sample(k.x_dist, rng);
            return {x, sample(k.r_dist, rng), std::nullopt};
          }
          if constexpr (std::is_same_v<T, FunctionOfX>) {
            const double life = sample(k.x_dist, rng);
            return std::visit(
                [life](const auto& g) -> CycleSample {
                  using G = std::decay_t<decltype(g)>;
                  if constexpr (std::is_same_v<G, AgeReplacementCost>) {
                    return {std::min(life, g.T), life <= g.T ? g.c_f : g.c, std::nullopt};
                  } else {
                    return {life, apply(g, life), std::nullopt};
                  }
                },
                k.g);
          }
          if constexpr (std::is_same_v<T, AlternatingOnOff>) {
            const double on = sample(k.on, rng);
            const double off = sample(k.off, rng);
            return {on + off, k.reward_off ? off : on, std::nullopt};
          }
          if constexpr (std::is_same_v<T, CauchyTriangle>) {
            return {1.0, 0.0, sample(DistributionSpec(Cauchy{k.location, k.scale}), rng)};
          }
        },
        kind_);
  }

  /// Human-readable description, e.g. "FunctionOfX(exp:1, x2)".
  std::string describe() const {
    using detail::format_number;
    return std::visit(
        [](const auto& k) -> std::string {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, Independent>)
            return "Independent(" + k.x_dist.literal() + ", " + k.r_dist.literal() + ")";
          if constexpr (std::is_same_v<T, FunctionOfX>) {
            std::string g = std::visit(
                [](const auto& f) -> std::string {
                  using G = std::decay_t<decltype(f)>;
                  if constexpr (std::is_same_v<G, AgeReplacementCost>)
                    return "age-replacement:" + format_number(f.T) + "," + format_number(f.c) +
                           "," + format_number(f.c_f);
                  else
                    return to_string(f);
                },
                k.g);
            return "FunctionOfX(" + k.x_dist.literal() + ", " + g + ")";
          }
          if constexpr (std::is_same_v<T, AlternatingOnOff>)
            return std::string("AlternatingOnOff(") + k.on.literal() + ", " + k.off.literal() +
                   (k.reward_off ? ", reward=off)" : ", reward=on)");
          if constexpr (std::is_same_v<T, CauchyTriangle>)
            return "CauchyTriangle(" + format_number(k.location) + ", " + format_number(k.scale) +
                   ")";
        },
        kind_);
  }

  static double apply(RewardFunction g, double x) noexcept {
    switch (g) {
      case RewardFunction::one: return 1.0;
      case RewardFunction::length: return x;
      case RewardFunction::square: return x * x;
      case RewardFunction::half_square: return 0.5 * x * x;
    }
    return 0.0;
  }

 private:
  void validate() const {
    std::visit(
        [](const auto& k) {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, Independent>) {
            require_lifetime(k.x_dist, "cycle-length");
          } else if constexpr (std::is_same_v<T, FunctionOfX>) {
            require_lifetime(k.x_dist, "cycle-length");
            if (const auto* rep = std::get_if<AgeReplacementCost>(&k.g)) {
              if (!(rep->T > 0)) throw InvalidParameter("replacement age T must be > 0");
              if (!std::isfinite(rep->c) || !std::isfinite(rep->c_f))
                throw InvalidParameter("replacement costs must be finite");
            }
          } else if constexpr (std::is_same_v<T, AlternatingOnOff>) {
            require_lifetime(k.on, "ON");
            require_lifetime(k.off, "OFF");
          } else {
            if (!(k.scale > 0) || !std::isfinite(k.location))
              throw InvalidParameter("Cauchy coefficient scale must be > 0");
          }
        },
        kind_);
  }

  Kind kind_;
};

// ---------------------------------------------------------------------------
// Accrual modes.

/// Piecewise-linear f on [0, 1] with explicit breakpoints and f(0) = 0.
/// Evaluation returns breakpoint values exactly.
class PiecewiseLinearShape {
 public:
  explicit PiecewiseLinearShape(std::vector<std::pair<double, double>> breakpoints)
      : points_(std::move(breakpoints)) {
    if (points_.size() < 2 || points_.front().first != 0.0 || points_.back().first != 1.0)
      throw InvalidParameter("shape breakpoints must start at u = 0 and end at u = 1");
    if (points_.front().second != 0.0) throw InvalidParameter("shape must satisfy f(0) = 0");
    for (std::size_t i = 1; i < points_.size(); ++i) {
      if (!(points_[i].first > points_[i - 1].first))
        throw InvalidParameter("shape breakpoints must be strictly increasing");
    }
  }

  /// f(u) = u on [0, 1/2], 1 - u on [1/2, 1].
  static PiecewiseLinearShape triangle() { return PiecewiseLinearShape({{0, 0}, {0.5, 0.5}, {1, 0}}); }
  /// f(u) = u: constant-rate accrual of the full cycle reward.
  static PiecewiseLinearShape ramp() { return PiecewiseLinearShape({{0, 0}, {1, 1}}); }

  double operator()(double u) const {
    u = std::clamp(u, 0.0, 1.0);
    const auto hi = std::lower_bound(points_.begin(), points_.end(), u,
                                     [](const auto& p, double v) { return p.first < v; });
    if (hi->first == u) return hi->second;
    const auto lo = hi - 1;
    const double w = (u - lo->first) / (hi->first - lo->first);
    return lo->second + w * (hi->second - lo->second);
  }

  const std::vector<std::pair<double, double>>& breakpoints() const noexcept { return points_; }

 private:
  std::vector<std::pair<double, double>> points_;
};

/// R(t) = sum over completed cycles.
struct EndOfCycle {};
/// R(t) = sum including the cycle in progress.
struct StartOfCycle {};
/// Completed cycles plus coeff_{N(t)+1} * shape(elapsed fraction). A cycle
/// without a coefficient uses its own reward, so `ramp()` spreads each r_n
/// linearly over its cycle.
struct Partial {
  PiecewiseLinearShape shape;
};

using AccrualMode = std::variant<EndOfCycle, StartOfCycle, Partial>;

inline std::string describe(const AccrualMode& mode) {
  if (std::holds_alternative<EndOfCycle>(mode)) return "end";
  if (std::holds_alternative<StartOfCycle>(mode)) return "start";
  std::string out = "partial[";
  for (const auto& [u, f] : std::get<Partial>(mode).shape.breakpoints()) {
    if (out.back() != '[') out += ';';
    out += detail::format_number(u) + ":" + detail::format_number(f);
  }
  return out + "]";
}

// ---------------------------------------------------------------------------

/// A renewal path whose interarrivals are the x components of `cycles`.
/// cycles[n-1] belongs to the interval (S_{n-1}, S_n]; the overshoot cycle is
/// included.
class RewardedPath {
 public:
  RewardedPath(RenewalPath path, std::vector<CycleSample> cycles)
      : path_(std::move(path)), cycles_(std::move(cycles)) {
    if (cycles_.size() != path_.size() + 1)
      throw InvalidParameter("cycle list must align with path epochs (K + 1 entries)");
    reward_prefix_.reserve(cycles_.size() + 1);
    reward_prefix_.push_back(0.0);
    double acc = 0.0;
    for (const auto& c : cycles_) {
      acc += c.r;
      reward_prefix_.push_back(acc);
    }
  }

  const RenewalPath& path() const noexcept { return path_; }
  std::span<const CycleSample> cycles() const noexcept { return cycles_; }
  /// Cycles completed within the horizon.
  std::span<const CycleSample> complete_cycles() const noexcept {
    return {cycles_.data(), path_.size()};
  }
  /// r_1 + ... + r_n.
  double reward_sum(std::size_t n) const { return reward_prefix_.at(n); }

 private:
  RenewalPath path_;
  std::vector<CycleSample> cycles_;
  std::vector<double> reward_prefix_;
};

/// Draws cycles until their cumulative length exceeds `t_max`.
inline RewardedPath realize_rewarded_path(const JointCycleSampler& sampler, double t_max,
                                          RngStream& rng) {
  if (!(t_max > 0) || !std::isfinite(t_max)) throw InvalidParameter("t_max must be finite and > 0");
  std::vector<CycleSample> cycles;
  std::vector<double> epochs;
  double s = 0.0;
  do {
    cycles.push_back(sampler.draw(rng));
    s += cycles.back().x;
    epochs.push_back(s);
  } while (s <= t_max);
  RenewalPath path(std::move(epochs), t_max, false, {rng.seed(), rng.stream()});
  return RewardedPath(std::move(path), std::move(cycles));
}

/// R(t).
inline double cumulative_reward(const RewardedPath& rp, const AccrualMode& mode, double t) {
  const auto& path = rp.path();
  const std::size_t n = path.count(t);
  double value = std::visit(
      [&](const auto& m) -> double {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, EndOfCycle>) return rp.reward_sum(n);
        if constexpr (std::is_same_v<M, StartOfCycle>) return rp.reward_sum(n + 1);
        if constexpr (std::is_same_v<M, Partial>) {
          const CycleSample& current = rp.cycles()[n];
          const double u = (t - path.epoch(n)) / current.x;
          return rp.reward_sum(n) + current.coeff.value_or(current.r) * m.shape(u);
        }
      },
      mode);
  return value + 0.0;  // no negative zero
}

/// R(t) / t.
inline double reward_rate(const RewardedPath& rp, const AccrualMode& mode, double t) {
  if (!(t > 0)) throw InvalidParameter("reward rate needs t > 0");
  return cumulative_reward(rp, mode, t) / t;
}

/// r_n -> max(r_n, -M).
inline std::vector<CycleSample> truncate(std::span<const CycleSample> cycles, double M) {
  if (!(M > 0)) throw InvalidParameter("truncation level M must be > 0");
  std::vector<CycleSample> out(cycles.begin(), cycles.end());
  for (auto& c : out) c.r = std::max(c.r, -M);
  return out;
}

inline RewardedPath truncate(const RewardedPath& rp, double M) {
  return RewardedPath(rp.path(), truncate(rp.cycles(), M));
}

}  // namespace renewalkit
