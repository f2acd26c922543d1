#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include <boost/math/special_functions/erf.hpp>

#include "renewalkit/detail/numbers.hpp"
#include "renewalkit/error.hpp"
#include "renewalkit/rng.hpp"

namespace renewalkit {

struct Deterministic {
  double value;
};
struct Exponential {
  double rate;
};
struct Uniform {
  double a, b;
};
struct Pareto {
  double shape, scale;
};
struct Lognormal {
  double mu, sigma;
};
struct Cauchy {
  double location, scale;
};
/// P[X = x0] = p, P[X = x1] = 1 - p.
struct TwoPoint {
  double p, x0, x1;
};

/// A moment that may not exist. `std::nullopt` means "undefined", which is
/// different from "not computed".
using Moment = std::optional<double>;

/// One of the supported parametric families. Parameters are validated on
/// construction; an invalid spec cannot be built.
class DistributionSpec {
 public:
  using Family = std::variant<Deterministic, Exponential, Uniform, Pareto, Lognormal,
                              Cauchy, TwoPoint>;

  template <class F>
    requires std::is_constructible_v<Family, F>
  DistributionSpec(F family) : family_(std::move(family)) {  // NOLINT
    validate();
  }

  /// Parses `exp:RATE`, `det:V`, `unif:A,B`, `pareto:SHAPE,SCALE`,
  /// `lognorm:MU,SIGMA`, `cauchy:LOC,SCALE`, `twopoint:P,X0,X1`.
  static DistributionSpec parse(std::string_view literal);

  const Family& family() const noexcept { return family_; }

  template <class F>
  bool is() const noexcept {
    return std::holds_alternative<F>(family_);
  }

  /// Canonical literal; `parse(d.literal())` reproduces `d`.
  std::string literal() const;

  /// True when the law lives on (0, inf) and has a finite mean, i.e. it may
  /// serve as an interarrival, service, ON, OFF or lifetime distribution.
  bool is_lifetime() const noexcept;

 private:
  void validate() const;

  Family family_;
};

inline bool operator==(const DistributionSpec& a, const DistributionSpec& b) {
  return a.literal() == b.literal();
}

/// Throws InvalidRole unless `dist` is a valid lifetime law.
inline void require_lifetime(const DistributionSpec& dist, std::string_view role) {
  if (!dist.is_lifetime()) {
    throw InvalidRole(std::string(role) + " distribution '" + dist.literal() +
                      "' must be supported on (0, inf) with a finite mean");
  }
}

// ---------------------------------------------------------------------------

namespace detail {

template <class>
inline constexpr bool always_false = false;

inline bool finite_all(std::initializer_list<double> xs) {
  for (double x : xs)
    if (!std::isfinite(x)) return false;
  return true;
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

inline double normal_quantile(double u) {
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u);
}

inline std::vector<double> parse_params(std::string_view body, std::string_view literal) {
  std::vector<double> out;
  while (true) {
    const auto comma = body.find(',');
    const auto token = body.substr(0, comma);
    const auto value = parse_number(token);
    if (!value) {
      throw ParseError("bad number '" + std::string(token) + "' in distribution literal '" +
                       std::string(literal) + "'");
    }
    out.push_back(*value);
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace detail

inline void DistributionSpec::validate() const {
  std::visit(
      [](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        auto fail = [](const std::string& msg) { throw InvalidParameter(msg); };
        if constexpr (std::is_same_v<T, Deterministic>) {
          if (!std::isfinite(d.value)) fail("det: value must be finite");
        } else if constexpr (std::is_same_v<T, Exponential>) {
          if (!(std::isfinite(d.rate) && d.rate > 0)) fail("exp: rate must be > 0");
        } else if constexpr (std::is_same_v<T, Uniform>) {
          if (!(detail::finite_all({d.a, d.b}) && d.a < d.b)) fail("unif: need a < b");
        } else if constexpr (std::is_same_v<T, Pareto>) {
          if (!(detail::finite_all({d.shape, d.scale}) && d.shape > 0 && d.scale > 0))
            fail("pareto: shape and scale must be > 0");
        } else if constexpr (std::is_same_v<T, Lognormal>) {
          if (!(detail::finite_all({d.mu, d.sigma}) && d.sigma > 0))
            fail("lognorm: sigma must be > 0");
        } else if constexpr (std::is_same_v<T, Cauchy>) {
          if (!(detail::finite_all({d.location, d.scale}) && d.scale > 0))
            fail("cauchy: scale must be > 0");
        } else if constexpr (std::is_same_v<T, TwoPoint>) {
          if (!(detail::finite_all({d.p, d.x0, d.x1}) && d.p >= 0 && d.p <= 1))
            fail("twopoint: need 0 <= p <= 1 and finite atoms");
        } else {
          static_assert(detail::always_false<T>);
        }
      },
      family_);
}

inline bool DistributionSpec::is_lifetime() const noexcept {
  return std::visit(
      [](const auto& d) -> bool {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Deterministic>) return d.value > 0;
        if constexpr (std::is_same_v<T, Exponential>) return true;
        if constexpr (std::is_same_v<T, Uniform>) return d.a >= 0;
        if constexpr (std::is_same_v<T, Pareto>) return d.shape > 1;
        if constexpr (std::is_same_v<T, Lognormal>) return true;
        if constexpr (std::is_same_v<T, Cauchy>) return false;
        if constexpr (std::is_same_v<T, TwoPoint>)
          return (d.p == 0 || d.x0 > 0) && (d.p == 1 || d.x1 > 0);
      },
      family_);
}

inline std::string DistributionSpec::literal() const {
  using detail::format_number;
  return std::visit(
      [](const auto& d) -> std::string {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Deterministic>) return "det:" + format_number(d.value);
        if constexpr (std::is_same_v<T, Exponential>) return "exp:" + format_number(d.rate);
        if constexpr (std::is_same_v<T, Uniform>)
          return "unif:" + format_number(d.a) + "," + format_number(d.b);
        if constexpr (std::is_same_v<T, Pareto>)
          return "pareto:" + format_number(d.shape) + "," + format_number(d.scale);
        if constexpr (std::is_same_v<T, Lognormal>)
          return "lognorm:" + format_number(d.mu) + "," + format_number(d.sigma);
        if constexpr (std::is_same_v<T, Cauchy>)
          return "cauchy:" + format_number(d.location) + "," + format_number(d.scale);
        if constexpr (std::is_same_v<T, TwoPoint>)
          return "twopoint:" + format_number(d.p) + "," + format_number(d.x0) + "," +
                 format_number(d.x1);
      },
      family_);
}

inline DistributionSpec DistributionSpec::parse(std::string_view literal) {
  const auto text = detail::trim(literal);
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError("distribution literal '" + std::string(literal) + "' lacks ':'");
  }
  const auto name = text.substr(0, colon);
  const auto params = detail::parse_params(text.substr(colon + 1), literal);

  auto arity = [&](std::size_t n) {
    if (params.size() != n) {
      throw ParseError("distribution '" + std::string(name) + "' takes " + std::to_string(n) +
                       " parameter(s), got " + std::to_string(params.size()));
    }
  };

  if (name == "det") {
    arity(1);
    return Deterministic{params[0]};
  }
  if (name == "exp") {
    arity(1);
    return Exponential{params[0]};
  }
  if (name == "unif") {
    arity(2);
    return Uniform{params[0], params[1]};
  }
  if (name == "pareto") {
    arity(2);
    return Pareto{params[0], params[1]};
  }
  if (name == "lognorm") {
    arity(2);
    return Lognormal{params[0], params[1]};
  }
  if (name == "cauchy") {
    arity(2);
    return Cauchy{params[0], params[1]};
  }
  if (name == "twopoint") {
    arity(3);
    return TwoPoint{params[0], params[1], params[2]};
  }
  throw ParseError("unknown distribution family '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Analytic quantities.

inline Moment mean(const DistributionSpec& dist) {
  return std::visit(
      [](const auto& d) -> Moment {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Deterministic>) return d.value;
        if constexpr (std::is_same_v<T, Exponential>) return 1.0 / d.rate;
        if constexpr (std::is_same_v<T, Uniform>) return 0.5 * (d.a + d.b);
        if constexpr (std::is_same_v<T, Pareto>) {
          if (d.shape <= 1) return std::nullopt;
          return d.shape * d.scale / (d.shape - 1);
        }
        if constexpr (std::is_same_v<T, Lognormal>) return std::exp(d.mu + 0.5 * d.sigma * d.sigma);
        if constexpr (std::is_same_v<T, Cauchy>) return std::nullopt;
        // Written as x1 - p (x1 - x0) rather than p x0 + (1 - p) x1: for the
        // family p = n/(n+1), x0 = 0, x1 = n+1 this rounds to exactly 1.
        if constexpr (std::is_same_v<T, TwoPoint>) return d.x1 - d.p * (d.x1 - d.x0);
      },
      dist.family());
}

inline Moment second_moment(const DistributionSpec& dist) {
  return std::visit(
      [](const auto& d) -> Moment {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Deterministic>) return d.value * d.value;
        if constexpr (std::is_same_v<T, Exponential>) return 2.0 / (d.rate * d.rate);
        if constexpr (std::is_same_v<T, Uniform>) return (d.a * d.a + d.a * d.b + d.b * d.b) / 3.0;
        if constexpr (std::is_same_v<T, Pareto>) {
          if (d.shape <= 2) return std::nullopt;
          return d.shape * d.scale * d.scale / (d.shape - 2);
        }
        if constexpr (std::is_same_v<T, Lognormal>)
          return std::exp(2.0 * d.mu + 2.0 * d.sigma * d.sigma);
        if constexpr (std::is_same_v<T, Cauchy>) return std::nullopt;
        if constexpr (std::is_same_v<T, TwoPoint>) {
          const double s0 = d.x0 * d.x0, s1 = d.x1 * d.x1;
          return s1 - d.p * (s1 - s0);
        }
      },
      dist.family());
}

/// P[X <= x].
inline double cdf(const DistributionSpec& dist, double x) {
  return std::visit(
      [x](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Deterministic>) return x >= d.value ? 1.0 : 0.0;
        if constexpr (std::is_same_v<T, Exponential>) return x <= 0 ? 0.0 : -std::expm1(-d.rate * x);
        if constexpr (std::is_same_v<T, Uniform>) {
          if (x <= d.a) return 0.0;
          if (x >= d.b) return 1.0;
          return (x - d.a) / (d.b - d.a);
        }
        if constexpr (std::is_same_v<T, Pareto>)
          return x <= d.scale ? 0.0 : 1.0 - std::pow(d.scale / x, d.shape);
        if constexpr (std::is_same_v<T, Lognormal>)
          return x <= 0 ? 0.0 : detail::normal_cdf((std::log(x) - d.mu) / d.sigma);
        if constexpr (std::is_same_v<T, Cauchy>)
          return 0.5 + std::atan((x - d.location) / d.scale) / std::numbers::pi;
        if constexpr (std::is_same_v<T, TwoPoint>)
          return (x >= d.x0 ? d.p : 0.0) + (x >= d.x1 ? 1.0 - d.p : 0.0);
      },
      dist.family());
}

/// Inverse-transform map from u in (0, 1) to a variate.
inline double quantile(const DistributionSpec& dist, double u) {
  return std::visit(
      [u](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Deterministic>) return d.value;
        if constexpr (std::is_same_v<T, Exponential>) return -std::log1p(-u) / d.rate;
        if constexpr (std::is_same_v<T, Uniform>) return d.a + (d.b - d.a) * u;
        if constexpr (std::is_same_v<T, Pareto>) return d.scale * std::pow(1.0 - u, -1.0 / d.shape);
        if constexpr (std::is_same_v<T, Lognormal>)
          return std::exp(d.mu + d.sigma * detail::normal_quantile(u));
        if constexpr (std::is_same_v<T, Cauchy>)
          return d.location + d.scale * std::tan(std::numbers::pi * (u - 0.5));
        if constexpr (std::is_same_v<T, TwoPoint>) return u < d.p ? d.x0 : d.x1;
      },
      dist.family());
}

/// One variate. Every family consumes exactly one uniform from `rng`.
inline double sample(const DistributionSpec& dist, RngStream& rng) {
  return quantile(dist, rng.uniform());
}

/// E[min(X, T)] = integral of the survival function over [0, T], in closed
/// form per family. Requires a lifetime law; T may be +inf.
inline double limited_mean(const DistributionSpec& dist, double T) {
  require_lifetime(dist, "limited-mean");
  if (!(T > 0)) return 0.0;
  if (std::isinf(T)) return *mean(dist);
  return std::visit(
      [T](const auto& d) -> double {
        using U = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<U, Deterministic>) return std::min(d.value, T);
        if constexpr (std::is_same_v<U, Exponential>) return -std::expm1(-d.rate * T) / d.rate;
        if constexpr (std::is_same_v<U, Uniform>) {
          if (T <= d.a) return T;
          if (T >= d.b) return 0.5 * (d.a + d.b);
          const double w = d.b - d.a, rest = d.b - T;
          return d.a + (w * w - rest * rest) / (2.0 * w);
        }
        if constexpr (std::is_same_v<U, Pareto>) {
          if (T <= d.scale) return T;
          return d.scale + d.scale * (1.0 - std::pow(d.scale / T, d.shape - 1)) / (d.shape - 1);
        }
        if constexpr (std::is_same_v<U, Lognormal>) {
          const double z = (std::log(T) - d.mu) / d.sigma;
          return std::exp(d.mu + 0.5 * d.sigma * d.sigma) * detail::normal_cdf(z - d.sigma) +
                 T * (1.0 - detail::normal_cdf(z));
        }
        if constexpr (std::is_same_v<U, Cauchy>) return 0.0;  // rejected above
        if constexpr (std::is_same_v<U, TwoPoint>)
          return d.p * std::min(d.x0, T) + (1.0 - d.p) * std::min(d.x1, T);
      },
      dist.family());
}

}  // namespace renewalkit
