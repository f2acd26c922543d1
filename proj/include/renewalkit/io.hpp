#pragma once

#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "renewalkit/detail/numbers.hpp"
#include "renewalkit/estimators.hpp"
#include "renewalkit/models.hpp"
#include "renewalkit/renewal.hpp"
#include "renewalkit/reward.hpp"

// JSON views of result types and the CSV exports.

namespace renewalkit {

using nlohmann::json;

inline json to_json(const RatioEstimate& e) {
  return {{"point", e.point},   {"stderr", e.std_error},      {"ci_low", e.ci_low},
          {"ci_high", e.ci_high}, {"n_cycles", e.n_cycles}, {"heavy_tail_flag", e.heavy_tail}};
}

inline json to_json(const EnsembleEstimate& e) {
  json j = {{"point", e.mean},
            {"stderr", e.std_error},
            {"ci_low", e.mean - kZ95 * e.std_error},
            {"ci_high", e.mean + kZ95 * e.std_error},
            {"n_reps", e.n_reps},
            {"heavy_tail_flag", e.heavy_tail}};
  if (e.median) j["median"] = *e.median;
  if (e.iqr) j["iqr"] = *e.iqr;
  return j;
}

inline json to_json(const WaldReport& w) {
  return {{"mean_cycle_sum", w.mean_cycle_sum}, {"mean_stopping_count", w.mean_stopping_count},
          {"cycle_mean", w.cycle_mean},         {"predicted", w.predicted()},
          {"relative_gap", w.relative_gap},     {"n_reps", w.n_reps}};
}

inline json to_json(const LittleReport& r) {
  return {{"L", r.L},
          {"lambda", r.lambda},
          {"T", r.T},
          {"relative_gap", r.relative_gap},
          {"identity_residual", r.identity_residual},
          {"max_cycle_residual", r.max_cycle_residual},
          {"mean_cycle_length", r.mean_cycle_length},
          {"mean_customers", r.mean_customers},
          {"wald_gap", r.wald_gap},
          {"n_cycles", r.n_cycles}};
}

inline json to_json(const ConvergenceTrace& t) {
  return {{"checkpoints", t.checkpoints}, {"values", t.values}};
}

// ---------------------------------------------------------------------------
// CSV. Metadata lines start with '#'.

namespace detail {
inline void csv_metadata(std::ostream& os, const Provenance& p, const std::string& source,
                         double horizon) {
  os << "# seed=" << p.seed << "\n"
     << "# stream=" << p.stream << "\n"
     << "# algorithm=" << kRngAlgorithm << "\n"
     << "# distribution=" << source << "\n"
     << "# horizon=" << format_number(horizon) << "\n";
}
}  // namespace detail

/// `n,S_n`, including the overshoot epoch as row K+1.
inline void write_path_csv(std::ostream& os, const RenewalPath& path, const std::string& source) {
  detail::csv_metadata(os, path.provenance(), source, path.horizon());
  os << "n,S_n\n";
  const auto s = path.epochs_with_overshoot();
  for (std::size_t i = 0; i < s.size(); ++i) os << i + 1 << ',' << detail::format_number(s[i]) << '\n';
}

/// `n,S_n,x_n,r_n,coeff_n`; coeff is empty when the cycle has none.
inline void write_rewarded_csv(std::ostream& os, const RewardedPath& rp, const std::string& source) {
  detail::csv_metadata(os, rp.path().provenance(), source, rp.path().horizon());
  os << "n,S_n,x_n,r_n,coeff_n\n";
  const auto s = rp.path().epochs_with_overshoot();
  const auto cycles = rp.cycles();
  for (std::size_t i = 0; i < s.size(); ++i) {
    using detail::format_number;
    os << i + 1 << ',' << format_number(s[i]) << ',' << format_number(cycles[i].x) << ','
       << format_number(cycles[i].r) << ',';
    if (cycles[i].coeff) os << format_number(*cycles[i].coeff);
    os << '\n';
  }
}

/// `customer,arrival,service_start,departure,sojourn,cycle_id`.
inline void write_queue_csv(std::ostream& os, const QueueTrace& trace) {
  using detail::format_number;
  os << "customer,arrival,service_start,departure,sojourn,cycle_id\n";
  for (std::size_t i = 0; i < trace.customers.size(); ++i) {
    const auto& c = trace.customers[i];
    os << i + 1 << ',' << format_number(c.arrival) << ',' << format_number(c.service_start) << ','
       << format_number(c.departure) << ',' << format_number(c.sojourn) << ',' << c.cycle_id << '\n';
  }
}

/// Long format `checkpoint,value`.
inline void write_trace_csv(std::ostream& os, const ConvergenceTrace& trace) {
  os << "checkpoint,value\n";
  for (std::size_t i = 0; i < trace.checkpoints.size(); ++i)
    os << detail::format_number(trace.checkpoints[i]) << ',' << detail::format_number(trace.values[i])
       << '\n';
}

}  // namespace renewalkit
