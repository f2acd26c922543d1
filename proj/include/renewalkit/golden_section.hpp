#pragma once

#include <cmath>
#include <utility>

#include "renewalkit/error.hpp"

namespace renewalkit {

struct ScalarMinimum {
  double x;
  double fx;
  int iterations;
};

/// Golden-section search for a minimum of a unimodal `f` on [lo, hi].
/// Stops once the bracket half-width drops below `tol`; one new function
/// evaluation per iteration.
template <class F>
ScalarMinimum golden_section_minimize(F&& f, double lo, double hi, double tol = 1e-6,
                                      int max_iterations = 500) {
  if (!(lo < hi)) throw InvalidParameter("golden section needs lo < hi");
  if (!(tol > 0)) throw InvalidParameter("golden section needs tol > 0");

  constexpr double inv_phi = 0.6180339887498949;  // (sqrt(5) - 1) / 2
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  int it = 0;
  while (0.5 * (b - a) > tol && it < max_iterations) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++it;
  }
  const double x = 0.5 * (a + b);
  return {x, f(x), it};
}

}  // namespace renewalkit
