#pragma once

// Independent reference computations used only by tests. None of these call
// the closed forms they are compared against.

#include <cmath>
#include <functional>
#include <limits>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace oracle {

/// Golden-section maximization of a unimodal f on [lo, hi].
inline std::pair<double, double> golden_max(const std::function<double(double)>& f, double lo,
                                            double hi, int iterations = 200) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int k = 0; k < iterations && (b - a) > 1e-15 * (1.0 + std::abs(a)); ++k) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

/// Maximizer of f(t) over t > 0: log-grid scan on [e^-300, e^300], then
/// golden-section refinement of the log offset from the best scan node.
inline std::pair<double, double> log_grid_max(const std::function<double(double)>& f) {
  constexpr double lo = -300.0, step = 0.05;
  double best_s = lo, best = -std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 12000; ++k) {
    const double s = lo + step * k;
    const double v = f(std::exp(s));
    if (v > best) {
      best = v;
      best_s = s;
    }
  }
  const auto r = golden_max([&](double ds) { return f(std::exp(best_s + ds)); }, -step, step);
  return {std::exp(best_s + r.first), r.second};
}

/// Adaptive Gauss-Kronrod quadrature of f on [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tolerance = 1e-12) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 12, tolerance);
}

/// Central difference (f(x + h) - f(x - h)) / 2h.
inline double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace oracle
