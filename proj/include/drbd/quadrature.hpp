#pragma once

#include <functional>

namespace drbd {

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Adaptive composite Simpson integration of f over [a, b] to the given
/// absolute tolerance. The integrand must be finite on the interval.
/// Throws NumericError when the recursion-depth cap is exceeded before
/// the tolerance is met (the message carries the achieved estimate).
QuadResult integrate(const std::function<double(double)>& f, double a, double b, double tol,
                     int max_depth = 48);

}  // namespace drbd
