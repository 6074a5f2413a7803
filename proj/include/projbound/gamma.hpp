#pragma once

#include <projbound/errors.hpp>

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <string>

namespace projbound {

/// ln Γ(x) for x > 0.
inline double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw DomainError("log_gamma: argument must be positive and finite, got " + std::to_string(x));
  return boost::math::lgamma(x);
}

/// ln B(a, b) = ln Γ(a) + ln Γ(b) − ln Γ(a + b).
inline double log_beta(double a, double b) {
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

} // namespace projbound
