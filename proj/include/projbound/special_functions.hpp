#pragma once

#include <projbound/errors.hpp>
#include <projbound/gamma.hpp>
#include <projbound/jacobi.hpp>
#include <projbound/summation.hpp>

#include <boost/math/special_functions/bessel.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace projbound {

/// F(-beta, alpha+1; alpha+2; eps) via the Euler integral
/// (alpha+1) ∫_0^1 s^alpha (1 - eps s)^beta ds, with a 64-node Gauss-Jacobi
/// rule carrying the s^alpha factor.
inline double hypergeom_F(double beta, double alpha, double eps) {
  if (!(alpha > -1.0) || !(beta > -1.0))
    throw ParameterError("hypergeom_F: requires alpha > -1 and beta > -1");
  if (!(eps >= 0.0 && eps < 1.0))
    throw DomainError("hypergeom_F: eps must lie in [0, 1), got " + std::to_string(eps));
  if (eps == 0.0 || beta == 0.0) return 1.0;
  // s = (1 + x)/2 turns s^alpha into 2^-alpha (1 + x)^alpha.
  const auto rule = gauss_jacobi({0.0, alpha}, 64);
  const double integral =
      rule.integrate([&](double x) { return std::pow(1.0 - eps * 0.5 * (1.0 + x), beta); });
  return (alpha + 1.0) * std::exp(-(alpha + 1.0) * std::numbers::ln2) * integral;
}

/// Same value from the Gauss series sum_n (-beta)_n (alpha+1)_n / ((alpha+2)_n n!) eps^n.
/// Terminates when beta is a nonnegative integer.
inline double hypergeom_F_series(double beta, double alpha, double eps) {
  if (!(alpha > -1.0))
    throw ParameterError("hypergeom_F_series: requires alpha > -1");
  if (!(eps >= 0.0 && eps < 1.0))
    throw DomainError("hypergeom_F_series: eps must lie in [0, 1), got " + std::to_string(eps));
  CompensatedSum sum;
  double term = 1.0;
  sum += term;
  int quiet = 0;
  for (int n = 0; n < 100000; ++n) {
    term *= (n - beta) * (alpha + 1.0 + n) / ((alpha + 2.0 + n) * (n + 1.0)) * eps;
    if (term == 0.0) break;
    sum += term;
    if (std::fabs(term) < 1e-18 * std::fabs(sum.value())) {
      if (++quiet >= 3) break;
    } else {
      quiet = 0;
    }
  }
  return sum.value();
}

namespace detail {

inline void check_bessel_domain(double nu, double x) {
  if (!(nu >= 0.0 && nu <= 500.0) || !(x >= 0.0 && x <= 1000.0)) {
    std::ostringstream os;
    os << "bessel_j: arguments outside 0 <= nu <= 500, 0 <= x <= 1000 (nu=" << nu << ", x=" << x << ")";
    throw DomainError(os.str());
  }
}

} // namespace detail

/// J_nu(x) for 0 <= nu <= 500, 0 <= x <= 1000.
///
/// The ascending series is summed in the log domain whenever its largest term
/// stays below 1e3, which keeps the absolute cancellation error under ~1e-13.
/// Beyond that the series is useless in binary64 and Boost.Math's evaluator
/// takes over.
inline double bessel_j(double nu, double x) {
  detail::check_bessel_domain(nu, x);
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;

  const double log_half_x = std::log(0.5 * x);
  // The terms peak near k* solving (x/2)^2 = k (k + nu).
  const double q = 0.25 * x * x;
  const double k_peak = std::max(0.0, std::floor(0.5 * (-nu + std::sqrt(nu * nu + 4.0 * q))));
  auto log_term = [&](double k) {
    return (2.0 * k + nu) * log_half_x - log_gamma(k + 1.0) - log_gamma(k + nu + 1.0);
  };
  if (log_term(k_peak) > std::log(1e3)) return boost::math::cyl_bessel_j(nu, x);

  CompensatedSum sum;
  const double lead = log_term(0.0);
  double term = std::exp(lead);
  double biggest = term;
  sum += term;
  for (int k = 1; k < 2000; ++k) {
    term *= -q / (k * (k + nu));
    sum += term;
    biggest = std::max(biggest, std::fabs(term));
    if (k > k_peak && std::fabs(term) < std::max(1e-17 * std::fabs(sum.value()), 1e-32 * biggest)) break;
  }
  return sum.value();
}

/// First positive zero of J_nu.
struct BesselZero {
  double nu = 0.0;
  double value = 0.0;
  double residual = 0.0;
};

/// j_{nu,1} by safeguarded Newton inside a sign-change bracket.
///
/// sqrt(nu (nu + 2)) < j_{nu,1} < sqrt(2 (nu + 1)(nu + 3)) always holds, but
/// for nu above ~20 the upper end already lies past j_{nu,2}. The bracket is
/// therefore found by stepping up from the lower bound in increments smaller
/// than the zero spacing and stopping at the first sign change, which is
/// capped by the upper bound.
inline BesselZero bessel_first_zero(double nu) {
  if (!(nu >= 0.0 && nu <= 450.0))
    throw DomainError("bessel_first_zero: order must lie in [0, 450], got " + std::to_string(nu));
  const double lower = std::sqrt(nu * (nu + 2.0));
  const double upper = std::sqrt(2.0 * (nu + 1.0) * (nu + 3.0));
  const double step = 0.25 * (std::cbrt(nu) + 1.0);

  double lo = std::max(lower, 1e-3);
  double f_lo = bessel_j(nu, lo);
  double hi = lo;
  bool bracketed = false;
  while (hi < upper) {
    const double next = std::min(hi + step, upper);
    const double f_next = bessel_j(nu, next);
    if (f_next <= 0.0) {
      lo = hi;
      hi = next;
      bracketed = true;
      break;
    }
    hi = next;
    f_lo = f_next;
  }
  if (!bracketed || !(f_lo > 0.0)) {
    std::ostringstream os;
    os << "bessel_first_zero: failed to bracket j_{nu,1} for nu=" << nu;
    throw NumericalError(os.str());
  }

  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double f = bessel_j(nu, x);
    if (f == 0.0) return {nu, x, 0.0};
    if (f > 0.0)
      lo = x;
    else
      hi = x;
    // J'_nu = (nu/x) J_nu - J_{nu+1}
    const double df = nu / x * f - bessel_j(nu + 1.0, x);
    double next = (df != 0.0) ? x - f / df : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double delta = std::fabs(next - x);
    x = next;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (delta <= 2.0 * eps * x || hi - lo <= 4.0 * eps * x) {
      return {nu, x, std::fabs(bessel_j(nu, x))};
    }
  }
  std::ostringstream os;
  os << "bessel_first_zero: Newton iteration did not converge for nu=" << nu << " (bracket [" << lo << ", "
     << hi << "])";
  throw NumericalError(os.str());
}

} // namespace projbound
