#pragma once

// Jacobi polynomials P_k^{(alpha,beta)} in the standardization
// P_k(1) = binom(alpha + k, k), orthogonal for the weight
// (1 - t)^alpha (1 + t)^beta on (-1, 1). Gauss-Jacobi quadrature built on
// top of them is the reference integrator for everything else.

#include <projbound/errors.hpp>
#include <projbound/field.hpp>
#include <projbound/gamma.hpp>
#include <projbound/summation.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace projbound {

struct JacobiParams {
  double alpha = 0.0;
  double beta = 0.0;

  void validate() const {
    if (!(alpha > -1.0) || !(beta > -1.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
      std::ostringstream os;
      os << "Jacobi parameters must satisfy alpha, beta > -1 (got alpha=" << alpha
         << ", beta=" << beta << ")";
      throw ParameterError(os.str());
    }
  }

  /// alpha + beta + 1, the constant in the Jacobi differential equation.
  double lambda() const noexcept { return alpha + beta + 1.0; }

  /// Parameters (alpha + 1, beta + 1) of the derivative family.
  JacobiParams shifted() const noexcept { return {alpha + 1.0, beta + 1.0}; }

  /// alpha = (delta(m-1) - 2)/2, beta = (delta - 2)/2.
  static JacobiParams for_field(Field field, int m) {
    if (m < 2)
      throw ParameterError("dimension m must be at least 2, got " + std::to_string(m));
    const double d = field.delta();
    return {(d * (m - 1) - 2.0) / 2.0, (d - 2.0) / 2.0};
  }

  friend bool operator==(const JacobiParams&, const JacobiParams&) = default;
};

/// Weight (1 - t)^alpha (1 + t)^beta.
inline double jacobi_weight(const JacobiParams& params, double t) {
  return std::pow(1.0 - t, params.alpha) * std::pow(1.0 + t, params.beta);
}

namespace detail {

inline void require_degree(int k, const char* what) {
  if (k < 0)
    throw ParameterError(std::string(what) + ": degree must be nonnegative, got " + std::to_string(k));
}

inline double jacobi_p1(const JacobiParams& pr, double t) {
  return 0.5 * ((pr.alpha + pr.beta + 2.0) * t + (pr.alpha - pr.beta));
}

/// One step of the three-term recurrence: P_n from P_{n-1}, P_{n-2}, n >= 2.
inline double jacobi_step(const JacobiParams& pr, int n, double t, double pm1, double pm2) {
  const double a = pr.alpha, b = pr.beta;
  const double s = 2.0 * n + a + b;
  const double c1 = 2.0 * n * (n + a + b) * (s - 2.0);
  const double c2 = (s - 1.0) * (a * a - b * b);
  const double c3 = (s - 2.0) * (s - 1.0) * s;
  const double c4 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * s;
  return (std::fma(c3 * t, pm1, c2 * pm1) - c4 * pm2) / c1;
}

/// Forward recurrence in extended precision, used to polish roots.
inline long double jacobi_eval_long(const JacobiParams& pr, int k, long double t) {
  const long double a = pr.alpha, b = pr.beta;
  if (k == 0) return 1.0L;
  long double pm2 = 1.0L;
  long double pm1 = 0.5L * ((a + b + 2.0L) * t + (a - b));
  for (int n = 2; n <= k; ++n) {
    const long double s = 2.0L * n + a + b;
    const long double c1 = 2.0L * n * (n + a + b) * (s - 2.0L);
    const long double c2 = (s - 1.0L) * (a * a - b * b);
    const long double c3 = (s - 2.0L) * (s - 1.0L) * s;
    const long double c4 = 2.0L * (n + a - 1.0L) * (n + b - 1.0L) * s;
    const long double pn = ((c3 * t + c2) * pm1 - c4 * pm2) / c1;
    pm2 = pm1;
    pm1 = pn;
  }
  return pm1;
}

/// Two Newton steps on P_k in long double, starting from a double root.
inline double polish_root(const JacobiParams& pr, int k, double x) {
  long double y = x;
  for (int it = 0; it < 2; ++it) {
    const long double f = jacobi_eval_long(pr, k, y);
    const long double df = 0.5L * (k + pr.alpha + pr.beta + 1.0L) * jacobi_eval_long(pr.shifted(), k - 1, y);
    if (df == 0.0L) break;
    y -= f / df;
  }
  const double out = static_cast<double>(y);
  return std::fabs(out - x) < 1e-12 ? out : x;
}

} // namespace detail

/// P_k^{(alpha,beta)}(t); t may lie outside [-1, 1].
inline double jacobi_eval(const JacobiParams& params, int k, double t) {
  params.validate();
  detail::require_degree(k, "jacobi_eval");
  if (k == 0) return 1.0;
  double pm2 = 1.0;
  double pm1 = detail::jacobi_p1(params, t);
  for (int n = 2; n <= k; ++n) {
    const double pn = detail::jacobi_step(params, n, t, pm1, pm2);
    pm2 = pm1;
    pm1 = pn;
  }
  return pm1;
}

/// P_0(t), ..., P_K(t) in one forward sweep.
inline std::vector<double> jacobi_eval_upto(const JacobiParams& params, int max_degree, double t) {
  params.validate();
  detail::require_degree(max_degree, "jacobi_eval_upto");
  std::vector<double> out(static_cast<std::size_t>(max_degree) + 1);
  out[0] = 1.0;
  if (max_degree >= 1) out[1] = detail::jacobi_p1(params, t);
  for (int n = 2; n <= max_degree; ++n)
    out[n] = detail::jacobi_step(params, n, t, out[n - 1], out[n - 2]);
  return out;
}

/// d/dt P_k^{(alpha,beta)}(t) = (k + alpha + beta + 1)/2 * P_{k-1}^{(alpha+1,beta+1)}(t).
inline double jacobi_deriv(const JacobiParams& params, int k, double t) {
  params.validate();
  detail::require_degree(k, "jacobi_deriv");
  if (k == 0) return 0.0;
  return 0.5 * (k + params.alpha + params.beta + 1.0) * jacobi_eval(params.shifted(), k - 1, t);
}

/// P_k(1) = binom(alpha + k, k), as a running product.
inline double jacobi_at_one(const JacobiParams& params, int k) {
  params.validate();
  detail::require_degree(k, "jacobi_at_one");
  double v = 1.0;
  for (int j = 1; j <= k; ++j) v *= (params.alpha + j) / j;
  return v;
}

/// ln of the total weight mass: 2^{a+b+1} Γ(a+1)Γ(b+1)/Γ(a+b+2).
inline double log_tau(const JacobiParams& params) {
  params.validate();
  return (params.alpha + params.beta + 1.0) * std::numbers::ln2 +
         log_beta(params.alpha + 1.0, params.beta + 1.0);
}

inline double tau(const JacobiParams& params) { return std::exp(log_tau(params)); }

/// ln ||P_k||^2 with respect to the Jacobi weight.
inline double log_jacobi_norm_sq(const JacobiParams& params, int k) {
  params.validate();
  detail::require_degree(k, "jacobi_norm");
  if (k == 0) return log_tau(params);
  const double a = params.alpha, b = params.beta;
  return (a + b + 1.0) * std::numbers::ln2 - std::log(2.0 * k + a + b + 1.0) + log_gamma(k + a + 1.0) +
         log_gamma(k + b + 1.0) - log_gamma(k + a + b + 1.0) - log_gamma(k + 1.0);
}

/// nu_k = 1/||P_k||^2.
inline double jacobi_norm_nu(const JacobiParams& params, int k) {
  return std::exp(-log_jacobi_norm_sq(params, k));
}

/// Largest zero of P_k^{(alpha,beta)}.
///
/// The topmost sign change on a Chebyshev-angle grid of 8k points gives the
/// bracket; the grid is refined until all k sign changes are seen, so no pair
/// of roots can hide inside a single cell above the bracket. Newton steps are
/// accepted only while they stay inside the shrinking bracket.
inline double largest_root(const JacobiParams& params, int k) {
  params.validate();
  if (k < 1) throw ParameterError("largest_root: degree must be positive, got " + std::to_string(k));
  if (k == 1) return (params.beta - params.alpha) / (params.alpha + params.beta + 2.0);

  double lo = 0.0, hi = 0.0;
  bool found = false;
  for (int refine = 0, grid = 8 * k; refine < 6 && !found; ++refine, grid *= 4) {
    int changes = 0;
    double prev_t = 1.0;
    double prev_v = jacobi_eval(params, k, 1.0);
    double blo = 0.0, bhi = 0.0;
    bool have = false;
    for (int j = 1; j <= grid; ++j) {
      const double t = std::cos(std::numbers::pi * j / grid);
      const double v = jacobi_eval(params, k, t);
      if (v == 0.0 && !have) {
        return t;
      }
      if ((v < 0.0) != (prev_v < 0.0)) {
        ++changes;
        if (!have) {
          blo = t;
          bhi = prev_t;
          have = true;
        }
      }
      prev_t = t;
      prev_v = v;
    }
    if (have && changes >= k) {
      lo = blo;
      hi = bhi;
      found = true;
    }
  }
  if (!found) {
    std::ostringstream os;
    os << "largest_root: could not isolate the roots of P_" << k << "^(" << params.alpha << ","
       << params.beta << ")";
    throw NumericalError(os.str());
  }

  const double f_hi = jacobi_eval(params, k, hi);
  const bool hi_positive = f_hi > 0.0;
  double x = hi;
  for (int it = 0; it < 200; ++it) {
    const double f = jacobi_eval(params, k, x);
    if (f == 0.0) return detail::polish_root(params, k, x);
    if ((f > 0.0) == hi_positive)
      hi = x;
    else
      lo = x;
    const double df = jacobi_deriv(params, k, x);
    double next = (df != 0.0) ? x - f / df : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::fabs(next - x);
    x = next;
    if (step <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(x)) ||
        hi - lo <= 4.0 * std::numeric_limits<double>::epsilon())
      return detail::polish_root(params, k, x);
  }
  std::ostringstream os;
  os << "largest_root: no convergence for P_" << k << "^(" << params.alpha << "," << params.beta
     << "), bracket [" << lo << ", " << hi << "]";
  throw NumericalError(os.str());
}

/// Gauss rule for the weight (1 - t)^alpha (1 + t)^beta.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  JacobiParams params;
  int order = 0;

  template <class F>
  double integrate(F&& f) const {
    CompensatedSum s;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s.value();
  }
};

/// Golub-Welsch: nodes are the eigenvalues of the symmetric Jacobi matrix,
/// polished by Newton on P_order. Weights come from the Christoffel function
/// 1 / sum_k nu_k P_k(x)^2, which is a sum of positive terms.
inline QuadratureRule gauss_jacobi(const JacobiParams& params, int order) {
  params.validate();
  if (order < 1) throw ParameterError("gauss_jacobi: order must be positive, got " + std::to_string(order));
  const double a = params.alpha, b = params.beta;

  QuadratureRule rule;
  rule.params = params;
  rule.order = order;

  Eigen::VectorXd diag(order);
  Eigen::VectorXd sub(std::max(order - 1, 1));
  diag(0) = (b - a) / (a + b + 2.0);
  for (int n = 1; n < order; ++n) {
    const double s = 2.0 * n + a + b;
    diag(n) = (b * b - a * a) / (s * (s + 2.0));
  }
  for (int n = 1; n < order; ++n) {
    const double s = 2.0 * n + a + b;
    double b2 = 0.0;
    if (n == 1)
      b2 = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b));
    else
      b2 = 4.0 * n * (n + a) * (n + b) * (n + a + b) / (s * s * (s + 1.0) * (s - 1.0));
    sub(n - 1) = std::sqrt(b2);
  }

  std::vector<double> x(order);
  if (order == 1) {
    x[0] = diag(0);
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub.head(order - 1), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
      throw NumericalError("gauss_jacobi: tridiagonal eigenvalue solver failed");
    for (int i = 0; i < order; ++i) x[i] = solver.eigenvalues()(i);
    std::sort(x.begin(), x.end());
  }

  for (int i = 0; i < order; ++i) {
    double xi = x[i];
    for (int it = 0; it < 3; ++it) {
      const double f = jacobi_eval(params, order, xi);
      const double df = jacobi_deriv(params, order, xi);
      if (df == 0.0) break;
      const double dx = f / df;
      if (!(std::fabs(dx) < 1e-8)) break;
      xi -= dx;
      if (std::fabs(dx) <= 2.0 * std::numeric_limits<double>::epsilon()) break;
    }
    x[i] = std::clamp(xi, -1.0, 1.0);
  }

  std::vector<double> nu(order);
  for (int k = 0; k < order; ++k) nu[k] = jacobi_norm_nu(params, k);

  rule.nodes = x;
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    const auto p = jacobi_eval_upto(params, order - 1, x[i]);
    CompensatedSum s;
    for (int k = 0; k < order; ++k) s += nu[k] * p[k] * p[k];
    rule.weights[i] = 1.0 / s.value();
  }

  for (int i = 0; i < order; ++i) {
    if (!(rule.weights[i] > 0.0) || (i > 0 && !(rule.nodes[i] > rule.nodes[i - 1])) ||
        !(rule.nodes[i] > -1.0 && rule.nodes[i] < 1.0)) {
      std::ostringstream os;
      os << "gauss_jacobi: degenerate rule for order " << order << " (alpha=" << a << ", beta=" << b << ")";
      throw NumericalError(os.str());
    }
  }
  return rule;
}

namespace detail {

inline bool is_nonnegative_integer(double v) { return v >= 0.0 && v == std::floor(v); }

/// Gauss-Legendre on [lo, hi] of f(t) * w(t).
template <class F>
double legendre_panel(const QuadratureRule& gl, double lo, double hi, const JacobiParams& params, F& f) {
  const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
  CompensatedSum s;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double t = mid + half * gl.nodes[i];
    s += gl.weights[i] * jacobi_weight(params, t) * f(t);
  }
  return half * s.value();
}

} // namespace detail

/// ∫_xi^1 f(t) (1 - t)^alpha (1 + t)^beta dt for smooth f.
///
/// The piece touching t = 1 uses an affinely mapped Gauss-Jacobi rule with
/// weight (1 - t)^alpha; the factor (1 + t)^beta rides along as part of the
/// integrand. When beta is not a nonnegative integer and xi < 0, that factor
/// is singular close to the interval, so [xi, 0] is covered by Gauss-Legendre
/// panels whose width never exceeds the distance to t = -1.
template <class F>
double upper_tail_integral(const JacobiParams& params, double xi, F&& f, int order = 64) {
  params.validate();
  if (!(xi > -1.0 && xi < 1.0))
    throw DomainError("upper_tail_integral: lower limit must lie in (-1, 1), got " + std::to_string(xi));

  const bool smooth_at_minus_one = detail::is_nonnegative_integer(params.beta);
  const double split = (smooth_at_minus_one || xi >= 0.0) ? xi : 0.0;

  const double half = 0.5 * (1.0 - split);
  const auto rule = gauss_jacobi({params.alpha, 0.0}, order);
  CompensatedSum total;
  {
    CompensatedSum s;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double one_minus_t = half * (1.0 - rule.nodes[i]);
      const double t = 1.0 - one_minus_t;
      s += rule.weights[i] * std::pow(1.0 + t, params.beta) * f(t);
    }
    total += std::pow(half, params.alpha + 1.0) * s.value();
  }

  if (split > xi) {
    const auto gl = gauss_jacobi({0.0, 0.0}, 48);
    double lo = xi;
    while (lo < split) {
      const double width = std::min({1.0 + lo, split - lo, 0.5});
      const double hi = (split - lo - width < 1e-14) ? split : lo + width;
      total += detail::legendre_panel(gl, lo, hi, params, f);
      lo = hi;
    }
  }
  return total.value();
}

/// ∫_xi^1 (1 - t)^alpha (1 + t)^beta dt.
inline double incomplete_weight_integral(const JacobiParams& params, double xi) {
  return upper_tail_integral(params, xi, [](double) { return 1.0; });
}

} // namespace projbound
