#pragma once

// Lower bounds on the node count N_K(m, p) of projective cubature formulas of
// index p (equivalently of isometric embeddings l_2^m -> l_p^n over K):
// the classical linear programming bound Lambda_K(m, p/2) and the bound
// delivered by the convolution test function, plus the large-p and large-m
// asymptotic constants that compare them.

#include <projbound/errors.hpp>
#include <projbound/field.hpp>
#include <projbound/gamma.hpp>
#include <projbound/jacobi.hpp>
#include <projbound/special_functions.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace projbound {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt v = 1;
  for (int j = 1; j <= k; ++j) {
    v *= n - k + j;
    v /= j;
  }
  return v;
}

namespace detail {

inline void require_m(int m) {
  if (m < 2) throw ParameterError("dimension m must be at least 2, got " + std::to_string(m));
}

inline void require_even_p(int p) {
  if (p < 2 || p % 2 != 0)
    throw ParameterError("index p must be an even integer >= 2, got " + std::to_string(p));
}

} // namespace detail

struct LpBoundValue {
  BigInt value;
  /// False when the quaternionic division by 2m - 1 left a remainder and
  /// `value` is the ceiling of the rational.
  bool exact = true;
};

/// Lambda_K(m, q) with the exact-division check exposed.
inline LpBoundValue lp_bound_detail(Field field, int m, int q) {
  detail::require_m(m);
  if (q < 1) throw ParameterError("lp_bound: q must be positive, got " + std::to_string(q));
  const int lo = q / 2, hi = (q + 1) / 2;
  switch (field.tag) {
  case FieldTag::R:
    return {binomial(m + q - 1, m - 1), true};
  case FieldTag::C:
    return {binomial(m + lo - 1, m - 1) * binomial(m + hi - 1, m - 1), true};
  case FieldTag::H: {
    const BigInt num = binomial(2 * m + lo - 2, 2 * m - 2) * binomial(2 * m + hi - 1, 2 * m - 2);
    const BigInt den = 2 * m - 1;
    const BigInt quot = num / den;
    if (quot * den == num) return {quot, true};
    return {quot + 1, false};
  }
  }
  return {};
}

inline BigInt lp_bound(Field field, int m, int q) { return lp_bound_detail(field, m, q).value; }

/// The quaternionic m = 2 bound in the form (1/3) C([p/2]+2, 2) C([(p+2)/2]+3, 2),
/// which does not agree with Lambda_H(2, p/2). Kept for side-by-side reporting.
inline BigInt lp_bound_h2_alternate_form(int p) {
  detail::require_even_p(p);
  return binomial(p / 2 + 2, 2) * binomial((p + 2) / 2 + 3, 2) / 3;
}

/// Smallest integer >= zeta, snapping to the nearest integer when zeta is
/// within 1e-9 relative of it.
inline BigInt ceil_snap(double zeta) {
  if (!std::isfinite(zeta) || !(zeta > 0.0)) {
    std::ostringstream os;
    os << "ceil_snap: expected a positive finite value, got " << zeta;
    throw NumericalError(os.str());
  }
  const double nearest = std::round(zeta);
  const double chosen = (std::fabs(zeta - nearest) <= 1e-9 * zeta) ? nearest : std::ceil(zeta);
  return BigInt(chosen);
}

/// ln of Γ(a+2)Γ(b+1) / (Γ(a+b+2) F(-b, a+1, a+2, eps)) * eps^{-(a+1)},
/// with a + 1 = delta(m-1)/2.
inline double log_yudin_closed_form(Field field, int m, double eps) {
  const auto pr = JacobiParams::for_field(field, m);
  const double a = pr.alpha, b = pr.beta;
  return log_gamma(a + 2.0) + log_gamma(b + 1.0) - log_gamma(a + b + 2.0) - std::log(hypergeom_F(b, a, eps)) -
         (a + 1.0) * std::log(eps);
}

/// Polynomial specializations: (1/eps)^{m-1} over C and
/// (1/eps)^{2m-2} / ((2m-1) - (2m-2) eps) over H. Not defined over R.
inline double yudin_special_form(Field field, int m, double eps) {
  detail::require_m(m);
  switch (field.tag) {
  case FieldTag::C:
    return std::exp(-(m - 1.0) * std::log(eps));
  case FieldTag::H:
    return std::exp(-(2.0 * m - 2.0) * std::log(eps)) / ((2.0 * m - 1.0) - (2.0 * m - 2.0) * eps);
  case FieldTag::R:
    break;
  }
  throw ParameterError("yudin_special_form: no polynomial form over R");
}

/// Largest zero eta of the Gegenbauer polynomial C_{p+1}^{m/2}, i.e. of
/// P_{p+1}^{((m-1)/2,(m-1)/2)}.
inline double gegenbauer_largest_root(int m, int p) {
  detail::require_m(m);
  detail::require_even_p(p);
  const double a = (m - 1.0) / 2.0;
  return largest_root({a, a}, p + 1);
}

struct RealIntegralRatio {
  double eta = 0.0;
  double value = 0.0;
};

/// Real-case bound as ∫_0^1 (1-s^2)^{(m-3)/2} ds / ∫_eta^1 (1-s^2)^{(m-3)/2} ds,
/// with eta taken from the Gegenbauer polynomial rather than the Jacobi root.
inline RealIntegralRatio yudin_integral_ratio_real(int m, int p) {
  const double eta = gegenbauer_largest_root(m, p);
  const double a = (m - 3.0) / 2.0;
  const JacobiParams sym{a, a};
  const double numer = 0.5 * tau(sym);
  const double denom = incomplete_weight_integral(sym, eta);
  return {eta, numer / denom};
}

struct BoundReport {
  Field field;
  int m = 2;
  int p = 2;
  BigInt lp_bound;
  double yudin_raw = 0.0;
  double log_yudin_raw = 0.0;
  BigInt yudin_bound;
  double epsilon = 0.0;
  double xi = 0.0;

  BigInt delta() const { return yudin_bound - lp_bound; }

  friend bool operator==(const BoundReport&, const BoundReport&) = default;
};

/// Both lower bounds for (field, m, p).
///
/// Over C and H the closed form is checked against its polynomial
/// specialization, over R against the Gegenbauer integral ratio; a
/// disagreement beyond 1e-9 relative is a NumericalError.
inline BoundReport yudin_bound(Field field, int m, int p) {
  detail::require_m(m);
  detail::require_even_p(p);
  const auto pr = JacobiParams::for_field(field, m);

  BoundReport rep;
  rep.field = field;
  rep.m = m;
  rep.p = p;
  rep.lp_bound = lp_bound(field, m, p / 2);
  rep.xi = largest_root(pr.shifted(), p / 2);
  rep.epsilon = 0.5 * (1.0 - rep.xi);
  rep.log_yudin_raw = log_yudin_closed_form(field, m, rep.epsilon);
  rep.yudin_raw = std::exp(rep.log_yudin_raw);

  const double check = (field == Field::real()) ? yudin_integral_ratio_real(m, p).value
                                                : yudin_special_form(field, m, rep.epsilon);
  if (!(std::fabs(check - rep.yudin_raw) <= 1e-9 * rep.yudin_raw)) {
    std::ostringstream os;
    os.precision(17);
    os << "yudin_bound: closed form " << rep.yudin_raw << " disagrees with specialized form " << check
       << " for field " << field.symbol() << ", m=" << m << ", p=" << p;
    throw NumericalError(os.str());
  }
  rep.yudin_bound = ceil_snap(rep.yudin_raw);
  return rep;
}

/// Rounded complex m = 2 bound minus floor((p/4 + 1)^2).
inline long long delta_C(int p) {
  detail::require_even_p(p);
  const auto rep = yudin_bound(Field::complex(), 2, p);
  const long long floor_sq = static_cast<long long>(p + 4) * (p + 4) / 16;
  if (BigInt(floor_sq) != rep.lp_bound)
    throw NumericalError("delta_C: floor((p/4+1)^2) differs from Lambda_C(2, p/2) at p=" + std::to_string(p));
  return static_cast<long long>(rep.delta());
}

/// Rounded quaternionic m = 2 bound minus Lambda_H(2, p/2).
inline long long delta_H(int p) {
  detail::require_even_p(p);
  return static_cast<long long>(yudin_bound(Field::quaternion(), 2, p).delta());
}

/// A quantity that may over- or underflow binary64; `log` is always valid.
struct LogValue {
  double value = 0.0;
  double log = 0.0;
  static LogValue from_log(double lg) { return {std::exp(lg), lg}; }
};

/// lambda_K(m) from the case table:
/// 2^{m-1}(m-1)!, 2^{4(m-1)}(m-1)!^2, 2^{8(m-1)}(2m-1)!(2m-2)!.
inline LogValue lambda_asym_case_table(Field field, int m) {
  detail::require_m(m);
  const double ln2 = std::numbers::ln2;
  switch (field.tag) {
  case FieldTag::R:
    return LogValue::from_log((m - 1) * ln2 + log_gamma(m));
  case FieldTag::C:
    return LogValue::from_log(4.0 * (m - 1) * ln2 + 2.0 * log_gamma(m));
  case FieldTag::H:
    return LogValue::from_log(8.0 * (m - 1) * ln2 + log_gamma(2.0 * m) + log_gamma(2.0 * m - 1.0));
  }
  return {};
}

/// lambda_K(m) = Γ(δm/2) Γ(δ(m-1)/2 + 1) / Γ(δ/2) * 2^{2δ(m-1)}.
inline LogValue lambda_asym(Field field, int m) {
  detail::require_m(m);
  const double d = field.delta();
  const double lg = log_gamma(d * m / 2.0) + log_gamma(d * (m - 1) / 2.0 + 1.0) - log_gamma(d / 2.0) +
                    2.0 * d * (m - 1) * std::numbers::ln2;
  if (m <= 20) {
    const double table = lambda_asym_case_table(field, m).log;
    if (!(std::fabs(lg - table) <= 1e-10 * std::max(1.0, std::fabs(table))))
      throw NumericalError("lambda_asym: unified form disagrees with the case table at m=" + std::to_string(m));
  }
  return LogValue::from_log(lg);
}

/// kappa_K(m) = j_{nu,1}^{2 nu} / (Γ(nu+1)^2 16^nu), nu = δ(m-1)/2.
inline LogValue kappa(Field field, int m) {
  detail::require_m(m);
  const double nu = field.delta() * (m - 1) / 2.0;
  const auto zero = bessel_first_zero(nu);
  const double lg = 2.0 * nu * std::log(zero.value) - 2.0 * log_gamma(nu + 1.0) - nu * std::log(16.0);
  return LogValue::from_log(lg);
}

/// Finite-difference slope of ln kappa_K(m) between m_lo and m_hi.
inline double log_kappa_slope(Field field, int m_lo, int m_hi) {
  if (m_hi <= m_lo) throw ParameterError("log_kappa_slope: need m_hi > m_lo");
  return (kappa(field, m_hi).log - kappa(field, m_lo).log) / (m_hi - m_lo);
}

struct AsymptoticRow {
  int m = 2;
  double nu = 0.0;
  double bessel_zero = 0.0;
  LogValue kappa;
  /// (1/(pi δ m)) (e/4)^{δ(m-1)}
  LogValue kappa_asymptotic;
  /// ln kappa - ln kappa_asymptotic; not expected to tend to 0.
  double log_ratio = 0.0;
  /// liminf constant of the LP bound: 1/lambda_K(m).
  LogValue liminf_lp;
  /// liminf constant of the test-function bound:
  /// Γ(α+2)Γ(β+1)/Γ(α+β+2) j_{α+1,1}^{-δ(m-1)}.
  LogValue liminf_yudin;
  /// 2^{δ(m-1)} kappa_K(m): ratio of the upper to the lower asymptotic bound.
  LogValue gap;
  /// (1/(pi δ m)) (e/2)^{δ(m-1)}
  LogValue gap_asymptotic;
};

inline std::vector<AsymptoticRow> asymptotic_report(Field field, std::span<const int> m_list) {
  std::vector<AsymptoticRow> rows;
  rows.reserve(m_list.size());
  const double d = field.delta();
  for (int m : m_list) {
    detail::require_m(m);
    const auto pr = JacobiParams::for_field(field, m);
    AsymptoticRow row;
    row.m = m;
    row.nu = d * (m - 1) / 2.0;
    row.bessel_zero = bessel_first_zero(row.nu).value;
    row.kappa = kappa(field, m);
    const double log_pi_dm = std::log(std::numbers::pi * d * m);
    row.kappa_asymptotic = LogValue::from_log(-log_pi_dm + d * (m - 1) * (1.0 - 2.0 * std::numbers::ln2));
    row.log_ratio = row.kappa.log - row.kappa_asymptotic.log;
    row.liminf_lp = LogValue::from_log(-lambda_asym(field, m).log);
    row.liminf_yudin = LogValue::from_log(log_gamma(pr.alpha + 2.0) + log_gamma(pr.beta + 1.0) -
                                          log_gamma(pr.alpha + pr.beta + 2.0) -
                                          d * (m - 1) * std::log(row.bessel_zero));
    row.gap = LogValue::from_log(d * (m - 1) * std::numbers::ln2 + row.kappa.log);
    row.gap_asymptotic = LogValue::from_log(-log_pi_dm + d * (m - 1) * (1.0 - std::numbers::ln2));
    rows.push_back(row);
  }
  return rows;
}

struct OscillationRowH {
  int p = 2;
  long long delta = 0;
  /// Δ(p) - Δ(p-2); present from the second row on.
  std::optional<long long> first_diff;
  /// Δ'(p) - Δ'(p-2); present from the third row on.
  std::optional<long long> second_diff;
  /// sign Δ''(p) == (-1)^{p/2+1}, when Δ'' exists.
  std::optional<bool> sign_law;
};

struct OscillationRowC {
  int p = 2;
  long long delta = 0;
  std::optional<long long> first_diff;
  /// Δ'(p) >= Δ'(p-2), when both exist.
  std::optional<bool> first_diff_nondecreasing;
};

struct OscillationReport {
  std::vector<OscillationRowH> quaternion;
  std::vector<OscillationRowC> complex;
  bool sign_law_holds = true;
  bool delta_C_nondecreasing = true;
  /// Δ'_C nondecreasing over rows with p >= 18.
  bool first_diff_C_nondecreasing_from_18 = true;
};

/// Differences of Δ_H and Δ_C over p = 2..p_max. Observational: nothing here throws on a
/// violated pattern, it is only flagged.
inline OscillationReport oscillation_report(int p_max) {
  if (p_max < 8 || p_max % 2 != 0)
    throw ParameterError("oscillation_report: p_max must be even and >= 8, got " + std::to_string(p_max));
  OscillationReport rep;
  for (int p = 2; p <= p_max; p += 2) {
    OscillationRowH h;
    h.p = p;
    h.delta = delta_H(p);
    if (!rep.quaternion.empty()) {
      const auto& prev = rep.quaternion.back();
      h.first_diff = h.delta - prev.delta;
      if (prev.first_diff) {
        h.second_diff = *h.first_diff - *prev.first_diff;
        const int expected = ((p / 2 + 1) % 2 == 0) ? 1 : -1;
        const int sign = (*h.second_diff > 0) - (*h.second_diff < 0);
        h.sign_law = sign == expected;
        rep.sign_law_holds = rep.sign_law_holds && *h.sign_law;
      }
    }
    rep.quaternion.push_back(h);

    OscillationRowC c;
    c.p = p;
    c.delta = delta_C(p);
    if (!rep.complex.empty()) {
      const auto& prev = rep.complex.back();
      c.first_diff = c.delta - prev.delta;
      rep.delta_C_nondecreasing = rep.delta_C_nondecreasing && c.delta >= prev.delta;
      if (prev.first_diff) {
        c.first_diff_nondecreasing = *c.first_diff >= *prev.first_diff;
        if (p >= 20)
          rep.first_diff_C_nondecreasing_from_18 = rep.first_diff_C_nondecreasing_from_18 && *c.first_diff_nondecreasing;
      }
    }
    rep.complex.push_back(c);
  }
  return rep;
}

} // namespace projbound
