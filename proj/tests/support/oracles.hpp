#pragma once

// Test-only reference computations. Nothing here calls the closed forms it
// is used to check.

#include <projbound/cubature.hpp>
#include <projbound/field.hpp>
#include <projbound/jacobi.hpp>
#include <projbound/quaternion.hpp>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace projbound::oracle {

/// ∫_lo^1 f(t) (1-t)^a (1+t)^b dt by tanh-sinh, which copes with the endpoint
/// singularity at t = 1 directly.
inline double tanh_sinh_tail(const JacobiParams& pr, double lo, const std::function<double(double)>& f,
                             double tol = 1e-14) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  auto g = [&](double t, double tc) {
    // tc is the signed distance to the nearer endpoint (positive near t = 1).
    const double one_minus_t = (tc > 0.0) ? tc : 1.0 - t;
    return f(t) * std::pow(one_minus_t, pr.alpha) * std::pow(1.0 + t, pr.beta);
  };
  return integrator.integrate(g, lo, 1.0, tol);
}

/// ∫_{-1}^1 f(t) (1-t)^a (1+t)^b dt by tanh-sinh.
inline double tanh_sinh_full(const JacobiParams& pr, const std::function<double(double)>& f, double tol = 1e-14) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  auto g = [&](double t, double tc) {
    double one_minus_t = 1.0 - t, one_plus_t = 1.0 + t;
    if (tc > 0.0) one_minus_t = tc;
    if (tc < 0.0) one_plus_t = -tc;
    return f(t) * std::pow(one_minus_t, pr.alpha) * std::pow(one_plus_t, pr.beta);
  };
  return integrator.integrate(g, -1.0, 1.0, tol);
}

/// Expectation of F(a, b, z) where, for u uniform on the unit sphere of K^m,
/// a = |u_1|^2, b = |u_2|^2 and z is the cosine between u_1 and u_2 viewed
/// in R^delta. (a, b) is Dirichlet(δ/2, δ/2, δ(m-2)/2) (b = 1 - a when m = 2)
/// and z is independent with density ∝ (1 - z^2)^{(δ-3)/2} (z = ±1 for δ = 1).
template <class F>
double sphere_expectation(Field field, int m, F&& fn, int order = 24) {
  const double d = field.delta();
  // Beta(p, q) on [0, 1] <-> Jacobi weight (1 - x)^{q-1} (1 + x)^{p-1}, x = 2s - 1.
  auto beta_rule = [&](double p, double q) {
    const JacobiParams pr{q - 1.0, p - 1.0};
    auto rule = gauss_jacobi(pr, order);
    const double total = tau(pr);
    for (auto& w : rule.weights) w /= total;
    for (auto& x : rule.nodes) x = 0.5 * (x + 1.0);
    return rule;
  };
  const auto a_rule = beta_rule(d / 2.0, d * (m - 1) / 2.0);
  QuadratureRule v_rule;
  if (m >= 3) v_rule = beta_rule(d / 2.0, d * (m - 2) / 2.0);

  std::vector<double> z_nodes, z_weights;
  if (field.delta() == 1) {
    z_nodes = {-1.0, 1.0};
    z_weights = {0.5, 0.5};
  } else {
    const JacobiParams zp{(d - 3.0) / 2.0, (d - 3.0) / 2.0};
    auto zr = gauss_jacobi(zp, order);
    const double total = tau(zp);
    z_nodes = zr.nodes;
    for (double w : zr.weights) z_weights.push_back(w / total);
  }

  double acc = 0.0;
  for (std::size_t ia = 0; ia < a_rule.nodes.size(); ++ia) {
    const double a = a_rule.nodes[ia];
    auto over_z = [&](double b) {
      double s = 0.0;
      for (std::size_t iz = 0; iz < z_nodes.size(); ++iz) s += z_weights[iz] * fn(a, b, z_nodes[iz]);
      return s;
    };
    if (m == 2) {
      acc += a_rule.weights[ia] * over_z(1.0 - a);
    } else {
      for (std::size_t iv = 0; iv < v_rule.nodes.size(); ++iv)
        acc += a_rule.weights[ia] * v_rule.weights[iv] * over_z((1.0 - a) * v_rule.nodes[iv]);
    }
  }
  return acc;
}

/// ∫ G(x u) H(u y) dσ(u) for x u, u y projective cosines and x y = t, for
/// polynomial G, H (evaluated through the sphere reduction above).
template <class G, class H>
double sphere_convolution(Field field, int m, G&& g, H&& h, double t, int order = 24) {
  const double c = std::sqrt(0.5 * (1.0 + t));
  const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
  return sphere_expectation(
      field, m,
      [&](double a, double b, double z) {
        const double uy = c * c * a + s * s * b + 2.0 * c * s * std::sqrt(a * b) * z;
        return g(2.0 * a - 1.0) * h(2.0 * uy - 1.0);
      },
      order);
}

/// (g * h)(t) over R, m = 3, with h the indicator of [xi, 1]. The azimuthal
/// integral of the indicator is done in closed form, leaving a 1-D integral
/// in w = cos(theta) that tanh-sinh handles piecewise between the kinks.
template <class G>
double real_m3_indicator_convolution(G&& g, double xi, double t) {
  const double eta = std::sqrt(0.5 * (1.0 + xi));
  const double c = std::sqrt(0.5 * (1.0 + t));
  const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
  auto azimuth_fraction = [&](double w) {
    const double A = c * w;
    const double B = s * std::sqrt(std::max(0.0, 1.0 - w * w));
    if (B == 0.0) return std::fabs(A) >= eta ? 1.0 : 0.0;
    auto ge = [](double z) { return std::acos(std::clamp(z, -1.0, 1.0)) / std::numbers::pi; };
    return ge((eta - A) / B) + (1.0 - ge((-eta - A) / B));
  };
  auto integrand = [&](double w) { return g(2.0 * w * w - 1.0) * azimuth_fraction(w); };

  const double gamma = std::acos(c), psi = std::acos(eta);
  std::vector<double> cuts = {-1.0, -eta, eta, 1.0};
  for (double v : {std::cos(gamma + psi), std::cos(gamma - psi)}) {
    cuts.push_back(v);
    cuts.push_back(-v);
  }
  std::sort(cuts.begin(), cuts.end());
  boost::math::quadrature::tanh_sinh<double> integrator;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    if (hi - lo < 1e-15) continue;
    if (hi <= -eta || lo >= eta) total += integrator.integrate(integrand, lo, hi, 1e-13);
  }
  return 0.5 * total;
}

// -- point-set fixtures

/// Real m = 2 nodes at angles j pi / n: a tight projective design of index 2(n-1).
inline std::vector<Node> circle_nodes(int n, double perturb_first = 0.0, int perturbed_index = 0) {
  std::vector<Node> nodes;
  for (int j = 0; j < n; ++j) {
    double theta = std::numbers::pi * j / n;
    if (j == perturbed_index) theta += perturb_first;
    nodes.push_back({Quaternion{std::cos(theta)}, Quaternion{std::sin(theta)}});
  }
  return nodes;
}

inline std::vector<Node> orthonormal_basis(int m) {
  std::vector<Node> nodes;
  for (int i = 0; i < m; ++i) {
    Node e(static_cast<std::size_t>(m));
    e[static_cast<std::size_t>(i)] = Quaternion{1.0};
    nodes.push_back(e);
  }
  return nodes;
}

inline Quaternion random_scalar(Field field, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Quaternion q{nd(rng)};
  if (field.delta() >= 2) q.x = nd(rng);
  if (field.delta() == 4) {
    q.y = nd(rng);
    q.z = nd(rng);
  }
  return q;
}

inline Quaternion random_unit_scalar(Field field, std::mt19937_64& rng) {
  const auto q = random_scalar(field, rng);
  return q * (1.0 / q.abs());
}

inline Node random_unit_node(Field field, int m, std::mt19937_64& rng) {
  Node v(static_cast<std::size_t>(m));
  double norm = 0.0;
  for (auto& c : v) {
    c = random_scalar(field, rng);
    norm += c.norm_sq();
  }
  const double inv = 1.0 / std::sqrt(norm);
  for (auto& c : v) c = c * inv;
  return v;
}

inline std::vector<double> random_weights(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ud(0.1, 1.0);
  std::vector<double> w(n);
  double sum = 0.0;
  for (auto& x : w) sum += (x = ud(rng));
  for (auto& x : w) x /= sum;
  return w;
}

} // namespace projbound::oracle
