#pragma once

// Numerical check that a weighted point set on the unit sphere of K^m is a
// projective cubature formula of index p.
//
// With the addition formula, sum_{i,j} rho_i rho_j P_k(x_i x_j) is a positive
// multiple of sum_s |sum_i rho_i phi_ks(x_i)|^2 over an orthonormal basis of
// the degree-2k invariant harmonics. The formula has index p exactly when
// these moments M_k vanish for 1 <= k <= p/2, so no harmonic basis is ever
// constructed.

#include <projbound/bounds.hpp>
#include <projbound/errors.hpp>
#include <projbound/field.hpp>
#include <projbound/jacobi.hpp>
#include <projbound/quaternion.hpp>
#include <projbound/summation.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace projbound {

/// A vector in K^m; every coordinate is stored as a quaternion.
using Node = std::vector<Quaternion>;

/// (x, y) = sum_k conj(x_k) y_k.
inline Quaternion inner_product(const Node& x, const Node& y) {
  if (x.size() != y.size())
    throw InputError("inner_product: dimension mismatch (" + std::to_string(x.size()) + " vs " +
                     std::to_string(y.size()) + ")");
  Quaternion acc;
  for (std::size_t k = 0; k < x.size(); ++k) acc = acc + x[k].conj() * y[k];
  return acc;
}

/// Projective cosine 2|(x, y)|^2 - 1 of two unit vectors.
inline double projective_cos(const Node& x, const Node& y) {
  return 2.0 * inner_product(x, y).norm_sq() - 1.0;
}

/// Right scalar multiplication x a, which leaves every projective cosine unchanged.
inline Node scale_right(const Node& x, const Quaternion& a) {
  Node out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = x[k] * a;
  return out;
}

struct PointSet {
  Field field;
  int m = 2;
  std::vector<Node> nodes;
  std::vector<double> weights;
  /// True when the weights were defaulted to 1/n.
  bool equal_weights = false;

  std::size_t size() const noexcept { return nodes.size(); }
};

namespace detail {

inline bool fits_field(const Quaternion& q, Field field) {
  switch (field.tag) {
  case FieldTag::R: return q.x == 0.0 && q.y == 0.0 && q.z == 0.0;
  case FieldTag::C: return q.y == 0.0 && q.z == 0.0;
  case FieldTag::H: return true;
  }
  return false;
}

} // namespace detail

/// Validating constructor. Nodes must be unit vectors with coordinates in the
/// field; weights, when given, must be positive and sum to 1 (1e-12 slack).
inline PointSet make_point_set(Field field, int m, std::vector<Node> nodes,
                               std::optional<std::vector<double>> weights = std::nullopt) {
  if (m < 2) throw InputError("point set: m must be at least 2, got " + std::to_string(m));
  if (nodes.empty()) throw InputError("point set: no nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].size() != static_cast<std::size_t>(m))
      throw InputError("nodes[" + std::to_string(i) + "]: expected " + std::to_string(m) + " coordinates, got " +
                       std::to_string(nodes[i].size()));
    double norm = 0.0;
    for (std::size_t k = 0; k < nodes[i].size(); ++k) {
      if (!detail::fits_field(nodes[i][k], field))
        throw InputError("nodes[" + std::to_string(i) + "][" + std::to_string(k) + "]: coordinate is not in field " +
                         to_string(field));
      norm += nodes[i][k].norm_sq();
    }
    if (!(std::fabs(norm - 1.0) <= 1e-12)) {
      std::ostringstream os;
      os.precision(17);
      os << "nodes[" << i << "]: not a unit vector (squared norm " << norm << ")";
      throw InputError(os.str());
    }
  }
  PointSet ps;
  ps.field = field;
  ps.m = m;
  if (weights) {
    if (weights->size() != nodes.size())
      throw InputError("weights: expected " + std::to_string(nodes.size()) + " entries, got " +
                       std::to_string(weights->size()));
    CompensatedSum total;
    for (std::size_t i = 0; i < weights->size(); ++i) {
      if (!((*weights)[i] > 0.0)) throw InputError("weights[" + std::to_string(i) + "]: must be positive");
      total += (*weights)[i];
    }
    if (!(std::fabs(total.value() - 1.0) <= 1e-12)) {
      std::ostringstream os;
      os.precision(17);
      os << "weights: must sum to 1 (sum is " << total.value() << ")";
      throw InputError(os.str());
    }
    ps.weights = std::move(*weights);
  } else {
    ps.weights.assign(nodes.size(), 1.0 / static_cast<double>(nodes.size()));
    ps.equal_weights = true;
  }
  ps.nodes = std::move(nodes);
  return ps;
}

namespace detail {

inline bool node_less(const Node& a, const Node& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

} // namespace detail

/// sum_{i,j} rho_i rho_j P_k(x_i x_j) for k = 0..max_degree.
///
/// Each pair is evaluated with its nodes in a canonical order and the terms
/// of every moment are summed in sorted order, so the result does not depend
/// on how the nodes are listed.
inline std::vector<double> jacobi_moments(const PointSet& ps, int max_degree) {
  if (max_degree < 0) throw ParameterError("jacobi_moments: negative degree");
  const auto params = JacobiParams::for_field(ps.field, ps.m);
  const std::size_t n = ps.size();
  const std::size_t K = static_cast<std::size_t>(max_degree);
  std::vector<std::vector<double>> terms(K + 1);
  for (auto& t : terms) t.reserve(n * (n + 1) / 2);

  const auto at_one = jacobi_eval_upto(params, max_degree, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double rr = ps.weights[i] * ps.weights[i];
    for (std::size_t k = 0; k <= K; ++k) terms[k].push_back(rr * at_one[k]);
    for (std::size_t j = i + 1; j < n; ++j) {
      const Node& a = detail::node_less(ps.nodes[j], ps.nodes[i]) ? ps.nodes[j] : ps.nodes[i];
      const Node& b = (&a == &ps.nodes[i]) ? ps.nodes[j] : ps.nodes[i];
      const double t = std::clamp(projective_cos(a, b), -1.0, 1.0);
      const double rr2 = 2.0 * ps.weights[i] * ps.weights[j];
      const auto p = jacobi_eval_upto(params, max_degree, t);
      for (std::size_t k = 0; k <= K; ++k) terms[k].push_back(rr2 * p[k]);
    }
  }
  std::vector<double> out(K + 1);
  for (std::size_t k = 0; k <= K; ++k) {
    std::sort(terms[k].begin(), terms[k].end());
    CompensatedSum s;
    for (double v : terms[k]) s += v;
    out[k] = s.value();
  }
  return out;
}

/// M_1, ..., M_{p/2}.
inline std::vector<double> moment_test(const PointSet& ps, int p) {
  detail::require_even_p(p);
  auto all = jacobi_moments(ps, p / 2);
  return {all.begin() + 1, all.end()};
}

struct VerificationReport {
  Field field;
  int m = 2;
  int p = 2;
  std::size_t n = 0;
  bool equal_weights = false;
  std::vector<double> moments;
  double max_abs_moment = 0.0;
  double min_moment = 0.0;
  double tolerance = 0.0;
  /// tolerance scaled by n.
  double effective_tolerance = 0.0;
  bool pass = false;
  /// All M_k >= -effective_tolerance, as the addition formula demands.
  bool nonnegative = true;
  BigInt lp_bound;
  BigInt yudin_bound;
  double yudin_raw = 0.0;
  bool tight_lp = false;
  bool tight_yudin = false;
  /// Pairs (i, j), i < j, with projective cosine within 1e-12 of 1.
  std::vector<std::pair<std::size_t, std::size_t>> duplicate_pairs;
};

/// Pass/fail of the moment test, paired with the bounds for (field, m, p).
/// A formula passes when max_k |M_k| <= tol * n.
inline VerificationReport verify(const PointSet& ps, int p, double tol = 1e-10) {
  detail::require_even_p(p);
  if (!(tol > 0.0)) throw ParameterError("verify: tolerance must be positive");
  VerificationReport rep;
  rep.field = ps.field;
  rep.m = ps.m;
  rep.p = p;
  rep.n = ps.size();
  rep.equal_weights = ps.equal_weights;
  rep.moments = moment_test(ps, p);
  rep.tolerance = tol;
  rep.effective_tolerance = tol * static_cast<double>(rep.n);
  rep.min_moment = rep.moments.empty() ? 0.0 : rep.moments.front();
  for (double mk : rep.moments) {
    rep.max_abs_moment = std::max(rep.max_abs_moment, std::fabs(mk));
    rep.min_moment = std::min(rep.min_moment, mk);
  }
  rep.pass = rep.max_abs_moment <= rep.effective_tolerance;
  rep.nonnegative = rep.min_moment >= -rep.effective_tolerance;

  const auto bounds = yudin_bound(ps.field, ps.m, p);
  rep.lp_bound = bounds.lp_bound;
  rep.yudin_bound = bounds.yudin_bound;
  rep.yudin_raw = bounds.yudin_raw;
  rep.tight_lp = BigInt(rep.n) == rep.lp_bound;
  rep.tight_yudin = BigInt(rep.n) == rep.yudin_bound;

  for (std::size_t i = 0; i < rep.n; ++i)
    for (std::size_t j = i + 1; j < rep.n; ++j)
      if (projective_cos(ps.nodes[i], ps.nodes[j]) >= 1.0 - 1e-12) rep.duplicate_pairs.emplace_back(i, j);
  return rep;
}

/// A point set read from disk together with its declared index.
struct PointSetFile {
  PointSet set;
  int p = 2;
};

namespace detail {

inline double json_real(const nlohmann::json& v, const std::string& where) {
  if (!v.is_number()) throw InputError(where + ": expected a number");
  return v.get<double>();
}

inline Quaternion json_scalar(const nlohmann::json& v, Field field, const std::string& where) {
  const int d = field.delta();
  if (v.is_number() && d == 1) return {v.get<double>(), 0.0, 0.0, 0.0};
  if (!v.is_array() || static_cast<int>(v.size()) != d)
    throw InputError(where + ": expected " + std::to_string(d) + " real" + (d == 1 ? "" : "s") + " per scalar");
  double c[4] = {0.0, 0.0, 0.0, 0.0};
  for (int i = 0; i < d; ++i) c[i] = json_real(v[i], where + "[" + std::to_string(i) + "]");
  return {c[0], c[1], c[2], c[3]};
}

} // namespace detail

/// {"field": "R"|"C"|"H", "m": int, "p": int, "nodes": [[scalar x m] x n], "weights": [reals]}
/// where a scalar is an array of delta reals (a bare number is accepted over R).
inline PointSetFile parse_point_set(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InputError("point set: top level must be an object");
  for (const char* key : {"field", "m", "p", "nodes"})
    if (!doc.contains(key)) throw InputError(std::string("point set: missing key \"") + key + "\"");
  if (!doc["field"].is_string()) throw InputError("field: expected a string");
  const Field field = Field::parse(doc["field"].get<std::string>());
  if (!doc["m"].is_number_integer()) throw InputError("m: expected an integer");
  if (!doc["p"].is_number_integer()) throw InputError("p: expected an integer");
  const int m = doc["m"].get<int>();
  const int p = doc["p"].get<int>();
  if (p < 2 || p % 2 != 0) throw InputError("p: must be an even integer >= 2, got " + std::to_string(p));
  if (!doc["nodes"].is_array()) throw InputError("nodes: expected an array");

  std::vector<Node> nodes;
  nodes.reserve(doc["nodes"].size());
  for (std::size_t i = 0; i < doc["nodes"].size(); ++i) {
    const auto& jn = doc["nodes"][i];
    const std::string where = "nodes[" + std::to_string(i) + "]";
    if (!jn.is_array()) throw InputError(where + ": expected an array of coordinates");
    Node node;
    for (std::size_t k = 0; k < jn.size(); ++k)
      node.push_back(detail::json_scalar(jn[k], field, where + "[" + std::to_string(k) + "]"));
    nodes.push_back(std::move(node));
  }

  std::optional<std::vector<double>> weights;
  if (doc.contains("weights") && !doc["weights"].is_null()) {
    if (!doc["weights"].is_array()) throw InputError("weights: expected an array");
    std::vector<double> w;
    for (std::size_t i = 0; i < doc["weights"].size(); ++i)
      w.push_back(detail::json_real(doc["weights"][i], "weights[" + std::to_string(i) + "]"));
    weights = std::move(w);
  }
  return {make_point_set(field, m, std::move(nodes), std::move(weights)), p};
}

inline PointSetFile load_point_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": JSON syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  try {
    return parse_point_set(doc);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline nlohmann::json to_json(const PointSet& ps, int p) {
  nlohmann::json nodes = nlohmann::json::array();
  const int d = ps.field.delta();
  for (const auto& node : ps.nodes) {
    nlohmann::json jn = nlohmann::json::array();
    for (const auto& q : node) {
      const double c[4] = {q.w, q.x, q.y, q.z};
      jn.push_back(std::vector<double>(c, c + d));
    }
    nodes.push_back(std::move(jn));
  }
  nlohmann::json doc = {{"field", to_string(ps.field)}, {"m", ps.m}, {"p", p}, {"nodes", std::move(nodes)}};
  if (!ps.equal_weights) doc["weights"] = ps.weights;
  return doc;
}

} // namespace projbound
