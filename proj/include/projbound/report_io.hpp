#pragma once

// Text, CSV, Markdown and JSON renderings of the library's reports. Reals
// are printed with 12 significant digits except in JSON, which keeps the
// shortest round-trip representation so that documents re-parse exactly.

#include <projbound/bounds.hpp>
#include <projbound/cubature.hpp>
#include <projbound/errors.hpp>
#include <projbound/test_function.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace projbound {

inline constexpr const char* table_schema = "projbound-table/1";

inline std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// -- exact integers in JSON: a number when it fits in int64, a decimal string otherwise.

inline nlohmann::json bigint_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return static_cast<long long>(v);
  return v.str();
}

inline BigInt bigint_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return BigInt(j.get<long long>());
  if (j.is_string()) return BigInt(j.get<std::string>());
  throw InputError("expected an integer or a decimal string");
}

// -- bound reports

inline nlohmann::json to_json(const BoundReport& r) {
  return {{"field", to_string(r.field)}, {"m", r.m},
          {"p", r.p},
          {"lp_bound", bigint_to_json(r.lp_bound)},
          {"yudin_raw", r.yudin_raw},
          {"log_yudin_raw", r.log_yudin_raw},
          {"yudin_bound", bigint_to_json(r.yudin_bound)},
          {"delta", bigint_to_json(r.delta())},
          {"epsilon", r.epsilon},
          {"xi", r.xi}};
}

inline BoundReport bound_report_from_json(const nlohmann::json& j) {
  BoundReport r;
  try {
    r.field = Field::parse(j.at("field").get<std::string>());
    r.m = j.at("m").get<int>();
    r.p = j.at("p").get<int>();
    r.lp_bound = bigint_from_json(j.at("lp_bound"));
    r.yudin_raw = j.at("yudin_raw").get<double>();
    r.log_yudin_raw = j.at("log_yudin_raw").get<double>();
    r.yudin_bound = bigint_from_json(j.at("yudin_bound"));
    r.epsilon = j.at("epsilon").get<double>();
    r.xi = j.at("xi").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bound report: ") + e.what());
  }
  return r;
}

inline void write_bound_text(std::ostream& os, const BoundReport& r) {
  os << "field        " << r.field.symbol() << "\n"
     << "m            " << r.m << "\n"
     << "p            " << r.p << "\n"
     << "xi           " << fmt12(r.xi) << "\n"
     << "epsilon      " << fmt12(r.epsilon) << "\n"
     << "lp_bound     " << r.lp_bound.str() << "\n"
     << "yudin_raw    " << fmt12(r.yudin_raw) << "\n"
     << "yudin_bound  " << r.yudin_bound.str() << "\n"
     << "delta        " << r.delta().str() << "\n";
}

// -- tables over p

struct TableRow {
  int p = 2;
  BigInt lp_bound;
  double yudin_raw = 0.0;
  BigInt yudin_bound;
  BigInt delta;
};

enum class TableFormat { Csv, Markdown, Json };

inline TableFormat parse_table_format(const std::string& s) {
  if (s == "csv") return TableFormat::Csv;
  if (s == "markdown" || s == "md") return TableFormat::Markdown;
  if (s == "json") return TableFormat::Json;
  throw InputError("unknown table format '" + s + "' (expected csv, markdown or json)");
}

/// Rows for every even p in [p_min, p_max]. Work is split across `threads`
/// workers; row order is always ascending p.
inline std::vector<TableRow> make_table(Field field, int m, int p_min, int p_max, unsigned threads = 1) {
  detail::require_m(m);
  if (p_min < 2 || p_min % 2 != 0 || p_max % 2 != 0)
    throw ParameterError("table: p range must consist of even integers >= 2");
  if (p_min > p_max)
    throw ParameterError("table: empty range (p_min " + std::to_string(p_min) + " > p_max " + std::to_string(p_max) + ")");
  const std::size_t count = static_cast<std::size_t>((p_max - p_min) / 2 + 1);
  std::vector<TableRow> rows(count);
  std::vector<std::string> errors(count);
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < count; i += stride) {
      try {
        const auto rep = yudin_bound(field, m, p_min + 2 * static_cast<int>(i));
        rows[i] = {rep.p, rep.lp_bound, rep.yudin_raw, rep.yudin_bound, rep.delta()};
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (!e.empty()) throw NumericalError(e);
  return rows;
}

inline void write_table(std::ostream& os, Field field, int m, const std::vector<TableRow>& rows, TableFormat fmt) {
  switch (fmt) {
  case TableFormat::Csv:
    os << "# " << table_schema << " field=" << field.symbol() << " m=" << m << "\n";
    os << "p,lp_bound,yudin_raw,yudin_bound,delta\n";
    for (const auto& r : rows)
      os << r.p << ',' << r.lp_bound.str() << ',' << fmt12(r.yudin_raw) << ',' << r.yudin_bound.str() << ','
         << r.delta.str() << '\n';
    break;
  case TableFormat::Markdown:
    os << "| p | lp_bound | yudin_raw | yudin_bound | delta |\n";
    os << "|---:|---:|---:|---:|---:|\n";
    for (const auto& r : rows)
      os << "| " << r.p << " | " << r.lp_bound.str() << " | " << fmt12(r.yudin_raw) << " | " << r.yudin_bound.str()
         << " | " << r.delta.str() << " |\n";
    break;
  case TableFormat::Json: {
    nlohmann::json jr = nlohmann::json::array();
    for (const auto& r : rows)
      jr.push_back({{"p", r.p},
                    {"lp_bound", bigint_to_json(r.lp_bound)},
                    {"yudin_raw", r.yudin_raw},
                    {"yudin_bound", bigint_to_json(r.yudin_bound)},
                    {"delta", bigint_to_json(r.delta)}});
    nlohmann::json doc = {{"schema", table_schema}, {"field", to_string(field)}, {"m", m}, {"rows", std::move(jr)}};
    os << doc.dump(2) << '\n';
    break;
  }
  }
}

// -- asymptotics

inline void write_asymptotic_csv(std::ostream& os, Field field, const std::vector<AsymptoticRow>& rows) {
  os << "# projbound-asym/1 field=" << field.symbol() << "\n";
  os << "m,nu,j_nu1,kappa,log_kappa,log_kappa_asym,log_ratio,log_liminf_lp,log_liminf_yudin,log_gap,log_gap_asym\n";
  for (const auto& r : rows)
    os << r.m << ',' << fmt12(r.nu) << ',' << fmt12(r.bessel_zero) << ',' << fmt12(r.kappa.value) << ','
       << fmt12(r.kappa.log) << ',' << fmt12(r.kappa_asymptotic.log) << ',' << fmt12(r.log_ratio) << ','
       << fmt12(r.liminf_lp.log) << ',' << fmt12(r.liminf_yudin.log) << ',' << fmt12(r.gap.log) << ','
       << fmt12(r.gap_asymptotic.log) << '\n';
}

// -- test function coefficients

inline void write_test_function_csv(std::ostream& os, const YudinTestFunction& tf) {
  os << "# projbound-testfn/1 field=" << tf.field.symbol() << " m=" << tf.m << " l=" << tf.l << " kmax=" << tf.k_max
     << " xi=" << fmt12(tf.xi) << " bound=" << fmt12(bound_from_test_function(tf)) << "\n";
  os << "k,c_h,c_g,c_f\n";
  for (int k = 0; k <= tf.k_max; ++k)
    os << k << ',' << fmt12(tf.coeff_h[k]) << ',' << fmt12(tf.coeff_g[k]) << ',' << fmt12(tf.coeff_f[k]) << '\n';
}

// -- oscillation

inline void write_oscillation_text(std::ostream& os, const OscillationReport& rep) {
  auto opt = [](const std::optional<long long>& v) { return v ? std::to_string(*v) : std::string("-"); };
  os << "quaternionic m=2: p, delta_H, d1, d2, sign law\n";
  for (const auto& r : rep.quaternion)
    os << r.p << ", " << r.delta << ", " << opt(r.first_diff) << ", " << opt(r.second_diff) << ", "
       << (r.sign_law ? (*r.sign_law ? "yes" : "NO") : "-") << '\n';
  os << "sign law sign d2 = (-1)^(p/2+1) holds on the whole range: " << (rep.sign_law_holds ? "yes" : "no") << "\n\n";
  os << "complex m=2: p, delta_C, d1, d1 nondecreasing\n";
  for (const auto& r : rep.complex)
    os << r.p << ", " << r.delta << ", " << opt(r.first_diff) << ", "
       << (r.first_diff_nondecreasing ? (*r.first_diff_nondecreasing ? "yes" : "NO") : "-") << '\n';
  os << "delta_C nondecreasing: " << (rep.delta_C_nondecreasing ? "yes" : "no") << "\n";
  os << "d1_C nondecreasing for p >= 18: " << (rep.first_diff_C_nondecreasing_from_18 ? "yes" : "no") << "\n";
}

// -- verification

inline nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json dups = nlohmann::json::array();
  for (const auto& [i, j] : r.duplicate_pairs) dups.push_back({i, j});
  return {{"field", to_string(r.field)},
          {"m", r.m},
          {"p", r.p},
          {"n", r.n},
          {"equal_weights", r.equal_weights},
          {"moments", r.moments},
          {"max_abs_moment", r.max_abs_moment},
          {"min_moment", r.min_moment},
          {"tolerance", r.tolerance},
          {"effective_tolerance", r.effective_tolerance},
          {"pass", r.pass},
          {"nonnegative", r.nonnegative},
          {"lp_bound", bigint_to_json(r.lp_bound)},
          {"yudin_raw", r.yudin_raw},
          {"yudin_bound", bigint_to_json(r.yudin_bound)},
          {"tight_lp", r.tight_lp},
          {"tight_yudin", r.tight_yudin},
          {"duplicate_pairs", dups}};
}

inline void write_verification_text(std::ostream& os, const VerificationReport& r, bool verbose = false) {
  os << "field " << r.field.symbol() << ", m=" << r.m << ", p=" << r.p << ", n=" << r.n
     << (r.equal_weights ? " (equal weights: projective design test)" : "") << "\n";
  for (std::size_t k = 0; k < r.moments.size(); ++k) os << "M_" << (k + 1) << " = " << fmt12(r.moments[k]) << "\n";
  os << "max |M_k|    " << fmt12(r.max_abs_moment) << " (threshold " << fmt12(r.effective_tolerance) << ")\n";
  os << "result       " << (r.pass ? "PASS" : "FAIL") << "\n";
  if (!r.nonnegative) os << "warning: a moment is negative beyond tolerance; check the input\n";
  os << "lp_bound     " << r.lp_bound.str() << (r.tight_lp ? "  (tight)" : "") << "\n";
  os << "yudin_bound  " << r.yudin_bound.str() << (r.tight_yudin ? "  (tight)" : "") << "\n";
  for (const auto& [i, j] : r.duplicate_pairs)
    os << "warning: nodes " << i << " and " << j << " are projectively equal\n";
  if (verbose)
    os << "note: M_k = sum_ij rho_i rho_j P_k(x_i x_j); vanishing for 1 <= k <= p/2 is read as the condition "
          "sum_i phi(x_i) rho_i = 0 on the degree-2k harmonics, with the weights rho_i as coefficients.\n";
}

} // namespace projbound
