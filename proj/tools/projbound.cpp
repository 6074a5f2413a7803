// projbound: lower bounds for projective cubature formulas and minimal
// isometric embeddings l_2^m -> l_p^n over R, C and H.
//
// Exit codes: 0 success / verification passed, 1 verification failed,
// 2 usage or input error, 3 output I/O error, 4 numerical failure.

#include <projbound/bounds.hpp>
#include <projbound/cubature.hpp>
#include <projbound/report_io.hpp>
#include <projbound/test_function.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace projbound;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumeric = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

unsigned thread_cap() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PROJBOUND_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(v));
    } catch (const std::exception&) {
      throw InputError(std::string("PROJBOUND_THREADS: not an integer: ") + env);
    }
  }
  return n;
}

/// Writes to stdout for "-" or an empty path, otherwise to a file that must open.
class Output {
public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw IoError("cannot open '" + path + "' for writing");
    path_ = path;
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void finish() {
    stream().flush();
    if (!stream()) throw IoError("write failed" + (path_.empty() ? std::string() : " for '" + path_ + "'"));
  }

private:
  std::unique_ptr<std::ofstream> file_;
  std::string path_;
};

Field field_option(const std::string& s) { return Field::parse(s); }

int run_bound(const std::string& field_s, int m, int p, const std::string& format, bool verbose) {
  const Field field = field_option(field_s);
  const auto rep = yudin_bound(field, m, p);
  if (format == "json") {
    std::cout << to_json(rep).dump(2) << '\n';
  } else if (format == "text") {
    write_bound_text(std::cout, rep);
    if (verbose) {
      const auto lp = lp_bound_detail(field, m, p / 2);
      if (!lp.exact) std::cout << "note: lp_bound is the ceiling of a non-integer rational\n";
      if (field == Field::quaternion() && m == 2)
        std::cout << "note: alternate printed form (1/3)C([p/2]+2,2)C([(p+2)/2]+3,2) = "
                  << lp_bound_h2_alternate_form(p).str() << " (not used; Lambda_H(2,p/2) is)\n";
    }
  } else {
    throw InputError("unknown format '" + format + "' (expected text or json)");
  }
  return 0;
}

int run_table(const std::string& field_s, int m, int p_min, int p_max, const std::string& out,
              const std::string& format) {
  const Field field = field_option(field_s);
  const auto fmt = parse_table_format(format);
  const auto rows = make_table(field, m, p_min, p_max, thread_cap());
  Output o(out);
  write_table(o.stream(), field, m, rows, fmt);
  o.finish();
  return 0;
}

int run_verify(const std::string& file, double tol, const std::string& format, bool verbose) {
  const auto loaded = load_point_set(file);
  const auto rep = verify(loaded.set, loaded.p, tol);
  if (format == "json")
    std::cout << to_json(rep).dump(2) << '\n';
  else if (format == "text")
    write_verification_text(std::cout, rep, verbose);
  else
    throw InputError("unknown format '" + format + "' (expected text or json)");
  return rep.pass ? 0 : kExitFail;
}

int run_asym(const std::string& field_s, int m_min, int m_max, const std::string& out) {
  const Field field = field_option(field_s);
  if (m_min < 2 || m_max < m_min) throw ParameterError("asym: need 2 <= m-min <= m-max");
  std::vector<int> ms(static_cast<std::size_t>(m_max - m_min + 1));
  std::iota(ms.begin(), ms.end(), m_min);
  const auto rows = asymptotic_report(field, ms);
  Output o(out);
  write_asymptotic_csv(o.stream(), field, rows);
  o.finish();
  return 0;
}

int run_testfn(const std::string& field_s, int m, int l, int kmax, const std::string& out) {
  const auto tf = build_test_function(field_option(field_s), m, l, kmax);
  if (tf.tail_warning)
    std::cerr << "warning: last retained term " << fmt12(tf.last_term) << " exceeds 1e-12 f(1); raise --kmax\n";
  Output o(out);
  write_test_function_csv(o.stream(), tf);
  o.finish();
  return 0;
}

int run_osc(int p_max) {
  write_oscillation_text(std::cout, oscillation_report(p_max));
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lower bounds for projective cubature formulas over R, C and H"};
  app.require_subcommand(1);

  std::string field = "R", out = "-";
  std::string bound_format = "text", table_format = "csv", verify_format = "text";
  int m = 2, p = 2, p_min = 2, p_max = 0, m_min = 2, m_max = 0, l = 1, kmax = 200;
  double tol = 1e-10;
  bool verbose = false;
  std::string file;

  auto* bound = app.add_subcommand("bound", "Both lower bounds for one (field, m, p)");
  bound->add_option("--field", field, "R, C or H")->required();
  bound->add_option("--m", m, "dimension m >= 2")->required();
  bound->add_option("--p", p, "even index p >= 2")->required();
  bound->add_option("--format", bound_format, "text or json")->default_val("text");
  bound->add_flag("--verbose", verbose, "print notes on alternate forms");

  auto* table = app.add_subcommand("table", "Bounds for every even p in a range");
  table->add_option("--field", field, "R, C or H")->required();
  table->add_option("--m", m, "dimension m >= 2")->default_val(2);
  table->add_option("--p-min", p_min, "smallest even p")->default_val(2);
  table->add_option("--p-max", p_max, "largest even p")->required();
  table->add_option("--out", out, "output path, - for stdout")->default_val("-");
  table->add_option("--format", table_format,
                    "csv (columns p,lp_bound,yudin_raw,yudin_bound,delta after a '# projbound-table/1' line), "
                    "markdown or json")
      ->default_val("csv");

  auto* ver = app.add_subcommand("verify", "Moment test of a point-set JSON file");
  ver->add_option("file", file, "point set JSON")->required();
  ver->add_option("--tol", tol, "per-node tolerance on |M_k|")->default_val(1e-10);
  ver->add_option("--format", verify_format, "text or json")->default_val("text");
  ver->add_flag("--verbose", verbose, "explain the moment criterion");

  auto* asym = app.add_subcommand("asym", "Asymptotic constants per m (CSV)");
  asym->add_option("--field", field, "R, C or H")->required();
  asym->add_option("--m-min", m_min, "first m")->default_val(2);
  asym->add_option("--m-max", m_max, "last m")->required();
  asym->add_option("--out", out,
                   "output path; columns m,nu,j_nu1,kappa,log_kappa,log_kappa_asym,log_ratio,log_liminf_lp,"
                   "log_liminf_yudin,log_gap,log_gap_asym (natural logs)")
      ->default_val("-");

  auto* testfn = app.add_subcommand("testfn", "Jacobi coefficients of the test function f_l (CSV)");
  testfn->add_option("--field", field, "R, C or H")->required();
  testfn->add_option("--m", m, "dimension m >= 2")->required();
  testfn->add_option("--l", l, "degree l >= 1 (p = 2l)")->required();
  testfn->add_option("--kmax", kmax, "truncation degree")->default_val(200);
  testfn->add_option("--out", out, "output path; columns k,c_h,c_g,c_f")->default_val("-");

  auto* osc = app.add_subcommand("osc", "Differences of delta_H and delta_C over p (report only)");
  osc->add_option("--p-max", p_max, "largest even p >= 8")->default_val(50);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*bound) return run_bound(field, m, p, bound_format, verbose);
    if (*table) return run_table(field, m, p_min, p_max, out, table_format);
    if (*ver) return run_verify(file, tol, verify_format, verbose);
    if (*asym) return run_asym(field, m_min, m_max, out);
    if (*testfn) return run_testfn(field, m, l, kmax, out);
    if (*osc) return run_osc(p_max);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitUsage;
}
