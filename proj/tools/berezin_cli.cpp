// Command-line front end: closed-form evaluation (eval), named verification
// suites with JSON reports (verify), and numeric-vs-asymptotic comparison
// tables (table).  Output is deterministic: no timestamps, stable key order,
// fixed numeric formatting.
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bsphere/berezin.hpp"
#include "bsphere/coherent_family.hpp"
#include "bsphere/io.hpp"
#include "bsphere/specfun.hpp"
#include "bsphere/types.hpp"
#include "bsphere/verify.hpp"
#include "bsphere/version.hpp"

namespace {

using bsphere::cplx;
using bsphere::CVec;
using bsphere::MultiIndex;
using bsphere::Params;

struct Args {
  std::string command;
  std::string target;
  std::string suite;
  int n = 2;
  double p = 0.0;
  double hbar = 1.0;
  std::string hbar_grid;
  std::string z;
  std::string w;
  std::string k;
  std::string output;
  std::string format = "csv";
  std::uint64_t seed = 42;
  int nodes = 0;
};

std::string config_echo(const Args& a) {
  std::ostringstream os;
  os << "command=" << a.command;
  if (!a.target.empty()) os << " target=" << a.target;
  if (!a.suite.empty()) os << " suite=" << a.suite;
  os << " n=" << a.n << " p=" << bsphere::io::num(a.p);
  if (!a.hbar_grid.empty()) os << " hbar-grid=" << a.hbar_grid;
  else os << " hbar=" << bsphere::io::num(a.hbar);
  if (!a.z.empty()) os << " z=" << a.z;
  if (!a.w.empty()) os << " w=" << a.w;
  if (!a.k.empty()) os << " k=" << a.k;
  os << " seed=" << a.seed;
  if (a.nodes > 0) os << " nodes=" << a.nodes;
  return os.str();
}

CVec vec_arg(const std::string& text, int n, const char* flag) {
  if (text.empty())
    throw std::invalid_argument(std::string("--") + flag + " is required");
  CVec v = bsphere::io::parse_cvec(text);
  if (static_cast<int>(v.size()) != n)
    throw std::invalid_argument(std::string("--") + flag + " must have " +
                                std::to_string(n) + " components");
  return v;
}

MultiIndex k_arg(const std::string& text, int n) {
  if (text.empty()) throw std::invalid_argument("--k is required");
  MultiIndex m;
  m.k = bsphere::io::parse_int_list(text);
  m.validate(n);
  return m;
}

/// Default generic anchor for tables when --z is omitted.
CVec default_z(int n) {
  static const CVec pattern = {cplx(0.55, 0.2), cplx(-0.35, 0.45),
                               cplx(0.25, -0.15)};
  CVec z(n);
  for (int s = 0; s < n; ++s) z[s] = pattern[s % pattern.size()];
  return z;
}

int run_eval(const Args& a) {
  Params prm;
  prm.n = a.n;
  prm.p = a.p;
  prm.hbar = a.hbar;

  std::string module, formula;
  cplx value;
  if (a.target == "kernel_T") {
    const CVec z = vec_arg(a.z, a.n, "z");
    const CVec w = vec_arg(a.w, a.n, "w");
    module = "coherent_family";
    formula =
        "T(z,w) = Gamma(n+p) sum_l (z.w/hbar^2)^l / (l! Gamma(l+n+p)); "
        "z.w conjugates the second argument";
    value = bsphere::coherent_family::kernel_T(prm, z, w);
  } else if (a.target == "measure_density") {
    const CVec z = vec_arg(a.z, a.n, "z");
    module = "coherent_family";
    formula =
        "m(z) = (1/Gamma(n+p)) (2/(pi hbar^2)^n) (|z|/hbar)^p "
        "K_p(2|z|/hbar)";
    value = bsphere::coherent_family::measure_density(prm, z);
  } else if (a.target == "berezin_monomial_p0") {
    const CVec z = vec_arg(a.z, a.n, "z");
    const MultiIndex k = k_arg(a.k, a.n);
    module = "berezin";
    formula =
        "B(x^k)(z) = (z/|z|)^k I_{n+|k|-1}(2|z|/hbar) / I_{n-1}(2|z|/hbar)";
    value = bsphere::berezin::berezin_monomial_p0(prm, k, z);
  } else if (a.target == "covariant_symbol_monomial") {
    const CVec z = vec_arg(a.z, a.n, "z");
    const MultiIndex k = k_arg(a.k, a.n);
    module = "berezin";
    formula = "B(x^k)(z) = <x^k K(.,z), K(.,z)> / <K(.,z), K(.,z)>";
    value = bsphere::berezin::covariant_symbol_monomial(prm, k, z);
  } else if (a.target == "bessel_i") {
    const CVec z = vec_arg(a.z, 1, "z");
    module = "specfun";
    formula = "I_nu(w), nu = --p, w = --z (one component)";
    value = bsphere::specfun::bessel_i(a.p, z[0]);
  } else {
    throw std::invalid_argument(
        "unknown eval target '" + a.target +
        "' (kernel_T, measure_density, berezin_monomial_p0, "
        "covariant_symbol_monomial, bessel_i)");
  }

  std::cout << "module: " << module << "\n";
  std::cout << "formula: " << formula << "\n";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.16g", value.real());
  std::string printed = buf;
  if (value.imag() != 0.0) {
    std::snprintf(buf, sizeof(buf), "%+.16g", value.imag());
    printed += std::string(buf) + "i";
  }
  std::cout << "value: " << printed << "\n";
  return 0;
}

int run_verify(const Args& a, const CLI::App& app) {
  if (!bsphere::verify::is_suite(a.suite)) {
    std::ostringstream os;
    for (const auto& s : bsphere::verify::suite_names()) os << " " << s;
    throw std::invalid_argument("unknown suite '" + a.suite +
                                "'; available:" + os.str());
  }
  bsphere::verify::VerifyOptions opt;
  if (app.count("--n")) opt.n = a.n;
  if (app.count("--p")) opt.p = a.p;
  if (app.count("--hbar")) opt.hbar = a.hbar;
  if (!a.hbar_grid.empty())
    opt.hbar_grid = bsphere::io::parse_double_list(a.hbar_grid);
  opt.seed = a.seed;
  if (a.nodes > 0) opt.nodes = a.nodes;

  const auto results = bsphere::verify::run_suite(a.suite, opt);
  for (const auto& r : results) {
    std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.suite << " / "
              << r.name << ": observed " << bsphere::io::num(r.observed)
              << " " << r.comparison;
    if (r.comparison == "<=" || r.comparison == ">=")
      std::cout << " " << bsphere::io::num(r.threshold);
    if (!r.detail.empty()) std::cout << "  (" << r.detail << ")";
    std::cout << "\n";
  }
  const bool ok = bsphere::verify::all_passed(results);
  std::cout << (ok ? "PASS" : "FAIL") << ": " << results.size()
            << " checks in suite '" << a.suite << "'\n";
  if (!a.output.empty()) {
    bsphere::io::write_file(
        a.output, bsphere::io::report_json(a.suite, results, config_echo(a)));
    std::cout << "report written to " << a.output << "\n";
  }
  return ok ? 0 : 1;
}

int run_table(const Args& a) {
  const std::vector<double> grid =
      a.hbar_grid.empty() ? std::vector<double>{0.4, 0.283, 0.2, 0.141, 0.1}
                          : bsphere::io::parse_double_list(a.hbar_grid);
  const CVec z = a.z.empty() ? default_z(a.n) : vec_arg(a.z, a.n, "z");

  bsphere::io::Table t;
  t.columns = {"hbar", "numeric", "asymptotic", "abs_err", "rel_err"};
  for (double h : grid) {
    Params prm;
    prm.n = a.n;
    prm.hbar = h;
    cplx numeric, asym;
    if (a.target == "corollary-p0") {
      prm.p = 0.0;
      const MultiIndex k = k_arg(a.k, a.n);
      numeric = bsphere::berezin::berezin_monomial_p0(prm, k, z);
      asym = bsphere::berezin::berezin_monomial_p0_asymptotic(prm, k, z, 1);
    } else if (a.target == "norm-asymptotic") {
      prm.p = a.p;
      numeric = bsphere::coherent_family::kernel_T(prm, z, z);
      asym = bsphere::coherent_family::inner_product_asymptotic(prm, z, z, 1);
    } else {
      throw std::invalid_argument("unknown table target '" + a.target +
                                  "' (corollary-p0, norm-asymptotic)");
    }
    const double abs_err = std::abs(numeric - asym);
    const double rel_err = abs_err / std::abs(numeric);
    t.rows.push_back({bsphere::io::num(h), bsphere::io::num(numeric),
                      bsphere::io::num(asym), bsphere::io::num(abs_err),
                      bsphere::io::num(rel_err)});
  }

  const std::string body = a.format == "json"
                               ? bsphere::io::table_json(t, config_echo(a))
                               : bsphere::io::csv_render(t, config_echo(a));
  if (a.output.empty()) {
    std::cout << body;
  } else {
    bsphere::io::write_file(a.output, body);
    std::cout << "table written to " << a.output << " (" << t.rows.size()
              << " rows)\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Args a;
  CLI::App app{
      "berezin_cli: covariant-symbol calculus on the complex unit sphere "
      "(build " +
      std::string(bsphere::kGitDescribe) + ")"};
  app.add_option("--command", a.command, "eval | verify | table")
      ->required();
  app.add_option("--target", a.target,
                 "eval: kernel_T, measure_density, berezin_monomial_p0, "
                 "covariant_symbol_monomial, bessel_i; "
                 "table: corollary-p0, norm-asymptotic");
  app.add_option("--suite", a.suite,
                 "verification suite (see --command verify with a bad name "
                 "for the list); 'all' runs everything");
  app.add_option("--n", a.n, "complex dimension (default 2)");
  app.add_option("--p", a.p, "family order parameter (default 0)");
  app.add_option("--hbar", a.hbar, "semiclassical parameter (default 1)");
  app.add_option("--hbar-grid", a.hbar_grid,
                 "comma-separated hbar values for tables/suites");
  app.add_option("--z", a.z, "comma-separated complex components, e.g. "
                             "1,0 or 0.5-0.2i,0.3i");
  app.add_option("--w", a.w, "second point, same grammar as --z");
  app.add_option("--k", a.k, "multi-index, comma-separated integers");
  app.add_option("--output", a.output, "write report/table to this path");
  app.add_option("--format", a.format, "table format: csv (default) | json");
  app.add_option("--seed", a.seed, "RNG seed for sampled checks (default 42)");
  app.add_option("--nodes", a.nodes, "quadrature nodes per angle override");

  CLI11_PARSE(app, argc, argv);

  try {
    if (a.command == "eval") return run_eval(a);
    if (a.command == "verify") return run_verify(a, app);
    if (a.command == "table") return run_table(a);
    std::cerr << "error: unknown command '" << a.command
              << "' (eval | verify | table)\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
