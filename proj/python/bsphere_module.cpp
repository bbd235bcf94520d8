// pybind11 bindings: the library's main operations with plain-Python
// signatures (n, p, hbar as scalars, vectors as lists of complex,
// multi-indices as lists of ints).
#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "bsphere/berezin.hpp"
#include "bsphere/coherent_family.hpp"
#include "bsphere/egorov.hpp"
#include "bsphere/io.hpp"
#include "bsphere/specfun.hpp"
#include "bsphere/sphere_geom.hpp"
#include "bsphere/types.hpp"
#include "bsphere/verify.hpp"
#include "bsphere/version.hpp"

namespace py = pybind11;

using bsphere::cplx;
using bsphere::CVec;
using bsphere::MultiIndex;
using bsphere::Params;
using bsphere::sphere_geom::QuadSpec;
using bsphere::sphere_geom::SpherePoint;

namespace {

Params make_params(int n, double p, double hbar) {
  Params prm;
  prm.n = n;
  prm.p = p;
  prm.hbar = hbar;
  prm.validate();
  return prm;
}

MultiIndex make_multi(const std::vector<int>& k, int n) {
  MultiIndex m;
  m.k = k;
  m.validate(n);
  return m;
}

QuadSpec make_spec(int nodes) {
  QuadSpec spec;
  if (nodes > 0) spec.nodes_per_angle = nodes;
  return spec;
}

py::dict result_dict(const bsphere::verify::CheckResult& r) {
  py::dict d;
  d["suite"] = r.suite;
  d["name"] = r.name;
  d["passed"] = r.passed;
  d["observed"] = r.observed;
  d["threshold"] = r.threshold;
  d["comparison"] = r.comparison;
  d["detail"] = r.detail;
  return d;
}

}  // namespace

PYBIND11_MODULE(_bsphere, m) {
  m.doc() =
      "Covariant-symbol (Berezin) calculus on the complex unit sphere: "
      "coherent families, reproducing kernels, symbol expansions, and "
      "verification suites.";
  m.attr("__version__") = std::string(bsphere::kGitDescribe);

  py::class_<SpherePoint>(m, "SpherePoint",
                          "Point on the unit sphere: complex coordinates .x "
                          "and the underlying real coordinates .y")
      .def_readonly("x", &SpherePoint::x)
      .def_readonly("y", &SpherePoint::y)
      .def_static("from_complex", &SpherePoint::from_complex, py::arg("x"));

  m.def(
      "kernel_T",
      [](int n, double p, double hbar, const CVec& z, const CVec& w) {
        return bsphere::coherent_family::kernel_T(make_params(n, p, hbar), z,
                                                  w);
      },
      py::arg("n"), py::arg("p"), py::arg("hbar"), py::arg("z"), py::arg("w"),
      "Reproducing kernel T_{n,p}(z, w).");

  m.def(
      "coherent_eval",
      [](int n, double p, double hbar, const CVec& x, const CVec& z) {
        return bsphere::coherent_family::k_family_eval(
            make_params(n, p, hbar), SpherePoint::from_complex(x), z);
      },
      py::arg("n"), py::arg("p"), py::arg("hbar"), py::arg("x"), py::arg("z"),
      "Coherent family K_{n,p}(x, z) for |x| = 1.");

  m.def(
      "measure_density",
      [](int n, double p, double hbar, const CVec& z) {
        return bsphere::coherent_family::measure_density(
            make_params(n, p, hbar), z);
      },
      py::arg("n"), py::arg("p"), py::arg("hbar"), py::arg("z"),
      "Ambient measure density at z.");

  m.def(
      "parseval_check",
      [](int n, double p, double hbar, const std::vector<int>& a,
         const std::vector<int>& b) {
        return bsphere::coherent_family::parseval_check(
            make_params(n, p, hbar), make_multi(a, n), make_multi(b, n));
      },
      py::arg("n"), py::arg("p"), py::arg("hbar"), py::arg("a"), py::arg("b"),
      "Relative mismatch of the transform-preserved monomial inner product.");

  m.def(
      "berezin_monomial_p0",
      [](int n, double hbar, const std::vector<int>& k, const CVec& z) {
        return bsphere::berezin::berezin_monomial_p0(
            make_params(n, 0.0, hbar), make_multi(k, n), z);
      },
      py::arg("n"), py::arg("hbar"), py::arg("k"), py::arg("z"),
      "Closed-form covariant symbol of the monomial x^k (p = 0).");

  m.def(
      "covariant_symbol_monomial",
      [](int n, double p, double hbar, const std::vector<int>& k,
         const CVec& z) {
        return bsphere::berezin::covariant_symbol_monomial(
            make_params(n, p, hbar), make_multi(k, n), z);
      },
      py::arg("n"), py::arg("p"), py::arg("hbar"), py::arg("k"), py::arg("z"),
      "Series covariant symbol of the monomial x^k (general p).");

  m.def(
      "first_order_coefficient",
      [](int n, const std::vector<int>& k) {
        return bsphere::berezin::monomial_first_order_coefficient(
            n, make_multi(k, n));
      },
      py::arg("n"), py::arg("k"),
      "First-order expansion coefficient -|k|(|k|+2n-2)/4 of the monomial "
      "covariant symbol.");

  m.def(
      "berezin_numeric",
      [](int n, double p, double hbar,
         const std::function<cplx(const SpherePoint&)>& phi, const CVec& z,
         int nodes) {
        return bsphere::berezin::berezin_numeric(make_params(n, p, hbar), phi,
                                                 z, make_spec(nodes));
      },
      py::arg("n"), py::arg("p"), py::arg("hbar"), py::arg("phi"),
      py::arg("z"), py::arg("nodes") = 0,
      "Quadrature covariant symbol of a Python-callable symbol phi(point).");

  m.def(
      "bessel_i",
      [](double nu, cplx w) { return bsphere::specfun::bessel_i(nu, w); },
      py::arg("nu"), py::arg("w"), "Modified Bessel function I_nu(w).");

  m.def("sphere_area", &bsphere::sphere_geom::sphere_area, py::arg("n"),
        "Surface area of the unit sphere in C^n.");

  m.def(
      "chart_cover",
      [](int n, std::int64_t samples, std::uint64_t seed) {
        const auto rep = bsphere::egorov::chart_cover_check(n, samples, seed);
        py::dict d;
        d["samples"] = rep.samples;
        d["in_chart1"] = rep.in_chart1;
        d["reassigned"] = rep.reassigned;
        d["uncovered"] = rep.uncovered;
        d["worst_radius"] = rep.worst_radius;
        return d;
      },
      py::arg("n"), py::arg("samples") = 10000, py::arg("seed") = 42,
      "Uniform-sampling audit of the chart atlas.");

  m.def("suite_names", [] { return bsphere::verify::suite_names(); },
        "Verification suite keys (including 'all').");

  m.def(
      "run_suite",
      [](const std::string& suite, int n, double p, double hbar,
         const std::vector<double>& hbar_grid, std::uint64_t seed,
         int nodes) {
        bsphere::verify::VerifyOptions opt;
        opt.n = n;
        if (!std::isnan(p)) opt.p = p;
        opt.hbar = hbar;
        opt.hbar_grid = hbar_grid;
        opt.seed = seed;
        opt.nodes = nodes;
        py::list out;
        for (const auto& r : bsphere::verify::run_suite(suite, opt))
          out.append(result_dict(r));
        return out;
      },
      py::arg("suite"), py::arg("n") = 0,
      py::arg("p") = std::numeric_limits<double>::quiet_NaN(),
      py::arg("hbar") = 0.0, py::arg("hbar_grid") = std::vector<double>{},
      py::arg("seed") = 42, py::arg("nodes") = 0,
      "Run one verification suite; returns a list of check dicts.");

  m.def("build_id", &bsphere::io::build_id,
        "Build identifier embedded at configure time.");
}
