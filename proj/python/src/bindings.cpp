#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hyplyap/calabi_yau.hpp"
#include "hyplyap/error.hpp"
#include "hyplyap/experiments.hpp"
#include "hyplyap/hodge.hpp"
#include "hyplyap/lyapunov.hpp"
#include "hyplyap/monodromy.hpp"
#include "hyplyap/params.hpp"

namespace py = pybind11;
using namespace hyplyap;

namespace {

lyapunov::RunConfig make_config(std::uint64_t digits, std::uint64_t seed, int windows, int workers,
                                const std::string& time, bool two_sided) {
  lyapunov::RunConfig cfg;
  cfg.digits = digits;
  cfg.seed = seed;
  cfg.windows = windows;
  cfg.workers = workers;
  cfg.time = lyapunov::parse_time_normalization(time);
  cfg.two_sided = two_sided;
  return cfg;
}

std::string rows_to_csv(const std::vector<experiments::ResultRow>& rows) {
  std::ostringstream os;
  experiments::write_csv(os, rows);
  return os.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Lyapunov exponents of hypergeometric local systems";

  auto error = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  (void)error;

  py::class_<HGParams>(m, "HGParams")
      .def(py::init(&HGParams::make), py::arg("alpha"), py::arg("beta"))
      .def_readonly("n", &HGParams::n)
      .def_readonly("alpha", &HGParams::alpha)
      .def_readonly("beta", &HGParams::beta)
      .def("translated", &HGParams::translated)
      .def("__repr__", [](const HGParams& p) { return to_string(p); });

  py::class_<monodromy::MonodromySet>(m, "MonodromySet")
      .def_readonly("n", &monodromy::MonodromySet::n)
      .def_readonly("m0", &monodromy::MonodromySet::m0)
      .def_readonly("m1", &monodromy::MonodromySet::m1)
      .def_readonly("minf", &monodromy::MonodromySet::minf);
  m.def("build_monodromy", &monodromy::build, py::arg("params"));
  m.def("relation_residual", &monodromy::relation_residual);
  m.def("eigenvalues", &monodromy::eigenvalues);

  py::class_<hodge::Diagram>(m, "Diagram")
      .def_readonly("n", &hodge::Diagram::n)
      .def_readonly("h", &hodge::Diagram::h)
      .def_readonly("gamma", &hodge::Diagram::gamma)
      .def_readonly("p", &hodge::Diagram::p)
      .def_readonly("q", &hodge::Diagram::q)
      .def_readonly("f_alpha", &hodge::Diagram::f_alpha)
      .def_readonly("f_beta", &hodge::Diagram::f_beta);
  m.def("hodge_diagram", &hodge::analyze, py::arg("params"));
  m.def("parabolic_degrees", [](const hodge::Diagram& d) { return hodge::parabolic_degrees(d).deg_par; });
  m.def("signature_zeros", &hodge::signature_zeros);

  m.def("cy_mu", [](double C, double d) {
    const auto mu = calabi_yau::cy_mu(C, d);
    return std::make_pair(mu.mu1, mu.mu2);
  }, py::arg("C"), py::arg("d"));
  m.def("realize_mu", [](double mu1, double mu2) {
    const auto r = calabi_yau::realize_mu(mu1, mu2);
    return std::make_pair(r.C, r.d);
  }, py::arg("mu1"), py::arg("mu2"));
  m.def("cy_monodromy", &calabi_yau::monodromy_set, py::arg("C"), py::arg("d"));

  py::class_<lyapunov::LyapunovEstimate>(m, "LyapunovEstimate")
      .def_readonly("exponents", &lyapunov::LyapunovEstimate::exponents)
      .def_readonly("standard_errors", &lyapunov::LyapunovEstimate::standard_errors)
      .def_readonly("elapsed_time", &lyapunov::LyapunovEstimate::elapsed_time)
      .def_readonly("digits_used", &lyapunov::LyapunovEstimate::digits_used)
      .def_readonly("sum_positive", &lyapunov::LyapunovEstimate::sum_positive)
      .def_readonly("sum_positive_stderr", &lyapunov::LyapunovEstimate::sum_positive_stderr)
      .def("top_sum", &lyapunov::LyapunovEstimate::top_sum)
      .def("top_sum_stderr", &lyapunov::LyapunovEstimate::top_sum_stderr);

  m.def("lyapunov",
        [](const monodromy::MonodromySet& ms, std::uint64_t digits, std::uint64_t seed, int windows, int workers,
           const std::string& time, bool two_sided) {
          const auto cfg = make_config(digits, seed, windows, workers, time, two_sided);
          py::gil_scoped_release release;
          return lyapunov::estimate(ms, cfg);
        },
        py::arg("monodromy"), py::arg("digits") = 1'000'000, py::arg("seed") = 1, py::arg("windows") = 20,
        py::arg("workers") = 1, py::arg("time") = "flow", py::arg("two_sided") = true);

  m.def("n2_zone", &experiments::n2_zone, py::arg("r"), py::arg("x"));
  m.def("csv_columns", &experiments::csv_columns);
  m.def("cy_table_csv",
        [](std::uint64_t digits, std::uint64_t seed, int windows, int workers) {
          const auto cfg = make_config(digits, seed, windows, workers, "flow", true);
          py::gil_scoped_release release;
          return rows_to_csv(experiments::cy_table(cfg));
        },
        py::arg("digits") = 2'000'000, py::arg("seed") = 1, py::arg("windows") = 20, py::arg("workers") = 1);
  m.def("n2_scan_csv",
        [](const std::vector<double>& rs, const std::vector<double>& xs, std::uint64_t digits, std::uint64_t seed,
           int windows, int workers) {
          const auto cfg = make_config(digits, seed, windows, workers, "flow", true);
          py::gil_scoped_release release;
          return rows_to_csv(experiments::n2_scan(rs, xs, cfg));
        },
        py::arg("rs"), py::arg("xs"), py::arg("digits") = 1'000'000, py::arg("seed") = 1, py::arg("windows") = 20,
        py::arg("workers") = 1);
}
