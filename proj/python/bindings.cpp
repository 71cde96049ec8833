#include "artifact/cli.hpp"
#include "artifact/suite.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using artifact::RunConfig;

namespace {

RunConfig config(long p, int L, int M, int window, bool laurent) {
    RunConfig c;
    c.p = p;
    c.L = L;
    c.M = M;
    c.window = window;
    c.laurent = {laurent};
    c.validate();
    return c;
}

template <class F>
std::string released(F&& f) {
    py::gil_scoped_release nogil;
    return f().dump();
}

}  // namespace

PYBIND11_MODULE(_artifact, m) {
    m.doc() = "Exact chain-level verification of relative cyclic homology and syntomic products";
    py::register_exception<artifact::UsageError>(m, "UsageError", PyExc_ValueError);

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::vector<const char*> argv{"artifact"};
            for (const auto& a : args) argv.push_back(a.c_str());
            std::ostringstream out, err;
            int code;
            {
                py::gil_scoped_release nogil;
                code = artifact::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run a CLI command; returns (exit code, stdout, stderr).");

    m.def(
        "homology",
        [](long p, int L, int M, std::optional<int> r, std::optional<int> n, int window, bool laurent, int n_max) {
            RunConfig c = config(p, L, M, window, laurent);
            c.r = r;
            c.n = n;
            c.n_max = n_max;
            return released([&] { return artifact::homology_report(c); });
        },
        py::arg("p") = 5, py::arg("L") = 2, py::arg("M") = 1, py::arg("r") = py::none(), py::arg("n") = py::none(),
        py::arg("window") = 6, py::arg("laurent") = false, py::arg("n_max") = 3);

    m.def(
        "verify_psi",
        [](long p, int L, int M, int n_max, int window, bool laurent, std::optional<int> r, bool integral) {
            RunConfig c = config(p, L, M, window, laurent);
            c.n_max = n_max;
            c.r = r;
            c.integral = integral;
            return released([&] { return artifact::verify_psi_report(c); });
        },
        py::arg("p") = 5, py::arg("L") = 2, py::arg("M") = 1, py::arg("n_max") = 3, py::arg("window") = 6,
        py::arg("laurent") = false, py::arg("r") = py::none(), py::arg("integral") = false);

    m.def(
        "verify_hkr",
        [](long p, int L, int n_max, int window, bool laurent) {
            RunConfig c = config(p, L, 1, window, laurent);
            c.n_max = n_max;
            return released([&] { return artifact::verify_hkr_report(c); });
        },
        py::arg("p") = 5, py::arg("L") = 2, py::arg("n_max") = 3, py::arg("window") = 3, py::arg("laurent") = false);

    m.def(
        "mult_table",
        [](long p, int L, int M, int r_max, int window, bool laurent, int precision) {
            RunConfig c = config(p, L, M, window, laurent);
            c.r_max = r_max;
            c.precision = precision;
            return released([&] { return artifact::mult_table_report(c); });
        },
        py::arg("p") = 5, py::arg("L") = 2, py::arg("M") = 1, py::arg("r_max") = 2, py::arg("window") = 8,
        py::arg("laurent") = true, py::arg("precision") = 8);

    m.def(
        "suite",
        [](const std::vector<std::string>& keys, unsigned workers) {
            artifact::SuiteConfig c;
            c.only = {keys.begin(), keys.end()};
            c.workers = workers;
            return released([&] { return artifact::to_json(artifact::run_suite(c)); });
        },
        py::arg("keys") = std::vector<std::string>{}, py::arg("workers") = 0);

    m.def("suite_keys", &artifact::suite_keys);
}
