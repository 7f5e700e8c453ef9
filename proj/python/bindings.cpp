#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "latspec/canonical.hpp"
#include "latspec/error.hpp"
#include "latspec/espectrum.hpp"
#include "latspec/inversion.hpp"
#include "latspec/lattice.hpp"
#include "latspec/metrics.hpp"
#include "latspec/percolation.hpp"
#include "latspec/pipeline.hpp"

namespace py = pybind11;
using namespace latspec;

namespace {

LatticeSpec make_spec(std::vector<std::uint64_t> dims, std::vector<double> probs) {
    return LatticeSpec::make(std::move(dims), std::move(probs));
}

SpectralCurve make_curve(std::vector<double> grid, std::vector<double> cdf, std::vector<double> density,
                         double epsilon, std::string label) {
    return SpectralCurve{std::move(grid), std::move(cdf), std::move(density), epsilon, std::move(label)};
}

} // namespace

PYBIND11_MODULE(_latspec, m) {
    m.doc() = "Deterministic-equivalent spectra of percolated lattice graphs";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<SizeLimitError>(m, "SizeLimitError", base.ptr());
    py::register_exception<SolverError>(m, "SolverError", base.ptr());
    py::register_exception<OracleError>(m, "OracleError", base.ptr());

    py::class_<LatticeSpec>(m, "LatticeSpec")
        .def(py::init(&make_spec), py::arg("dims"), py::arg("probs"))
        .def_readonly("dims", &LatticeSpec::dims)
        .def_readonly("probs", &LatticeSpec::probs)
        .def("__repr__", [](const LatticeSpec& s) {
            return "LatticeSpec(dims=" + py::repr(py::cast(s.dims)).cast<std::string>() +
                   ", probs=" + py::repr(py::cast(s.probs)).cast<std::string>() + ")";
        });

    m.def("node_count", &node_count, py::arg("spec"));
    m.def("decode_index", [](const LatticeSpec& s, std::uint64_t x) { return decode_index(s, x).digits; },
          py::arg("spec"), py::arg("x"));
    m.def("encode_index",
          [](const LatticeSpec& s, std::vector<std::uint64_t> digits) {
              return encode_index(s, MixedRadixIndex{std::move(digits)});
          },
          py::arg("spec"), py::arg("digits"));
    m.def("are_adjacent", &are_adjacent, py::arg("spec"), py::arg("i"), py::arg("j"));
    m.def("lattice_adjacency", &lattice_adjacency, py::arg("spec"));
    m.def("expected_degree", &expected_degree, py::arg("spec"));
    m.def("expected_spectrum",
          [](const LatticeSpec& s) {
              std::vector<std::pair<double, std::uint64_t>> out;
              for (const auto& e : expected_spectrum(s).entries) out.emplace_back(e.value, e.multiplicity);
              return out;
          },
          py::arg("spec"), "list of (eigenvalue, multiplicity) of E[W], ascending");

    py::class_<PercolationSample>(m, "PercolationSample")
        .def_readonly("spec", &PercolationSample::spec)
        .def_readonly("seed", &PercolationSample::seed)
        .def_property_readonly("edges",
                               [](const PercolationSample& s) {
                                   std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
                                   out.reserve(s.edges.size());
                                   for (const auto& e : s.edges) out.emplace_back(e.i, e.j);
                                   return out;
                               })
        .def("degrees", &PercolationSample::degrees);
    m.def("sample", &sample, py::arg("spec"), py::arg("seed"));
    m.def("scaled_adjacency", &scaled_adjacency, py::arg("sample"));
    m.def("row_normalized_adjacency", &row_normalized_adjacency, py::arg("sample"));

    py::class_<GirkoConditionReport>(m, "GirkoConditionReport")
        .def_readonly("mean_row_sum", &GirkoConditionReport::mean_row_sum)
        .def_readonly("variance_row_sum", &GirkoConditionReport::variance_row_sum)
        .def_readonly("max_entry_bound", &GirkoConditionReport::max_entry_bound)
        .def_readonly("min_scaled_variance", &GirkoConditionReport::min_scaled_variance);
    m.def("girko_conditions", &girko_conditions, py::arg("spec"));

    py::class_<EmpiricalSpectrum>(m, "EmpiricalSpectrum")
        .def(py::init([](std::vector<double> ev) {
                 std::sort(ev.begin(), ev.end());
                 return EmpiricalSpectrum{std::move(ev), 1};
             }),
             py::arg("eigenvalues"))
        .def_readonly("eigenvalues", &EmpiricalSpectrum::eigenvalues)
        .def_readonly("source_count", &EmpiricalSpectrum::source_count);
    m.def("eigenvalues", &eigenvalues, py::arg("matrix"));
    m.def("scaled_spectrum", &scaled_spectrum, py::arg("sample"), py::arg("scale") = 1.0);
    m.def("row_normalized_spectrum", &row_normalized_spectrum, py::arg("sample"), py::arg("scale") = 1.0);
    m.def("esd_cdf", &esd_cdf, py::arg("spectrum"), py::arg("x"));
    m.def("empirical_stieltjes", &empirical_stieltjes, py::arg("spectrum"), py::arg("z"));
    m.def("smoothed_density", &smoothed_density, py::arg("spectrum"), py::arg("grid"), py::arg("epsilon"));
    m.def("average_esd",
          [](const std::vector<EmpiricalSpectrum>& spectra, const std::vector<double>& grid) {
              return average_esd(spectra, grid);
          },
          py::arg("spectra"), py::arg("grid"));

    py::class_<SpectralCurve>(m, "SpectralCurve")
        .def(py::init(&make_curve), py::arg("grid"), py::arg("cdf") = std::vector<double>{},
             py::arg("density") = std::vector<double>{}, py::arg("epsilon") = 0.0, py::arg("label") = "")
        .def_readonly("grid", &SpectralCurve::grid)
        .def_readonly("cdf", &SpectralCurve::cdf)
        .def_readonly("density", &SpectralCurve::density)
        .def_readonly("epsilon", &SpectralCurve::epsilon)
        .def_readonly("label", &SpectralCurve::label);

    py::class_<Branch>(m, "Branch")
        .def_readonly("index", &Branch::index)
        .def_readonly("value", &Branch::value)
        .def_readonly("multiplicity", &Branch::multiplicity);
    py::class_<CanonicalProblem>(m, "CanonicalProblem")
        .def_readonly("spec", &CanonicalProblem::spec)
        .def_readonly("gamma", &CanonicalProblem::gamma)
        .def_readonly("variance_sum", &CanonicalProblem::variance_sum)
        .def_readonly("branches", &CanonicalProblem::branches)
        .def_readonly("node_count", &CanonicalProblem::node_count);
    py::class_<CanonicalSolution>(m, "CanonicalSolution")
        .def_readonly("z", &CanonicalSolution::z)
        .def_readonly("alpha_principal", &CanonicalSolution::alpha_principal)
        .def_readonly("residual", &CanonicalSolution::residual)
        .def_readonly("iterations", &CanonicalSolution::iterations);

    m.def("build_problem", &build_problem, py::arg("spec"));
    m.def("solve_alpha",
          [](const CanonicalProblem& p, std::complex<double> z, std::optional<std::complex<double>> initial) {
              SolverOptions opt;
              opt.initial = initial;
              return solve_alpha(p, z, opt);
          },
          py::arg("problem"), py::arg("z"), py::arg("initial") = py::none());
    m.def("recover_all_alphas",
          [](const CanonicalProblem& p, const CanonicalSolution& s) { return recover_all_alphas(p, s).coefficients; },
          py::arg("problem"), py::arg("solution"));
    m.def("deterministic_stieltjes", &deterministic_stieltjes, py::arg("problem"), py::arg("z"));
    m.def("matrix_k1_oracle",
          [](const LatticeSpec& s, std::complex<double> z, double tol) {
              const auto r = matrix_k1_oracle(s, z, tol);
              return py::make_tuple(r.stieltjes, r.form_residual, r.iterations);
          },
          py::arg("spec"), py::arg("z"), py::arg("tol") = 1e-13,
          "returns (stieltjes, solution_form_residual, iterations)");

    m.def("auto_grid", &auto_grid, py::arg("problem"), py::arg("points") = 2000, py::arg("margin") = 0.1);
    m.def("default_epsilon", &default_epsilon, py::arg("grid"));
    m.def("density_curve", &density_curve, py::arg("stieltjes"), py::arg("grid"), py::arg("epsilon"));
    m.def("cdf_curve", &cdf_curve, py::arg("stieltjes"), py::arg("grid"), py::arg("epsilon"));
    m.def("deterministic_curve", &deterministic_curve, py::arg("problem"), py::arg("grid"), py::arg("epsilon"));

    py::class_<DistanceReport>(m, "DistanceReport")
        .def_readonly("kolmogorov", &DistanceReport::kolmogorov)
        .def_readonly("levy", &DistanceReport::levy)
        .def_readonly("grid_points", &DistanceReport::grid_points);
    m.def("kolmogorov_distance", &kolmogorov_distance, py::arg("a"), py::arg("b"));
    m.def("levy_distance", &levy_distance, py::arg("a"), py::arg("b"));
    m.def("compare_curves", &compare_curves, py::arg("a"), py::arg("b"));
}
