#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qgls/pipeline_io.hpp"

namespace py = pybind11;
using namespace qgls;

namespace {

std::vector<Index> to_index_list(const std::vector<long>& modes) {
    return std::vector<Index>(modes.begin(), modes.end());
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Gaussian and truncated-Fock simulation of quantum light in "
              "lossy and amplifying multiport devices";

    py::register_exception<Error>(m, "Error");

    m.def("global_tolerance", &global_tolerance);
    m.def("hermitian_sqrt", &hermitian_sqrt, py::arg("m"), py::arg("tol") = global_tolerance());
    m.def("regularized_inverse", &regularized_inverse, py::arg("m"),
          py::arg("tol") = global_tolerance());
    m.def("complex_to_quadrature", &complex_to_quadrature, py::arg("m"));

    py::class_<DeviceSpec>(m, "DeviceSpec")
        .def(py::init([](Matrix t, Matrix a, int sigma) {
                 return DeviceSpec{std::move(t), std::move(a), sigma};
             }),
             py::arg("transmission"), py::arg("noise"), py::arg("sigma"))
        .def_readonly("transmission", &DeviceSpec::transmission)
        .def_readonly("noise", &DeviceSpec::noise)
        .def_readonly("sigma", &DeviceSpec::sigma)
        .def_property_readonly("modes", &DeviceSpec::modes);

    py::class_<ValidationReport>(m, "ValidationReport")
        .def_readonly("constraint_residual", &ValidationReport::constraint_residual)
        .def_readonly("singular_min", &ValidationReport::singular_min)
        .def_readonly("singular_max", &ValidationReport::singular_max)
        .def_readonly("sigma_consistent", &ValidationReport::sigma_consistent)
        .def_readonly("passed", &ValidationReport::passed)
        .def_readonly("tolerance", &ValidationReport::tolerance);

    py::class_<Dilation>(m, "Dilation")
        .def_readonly("lambda_", &Dilation::lambda)
        .def_readonly("metric", &Dilation::metric)
        .def_readonly("sigma", &Dilation::sigma);

    m.def("validate_device", &validate_device, py::arg("spec"),
          py::arg("tol") = global_tolerance());
    m.def("loss_device", &loss_device, py::arg("transmission"),
          py::arg("tol") = global_tolerance());
    m.def("gain_device", &gain_device, py::arg("transmission"),
          py::arg("tol") = global_tolerance());
    m.def("dilation", &dilation, py::arg("spec"), py::arg("tol") = global_tolerance());

    py::class_<GaussianState>(m, "GaussianState")
        .def(py::init<Vector, RealMatrix>(), py::arg("mean"), py::arg("covariance"))
        .def_property_readonly("modes", &GaussianState::modes)
        .def_property_readonly("mean", &GaussianState::mean)
        .def_property_readonly("covariance", &GaussianState::covariance);

    m.def("coherent_state", py::overload_cast<const Vector&>(&coherent_state), py::arg("alpha"));
    m.def("coherent_state", py::overload_cast<Complex>(&coherent_state), py::arg("alpha"));
    m.def("displaced_thermal_state",
          py::overload_cast<Complex, double>(&displaced_thermal_state), py::arg("alpha"),
          py::arg("nbar"));
    m.def("displaced_thermal_state",
          py::overload_cast<const Vector&, const RealVector&>(&displaced_thermal_state),
          py::arg("alpha"), py::arg("nbar"));
    m.def(
        "apply_device",
        [](const GaussianState& state, const DeviceSpec& spec, const std::vector<long>& modes,
           double tol) { return apply_device(state, spec, to_index_list(modes), tol); },
        py::arg("state"), py::arg("spec"), py::arg("modes"),
        py::arg("tol") = global_tolerance());
    m.def("purity", &purity, py::arg("state"));
    m.def("mean_photon", &mean_photon, py::arg("state"), py::arg("mode") = 0);
    m.def("symplectic_eigenvalues", &symplectic_eigenvalues, py::arg("covariance"));
    m.def("wigner_value", &wigner_value, py::arg("state"), py::arg("mode"), py::arg("point"));

    py::class_<Window>(m, "Window")
        .def(py::init([](double x_min, double x_max, Index nx, double p_min, double p_max,
                         Index np) {
                 return Window{x_min, x_max, nx, p_min, p_max, np};
             }),
             py::arg("x_min"), py::arg("x_max"), py::arg("nx"), py::arg("p_min"),
             py::arg("p_max"), py::arg("np"));

    py::class_<WignerGrid>(m, "WignerGrid")
        .def_readonly("mode", &WignerGrid::mode)
        .def_readonly("values", &WignerGrid::values)
        .def_property_readonly("nx", [](const WignerGrid& g) { return g.window.nx; })
        .def_property_readonly("np", [](const WignerGrid& g) { return g.window.np; })
        .def("x_at", &WignerGrid::x_at)
        .def("p_at", &WignerGrid::p_at)
        .def("at", &WignerGrid::at)
        .def("riemann_sum", &WignerGrid::riemann_sum);

    m.def("wigner", &wigner, py::arg("state"), py::arg("mode"), py::arg("window"));

    py::class_<InputSpec>(m, "InputSpec").def("to_state", &InputSpec::to_state);
    py::class_<ElementSpec>(m, "ElementSpec")
        .def("to_device", &ElementSpec::to_device, py::arg("tol") = global_tolerance())
        .def("describe", &ElementSpec::describe);
    py::class_<PipelineSpec>(m, "PipelineSpec")
        .def_readonly("modes", &PipelineSpec::modes)
        .def_readonly("omega", &PipelineSpec::omega)
        .def_readonly("input", &PipelineSpec::input)
        .def_readonly("elements", &PipelineSpec::elements);

    m.def("run_pipeline", &run_pipeline, py::arg("pipeline"), py::arg("tol") = global_tolerance());
    m.def("run_pipeline_stages", &run_pipeline_stages, py::arg("pipeline"),
          py::arg("tol") = global_tolerance());
    m.def("loss", &loss, py::arg("t"), py::arg("tol") = global_tolerance());
    m.def("gain", &gain, py::arg("g"), py::arg("tol") = global_tolerance());
    m.def("thermal_occupation", &thermal_occupation, py::arg("g"));
    m.def(
        "effective_temperature",
        [](double t_loss, double omega, bool literal_paper_formula, bool si_units) {
            return effective_temperature(t_loss, omega,
                                         TemperatureOptions{literal_paper_formula, si_units});
        },
        py::arg("t_loss"), py::arg("omega"), py::arg("literal_paper_formula") = false,
        py::arg("si_units") = false);
    m.def("bose_einstein", &bose_einstein, py::arg("omega"), py::arg("temperature"));

    py::class_<PTReport>(m, "PTReport")
        .def_readonly("max_pt_residual", &PTReport::max_pt_residual)
        .def_readonly("max_real_asymmetry", &PTReport::max_real_asymmetry)
        .def_readonly("max_imag_symmetry", &PTReport::max_imag_symmetry)
        .def_readonly("real_symmetric", &PTReport::real_symmetric)
        .def_readonly("imag_antisymmetric", &PTReport::imag_antisymmetric)
        .def_readonly("pt_symmetric", &PTReport::pt_symmetric);

    m.def(
        "check_pt_profile",
        [](const std::vector<std::pair<double, Complex>>& samples, double tol) {
            return check_pt_profile(IndexProfile{samples}, tol);
        },
        py::arg("samples"), py::arg("tol") = global_tolerance());

    py::class_<FockState>(m, "FockState")
        .def_readonly("dim", &FockState::dim)
        .def_readonly("modes", &FockState::modes)
        .def_readonly("rho", &FockState::rho);

    py::class_<TruncationReport>(m, "TruncationReport")
        .def_readonly("trace_deficit", &TruncationReport::trace_deficit)
        .def_readonly("boundary_mass", &TruncationReport::boundary_mass)
        .def_readonly("max_occupied", &TruncationReport::max_occupied);

    m.def("truncation_report", &truncation_report, py::arg("state"));
    m.def("coherent_fock", py::overload_cast<Complex, Index>(&coherent_fock), py::arg("alpha"),
          py::arg("dim"));
    m.def("coherent_fock", py::overload_cast<const Vector&, Index>(&coherent_fock),
          py::arg("alpha"), py::arg("dim"));
    m.def("displaced_thermal_fock", &displaced_thermal_fock, py::arg("alpha"), py::arg("nbar"),
          py::arg("dim"));
    m.def("loss_channel_fock", &loss_channel_fock, py::arg("state"), py::arg("t"),
          py::arg("mode") = 0, py::arg("leak_bound") = kDefaultLeakBound);
    m.def("gain_channel_fock", &gain_channel_fock, py::arg("state"), py::arg("g"),
          py::arg("mode") = 0, py::arg("leak_bound") = kDefaultLeakBound);
    m.def("phase_channel_fock", &phase_channel_fock, py::arg("state"), py::arg("phi"),
          py::arg("mode") = 0);
    m.def("wigner_fock", &wigner_fock, py::arg("state"), py::arg("point"), py::arg("mode") = 0);
    m.def("reduce_to_mode", &reduce_to_mode, py::arg("state"), py::arg("mode"));
    m.def("mean_amplitude_fock", &mean_amplitude_fock, py::arg("state"));
    m.def("covariance_fock", &covariance_fock, py::arg("state"));
    m.def("purity_fock", &purity_fock, py::arg("state"));
    m.def("mean_photon_fock", &mean_photon_fock, py::arg("state"), py::arg("mode") = 0);
    m.def("fidelity_with_pure", &fidelity_with_pure, py::arg("state"), py::arg("psi"));

    py::class_<ComparisonReport>(m, "ComparisonReport")
        .def_readonly("mean_diff", &ComparisonReport::mean_diff)
        .def_readonly("covariance_diff", &ComparisonReport::covariance_diff)
        .def_readonly("purity_diff", &ComparisonReport::purity_diff)
        .def_readonly("wigner_diff", &ComparisonReport::wigner_diff)
        .def_readonly("passed", &ComparisonReport::passed);

    m.def(
        "compare",
        [](const GaussianState& gaussian, const FockState& fock, double tol,
           const std::vector<Complex>& points) {
            return compare(gaussian, fock, CompareTolerances{tol, tol, tol, tol}, points);
        },
        py::arg("gaussian"), py::arg("fock"), py::arg("tol") = 1e-6,
        py::arg("points") = std::vector<Complex>{});
    m.def("run_pipeline_fock", &run_pipeline_fock, py::arg("pipeline"), py::arg("dim"),
          py::arg("leak_bound") = kDefaultLeakBound);

    m.def("parse_pipeline", &parse_pipeline, py::arg("text"),
          py::arg("tol") = global_tolerance());
    m.def(
        "simulate_report",
        [](const PipelineSpec& pipeline, bool literal_paper_formula, bool si_units,
           double omega_si, double tol) {
            return simulate_report(pipeline,
                                   SimulateOptions{literal_paper_formula, si_units, omega_si}, tol)
                .dump(2);
        },
        py::arg("pipeline"), py::arg("literal_paper_formula") = false,
        py::arg("si_units") = false, py::arg("omega_si") = 0.0,
        py::arg("tol") = global_tolerance());
}
