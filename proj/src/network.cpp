#include "qgls/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qgls {

namespace {

// CODATA 2018.
constexpr double kHbar = 1.054571817e-34; // J s
constexpr double kBoltzmann = 1.380649e-23; // J/K

Matrix scalar_matrix(double value) {
    Matrix m(1, 1);
    m(0, 0) = value;
    return m;
}

} // namespace

GaussianState InputSpec::to_state() const {
    switch (kind) {
        case Kind::Coherent: return coherent_state(alpha);
        case Kind::DisplacedThermal: return displaced_thermal_state(alpha, nbar);
    }
    throw Error(ErrorCode::DomainError, "unknown input kind");
}

DeviceSpec ElementSpec::to_device(double tol) const {
    Matrix t = scalar ? scalar_matrix(value) : matrix;
    switch (kind) {
        case Kind::Loss: return loss_device(t, tol);
        case Kind::Gain: return gain_device(t, tol);
        case Kind::Unitary: {
            RealVector sv = t.jacobiSvd().singularValues();
            if (sv.size() == 0 || sv(0) > 1.0 + tol || sv(sv.size() - 1) < 1.0 - tol)
                throw Error(ErrorCode::ConstraintViolated,
                            "unitary element has singular values off 1");
            return loss_device(t, tol); // noise-free: A = sqrt(I - U U+) = 0
        }
    }
    throw Error(ErrorCode::DomainError, "unknown element kind");
}

std::string ElementSpec::describe() const {
    switch (kind) {
        case Kind::Loss: return scalar ? "loss(t=" + std::to_string(value) + ")" : "loss";
        case Kind::Gain: return scalar ? "gain(g=" + std::to_string(value) + ")" : "gain";
        case Kind::Unitary: return "unitary";
    }
    return "?";
}

GaussianState run_pipeline(const PipelineSpec& pipeline, double tol) {
    GaussianState state = pipeline.input.to_state();
    for (const ElementSpec& element : pipeline.elements)
        state = apply_device(state, element.to_device(tol), element.modes, tol);
    return state;
}

std::vector<GaussianState> run_pipeline_stages(const PipelineSpec& pipeline, double tol) {
    std::vector<GaussianState> stages;
    stages.reserve(pipeline.elements.size() + 1);
    stages.push_back(pipeline.input.to_state());
    for (const ElementSpec& element : pipeline.elements)
        stages.push_back(apply_device(stages.back(), element.to_device(tol), element.modes, tol));
    return stages;
}

DeviceSpec loss(double t, double tol) { return loss_device(scalar_matrix(t), tol); }

DeviceSpec gain(double g, double tol) { return gain_device(scalar_matrix(g), tol); }

double thermal_occupation(double g) {
    if (g < 1.0)
        throw Error(ErrorCode::SubunityGain,
                    "thermal occupation is defined for gain >= 1, got " + std::to_string(g));
    return g * g - 1.0;
}

double effective_temperature(double t_loss, double omega, TemperatureOptions options) {
    if (!(t_loss > 0.0 && t_loss < 1.0))
        throw Error(ErrorCode::DomainError,
                    "t_loss must lie in (0, 1), got " + std::to_string(t_loss));
    if (!(omega > 0.0))
        throw Error(ErrorCode::DomainError, "omega must be positive");
    double log_term = std::log1p(-t_loss * t_loss); // ln(1 - t^2) < 0
    double scale = options.si_units ? kHbar / kBoltzmann : 1.0;
    if (options.literal_paper_formula) return -scale * omega * log_term;
    return -scale * omega / log_term;
}

double bose_einstein(double omega, double temperature) {
    if (!(omega > 0.0) || !(temperature > 0.0))
        throw Error(ErrorCode::DomainError, "omega and temperature must be positive");
    return 1.0 / std::expm1(omega / temperature);
}

PTReport check_pt_profile(const IndexProfile& profile, double tol) {
    PTReport report;
    report.tolerance = tol;
    double span = 0.0;
    for (const auto& [x, n] : profile.samples) span = std::max(span, std::abs(x));
    double pos_tol = tol * std::max(span, 1.0);

    for (const auto& [x, n] : profile.samples) {
        // Nearest sample to the mirror position -x.
        const std::pair<double, Complex>* partner = nullptr;
        double best = std::numeric_limits<double>::infinity();
        for (const auto& candidate : profile.samples) {
            double miss = std::abs(candidate.first + x);
            if (miss < best) {
                best = miss;
                partner = &candidate;
            }
        }
        if (partner == nullptr || best > pos_tol)
            throw Error(ErrorCode::AsymmetricSampling,
                        "no sample at -x for x = " + std::to_string(x));
        Complex mirrored = partner->second;
        report.max_pt_residual = std::max(report.max_pt_residual, std::abs(mirrored - std::conj(n)));
        report.max_real_asymmetry =
            std::max(report.max_real_asymmetry, std::abs(mirrored.real() - n.real()));
        report.max_imag_symmetry =
            std::max(report.max_imag_symmetry, std::abs(mirrored.imag() + n.imag()));
    }
    report.real_symmetric = report.max_real_asymmetry <= tol;
    report.imag_antisymmetric = report.max_imag_symmetry <= tol;
    report.pt_symmetric = report.max_pt_residual <= tol;
    return report;
}

} // namespace qgls
