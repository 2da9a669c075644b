#pragma once

#include <utility>
#include <vector>

#include "qgls/gaussian.hpp"

namespace qgls {

/// Declarative input state for a pipeline.
struct InputSpec {
    enum class Kind { Coherent, DisplacedThermal };

    Kind kind = Kind::Coherent;
    Vector alpha;    // one amplitude per mode
    RealVector nbar; // occupation per mode (DisplacedThermal only)

    GaussianState to_state() const;
};

/// One pipeline element, kept in declarative form so both the Gaussian
/// engine and the Fock oracle can consume it.
struct ElementSpec {
    enum class Kind { Loss, Gain, Unitary };

    Kind kind = Kind::Loss;
    bool scalar = false;
    double value = 0.0; // t or g when scalar
    Matrix matrix;      // full T (loss/gain) or U (unitary) otherwise
    std::vector<Index> modes;

    Index dimension() const { return scalar ? 1 : matrix.rows(); }
    DeviceSpec to_device(double tol = global_tolerance()) const;
    std::string describe() const;
};

struct PipelineSpec {
    Index modes = 1;
    double omega = 1.0;
    InputSpec input;
    std::vector<ElementSpec> elements;
};

/// Folds apply_device over the elements in order.
GaussianState run_pipeline(const PipelineSpec& pipeline, double tol = global_tolerance());

/// Same, returning every intermediate state; stages[0] is the input and
/// stages[k] the state after element k.
std::vector<GaussianState> run_pipeline_stages(const PipelineSpec& pipeline,
                                               double tol = global_tolerance());

/// Single-mode scalar elements (no reflection at the interface).
DeviceSpec loss(double t, double tol = global_tolerance());
DeviceSpec gain(double g, double tol = global_tolerance());

/// Mean thermal photon number injected by gain G >= 1: G^2 - 1.
double thermal_occupation(double g);

struct TemperatureOptions {
    /// Use the variant with the logarithm as a factor instead of in the
    /// denominator. Kept selectable for comparison; it is not consistent
    /// with thermal_occupation (see effective_temperature).
    bool literal_paper_formula = false;
    /// Treat omega as rad/s and return kelvin; natural units otherwise.
    bool si_units = false;
};

/// Temperature whose Bose-Einstein occupation at omega equals the thermal
/// noise of a gain element that undoes a loss with amplitude transmission
/// t_loss: T_eff = -hbar omega / (k_B ln(1 - t_loss^2)). The literal variant
/// -hbar omega ln(1 - t_loss^2) / k_B is available through the options.
double effective_temperature(double t_loss, double omega, TemperatureOptions options = {});

/// Bose-Einstein occupation 1/(exp(omega/T) - 1) in natural units.
double bose_einstein(double omega, double temperature);

/// Complex refractive-index profile sampled symmetrically about x = 0.
struct IndexProfile {
    std::vector<std::pair<double, Complex>> samples; // (position, n(x))
};

struct PTReport {
    double max_pt_residual = 0.0;   // max |n(-x) - conj(n(x))|
    double max_real_asymmetry = 0.0; // max |Re n(-x) - Re n(x)|
    double max_imag_symmetry = 0.0;  // max |Im n(-x) + Im n(x)|
    bool real_symmetric = false;
    bool imag_antisymmetric = false;
    bool pt_symmetric = false;
    double tolerance = 0.0;
};

/// Checks n(-x) = conj(n(x)) over the sampled profile. Sampling must be
/// closed under reflection within tolerance.
PTReport check_pt_profile(const IndexProfile& profile, double tol = global_tolerance());

} // namespace qgls
