#pragma once

#include <vector>

#include "qgls/network.hpp"

namespace qgls {

/// Default bound on tolerated truncation leak per channel application.
inline constexpr double kDefaultLeakBound = 1e-8;

/// Truncated N-mode density operator in the photon-number basis, one
/// truncation dimension for all modes; rho is dim^N x dim^N with mode 0 as
/// the most significant index digit.
struct FockState {
    Index dim = 0;
    Index modes = 1;
    Matrix rho;

    Index size() const { return rho.rows(); }
};

struct TruncationReport {
    double trace_deficit = 0.0; // probability mass lost to the cutoff
    double boundary_mass = 0.0; // population with any mode at level dim-1
    Index max_occupied = 0;     // highest level with population > 1e-12
};

TruncationReport truncation_report(const FockState& state);

/// Truncated coherent state |alpha>. Not renormalized: the Poisson tail
/// beyond the cutoff shows up as a trace deficit.
FockState coherent_fock(Complex alpha, Index dim);
FockState coherent_fock(const Vector& alpha, Index dim);

/// D(alpha) rho_thermal(nbar) D(alpha)+ per mode.
FockState displaced_thermal_fock(Complex alpha, double nbar, Index dim);

/// Beam-splitter dilation of a loss channel: vacuum ancilla, two-mode
/// unitary exp(theta (a+g - a g+)) with cos(theta) = t, ancilla traced out.
/// Exact on truncated inputs (the generator conserves total excitation).
FockState loss_channel_fock(const FockState& state, double t, Index mode = 0,
                            double leak_bound = kDefaultLeakBound);

/// Two-mode-squeezer dilation of a gain channel: vacuum ancilla, unitary
/// exp(r (a+g+ - a g)) with cosh(r) = g, ancilla traced out. Throws
/// TruncationOverflow when probability mass reaches the cutoff.
FockState gain_channel_fock(const FockState& state, double g, Index mode = 0,
                            double leak_bound = kDefaultLeakBound);

/// Phase rotation exp(i phi n) on one mode (the scalar unitary element).
FockState phase_channel_fock(const FockState& state, double phi, Index mode = 0);

/// Wigner function of one mode's marginal via the displaced-parity formula
/// W(a) = (2/pi) sum_n (-1)^n <n| D(-a) rho D(a) |n>.
double wigner_fock(const FockState& state, Complex point, Index mode = 0);

FockState reduce_to_mode(const FockState& state, Index mode);

Vector mean_amplitude_fock(const FockState& state);          // <a_k> per mode
RealMatrix covariance_fock(const FockState& state);          // symmetric-ordered, 2N x 2N
double purity_fock(const FockState& state);                  // Tr rho^2
double mean_photon_fock(const FockState& state, Index mode);

/// <psi| rho |psi> for a pure reference vector.
double fidelity_with_pure(const FockState& state, const Vector& psi);

struct CompareTolerances {
    double mean = 1e-6;
    double covariance = 1e-6;
    double purity = 1e-6;
    double wigner = 1e-6;
};

struct ComparisonReport {
    double mean_diff = 0.0;
    double covariance_diff = 0.0;
    double purity_diff = 0.0;
    double wigner_diff = 0.0;
    std::vector<std::pair<Complex, double>> wigner_points; // (point, |diff|), mode-major
    bool passed = false;
    CompareTolerances tolerances;
};

/// Cross-checks a Gaussian state against a Fock-basis density matrix:
/// means, covariance reconstructed from quadrature moments, purity, and
/// Wigner values on a point set (defaults to the mean and its neighborhood
/// for every mode).
ComparisonReport compare(const GaussianState& gaussian, const FockState& fock,
                         CompareTolerances tolerances = {},
                         const std::vector<Complex>& points = {});

/// Runs a pipeline in the truncated Fock representation. Only scalar
/// single-mode elements are supported here; anything else is rejected.
FockState run_pipeline_fock(const PipelineSpec& pipeline, Index dim,
                            double leak_bound = kDefaultLeakBound);

} // namespace qgls
