#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qgls/device.hpp"

namespace qgls {

/// Vacuum quadrature variance. The convention is fixed so that a coherent
/// state has Wigner function W(a) = (2/pi) exp(-2|a - a0|^2) with a = x + ip;
/// all covariance formulas in this library assume it.
inline constexpr double kVacuumVariance = 0.25;

/// Absolute tolerance on symplectic eigenvalues when deciding admissibility.
inline constexpr double kAdmissibilityTol = 1e-8;

/// N-mode Gaussian state in symmetric (Wigner) ordering: complex mean
/// amplitude per mode plus a real 2N x 2N covariance over (x1, p1, ..., xN, pN).
class GaussianState {
  public:
    /// Validates symmetry and the uncertainty bound (symplectic eigenvalues
    /// >= 1/4 - kAdmissibilityTol); rejects otherwise.
    GaussianState(Vector mean, RealMatrix covariance);

    Index modes() const { return mean_.size(); }
    const Vector& mean() const { return mean_; }
    const RealMatrix& covariance() const { return covariance_; }

    /// Mean in quadrature order (x1, p1, x2, p2, ...).
    RealVector quadrature_mean() const;

  private:
    Vector mean_;
    RealMatrix covariance_;
};

GaussianState coherent_state(const Vector& alpha);
GaussianState coherent_state(Complex alpha);

GaussianState displaced_thermal_state(Complex alpha, double nbar);
GaussianState displaced_thermal_state(const Vector& alpha, const RealVector& nbar);

/// Sends the selected field modes through a device: extends the state with
/// the device modes in vacuum, pushes the first and second moments through
/// the dilation's quadrature representation, and marginalizes the device
/// modes again. For sigma = -1 the device variables enter conjugated (d = g+),
/// realized as the reflection p -> -p on device quadratures on both sides of
/// the map.
GaussianState apply_device(const GaussianState& state, const DeviceSpec& spec,
                           const std::vector<Index>& modes, double tol = global_tolerance());

/// 1/(4^N sqrt(det V)); equals 1 exactly on coherent states.
double purity(const GaussianState& state);

/// <n> for one mode: (V_xx + V_pp) + |alpha|^2 - 1/2.
double mean_photon(const GaussianState& state, Index mode);

/// Positive symplectic spectrum of a quadrature covariance matrix. Vacuum
/// gives 1/4 in every entry.
RealVector symplectic_eigenvalues(const RealMatrix& covariance);

struct Window {
    double x_min = 0.0, x_max = 0.0;
    Index nx = 0;
    double p_min = 0.0, p_max = 0.0;
    Index np = 0;
};

/// Sampled single-mode marginal Wigner function. Values are stored row-major
/// with x as the outer index: values[ix * np + ip] = W(x_ix, p_ip).
struct WignerGrid {
    Index mode = 0;
    Window window;
    std::vector<double> values;

    double at(Index ix, Index ip) const { return values[ix * window.np + ip]; }
    double x_at(Index ix) const;
    double p_at(Index ip) const;
    double cell_area() const;

    /// Rectangle-rule integral over the grid; close to 1 when the window
    /// contains the state.
    double riemann_sum() const;

    /// CSV with header "x,p,w", one grid point per row, shortest
    /// round-trip decimal formatting.
    void write_csv(std::ostream& out) const;
};

WignerGrid wigner(const GaussianState& state, Index mode, const Window& window);

/// Marginal Wigner density of one mode at a single phase-space point a = x + ip.
double wigner_value(const GaussianState& state, Index mode, Complex point);

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

} // namespace qgls
