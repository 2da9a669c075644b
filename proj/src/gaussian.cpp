#include "qgls/gaussian.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

namespace qgls {

namespace {

void check_mode(const GaussianState& state, Index mode) {
    if (mode < 0 || mode >= state.modes())
        throw Error(ErrorCode::DimensionMismatch,
                    "mode " + std::to_string(mode) + " out of range for " +
                        std::to_string(state.modes()) + "-mode state");
}

RealMatrix symplectic_form(Index n) {
    RealMatrix omega = RealMatrix::Zero(2 * n, 2 * n);
    for (Index k = 0; k < n; ++k) {
        omega(2 * k, 2 * k + 1) = 1.0;
        omega(2 * k + 1, 2 * k) = -1.0;
    }
    return omega;
}

} // namespace

RealVector symplectic_eigenvalues(const RealMatrix& covariance) {
    const Index n = covariance.rows() / 2;
    Eigen::ComplexEigenSolver<Matrix> solver(
        (symplectic_form(n) * covariance).cast<Complex>(), false);
    std::vector<double> positive;
    for (Index i = 0; i < solver.eigenvalues().size(); ++i) {
        double nu = solver.eigenvalues()(i).imag();
        if (nu > 0.0) positive.push_back(nu);
    }
    std::sort(positive.begin(), positive.end());
    return Eigen::Map<RealVector>(positive.data(), static_cast<Index>(positive.size()));
}

GaussianState::GaussianState(Vector mean, RealMatrix covariance)
    : mean_(std::move(mean)), covariance_(std::move(covariance)) {
    const Index n = mean_.size();
    if (covariance_.rows() != 2 * n || covariance_.cols() != 2 * n)
        throw Error(ErrorCode::DimensionMismatch,
                    "covariance must be 2N x 2N for an N-mode state");
    if (!mean_.allFinite() || !covariance_.allFinite())
        throw Error(ErrorCode::InadmissibleState, "non-finite state parameters");
    double scale = std::max(1.0, covariance_.cwiseAbs().maxCoeff());
    if ((covariance_ - covariance_.transpose()).cwiseAbs().maxCoeff() >
        global_tolerance() * scale)
        throw Error(ErrorCode::InadmissibleState, "covariance is not symmetric");
    covariance_ = 0.5 * (covariance_ + covariance_.transpose().eval());
    RealVector nu = symplectic_eigenvalues(covariance_);
    if (nu.size() > 0 && nu(0) < kVacuumVariance - kAdmissibilityTol)
        throw Error(ErrorCode::InadmissibleState,
                    "symplectic eigenvalue " + std::to_string(nu(0)) +
                        " violates the uncertainty bound 1/4");
}

RealVector GaussianState::quadrature_mean() const {
    RealVector r(2 * modes());
    for (Index k = 0; k < modes(); ++k) {
        r(2 * k) = mean_(k).real();
        r(2 * k + 1) = mean_(k).imag();
    }
    return r;
}

GaussianState coherent_state(const Vector& alpha) {
    return GaussianState(alpha,
                         kVacuumVariance * RealMatrix::Identity(2 * alpha.size(), 2 * alpha.size()));
}

GaussianState coherent_state(Complex alpha) {
    Vector v(1);
    v(0) = alpha;
    return coherent_state(v);
}

GaussianState displaced_thermal_state(const Vector& alpha, const RealVector& nbar) {
    if (alpha.size() != nbar.size())
        throw Error(ErrorCode::DimensionMismatch, "alpha and nbar must have one entry per mode");
    RealMatrix cov = RealMatrix::Zero(2 * alpha.size(), 2 * alpha.size());
    for (Index k = 0; k < alpha.size(); ++k) {
        if (nbar(k) < 0.0)
            throw Error(ErrorCode::NegativeOccupation,
                        "nbar must be >= 0, got " + std::to_string(nbar(k)));
        double v = (2.0 * nbar(k) + 1.0) * kVacuumVariance;
        cov(2 * k, 2 * k) = v;
        cov(2 * k + 1, 2 * k + 1) = v;
    }
    return GaussianState(alpha, cov);
}

GaussianState displaced_thermal_state(Complex alpha, double nbar) {
    Vector a(1);
    a(0) = alpha;
    RealVector n(1);
    n(0) = nbar;
    return displaced_thermal_state(a, n);
}

GaussianState apply_device(const GaussianState& state, const DeviceSpec& spec,
                           const std::vector<Index>& modes, double tol) {
    const Index n = state.modes();
    const Index m = spec.modes();
    if (static_cast<Index>(modes.size()) != m)
        throw Error(ErrorCode::DimensionMismatch,
                    "device has " + std::to_string(m) + " ports but " +
                        std::to_string(modes.size()) + " modes were bound");
    std::vector<bool> seen(n, false);
    for (Index mode : modes) {
        if (mode < 0 || mode >= n)
            throw Error(ErrorCode::DimensionMismatch,
                        "mode " + std::to_string(mode) + " out of range");
        if (seen[mode])
            throw Error(ErrorCode::DimensionMismatch,
                        "mode " + std::to_string(mode) + " bound twice");
        seen[mode] = true;
    }

    Dilation dil = dilation(spec, tol);
    RealMatrix lambda_q = complex_to_quadrature(dil.lambda);
    if (dil.sigma == -1) {
        // d = g+ in the amplifying case: conjugate the device phase-space
        // variables (p -> -p) going in and coming out.
        RealMatrix reflect = RealMatrix::Identity(4 * m, 4 * m);
        for (Index k = m; k < 2 * m; ++k) reflect(2 * k + 1, 2 * k + 1) = -1.0;
        lambda_q = reflect * lambda_q * reflect;
    }

    // Extended map on (field modes, device modes): identity on untouched
    // field quadratures, dilation blocks on the bound ones.
    const Index total = n + m;
    RealMatrix full = RealMatrix::Identity(2 * total, 2 * total);
    std::vector<Index> all_slots(4 * m);
    for (Index j = 0; j < m; ++j) {
        all_slots[2 * j] = 2 * modes[static_cast<size_t>(j)];
        all_slots[2 * j + 1] = 2 * modes[static_cast<size_t>(j)] + 1;
        all_slots[2 * (m + j)] = 2 * (n + j);
        all_slots[2 * (m + j) + 1] = 2 * (n + j) + 1;
    }
    for (Index r = 0; r < 4 * m; ++r) full.row(all_slots[static_cast<size_t>(r)]).setZero();
    for (Index r = 0; r < 4 * m; ++r)
        for (Index c = 0; c < 4 * m; ++c)
            full(all_slots[static_cast<size_t>(r)], all_slots[static_cast<size_t>(c)]) =
                lambda_q(r, c);

    RealVector mean_ext = RealVector::Zero(2 * total);
    mean_ext.head(2 * n) = state.quadrature_mean();
    RealMatrix cov_ext = kVacuumVariance * RealMatrix::Identity(2 * total, 2 * total);
    cov_ext.topLeftCorner(2 * n, 2 * n) = state.covariance();

    RealVector mean_out = full * mean_ext;
    RealMatrix cov_out = full * cov_ext * full.transpose();

    Vector mean_field(n);
    for (Index k = 0; k < n; ++k)
        mean_field(k) = Complex(mean_out(2 * k), mean_out(2 * k + 1));
    return GaussianState(mean_field, cov_out.topLeftCorner(2 * n, 2 * n));
}

double purity(const GaussianState& state) {
    double det = state.covariance().determinant();
    return 1.0 / (std::pow(4.0, static_cast<double>(state.modes())) * std::sqrt(det));
}

double mean_photon(const GaussianState& state, Index mode) {
    check_mode(state, mode);
    const RealMatrix& v = state.covariance();
    double second = v(2 * mode, 2 * mode) + v(2 * mode + 1, 2 * mode + 1);
    return second + std::norm(state.mean()(mode)) - 0.5;
}

double wigner_value(const GaussianState& state, Index mode, Complex point) {
    check_mode(state, mode);
    Eigen::Matrix2d v = state.covariance().block<2, 2>(2 * mode, 2 * mode);
    Eigen::Vector2d delta(point.real() - state.mean()(mode).real(),
                          point.imag() - state.mean()(mode).imag());
    double det = v.determinant();
    double quad = delta.dot(v.inverse() * delta);
    return std::exp(-0.5 * quad) / (2.0 * std::numbers::pi * std::sqrt(det));
}

double WignerGrid::x_at(Index ix) const {
    return window.nx > 1
               ? window.x_min + (window.x_max - window.x_min) * ix / (window.nx - 1)
               : window.x_min;
}

double WignerGrid::p_at(Index ip) const {
    return window.np > 1
               ? window.p_min + (window.p_max - window.p_min) * ip / (window.np - 1)
               : window.p_min;
}

double WignerGrid::cell_area() const {
    double dx = window.nx > 1 ? (window.x_max - window.x_min) / (window.nx - 1) : 1.0;
    double dp = window.np > 1 ? (window.p_max - window.p_min) / (window.np - 1) : 1.0;
    return dx * dp;
}

double WignerGrid::riemann_sum() const {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum * cell_area();
}

std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

void WignerGrid::write_csv(std::ostream& out) const {
    out << "x,p,w\n";
    for (Index ix = 0; ix < window.nx; ++ix)
        for (Index ip = 0; ip < window.np; ++ip)
            out << format_double(x_at(ix)) << ',' << format_double(p_at(ip)) << ','
                << format_double(at(ix, ip)) << '\n';
}

WignerGrid wigner(const GaussianState& state, Index mode, const Window& window) {
    check_mode(state, mode);
    if (window.nx < 1 || window.np < 1)
        throw Error(ErrorCode::EmptyWindow, "sample counts must be >= 1");
    if (window.x_max < window.x_min || window.p_max < window.p_min)
        throw Error(ErrorCode::EmptyWindow, "window ranges must be non-decreasing");

    WignerGrid grid;
    grid.mode = mode;
    grid.window = window;
    grid.values.resize(static_cast<size_t>(window.nx * window.np));

    Eigen::Matrix2d v = state.covariance().block<2, 2>(2 * mode, 2 * mode);
    Eigen::Matrix2d v_inv = v.inverse();
    double norm = 1.0 / (2.0 * std::numbers::pi * std::sqrt(v.determinant()));
    double x0 = state.mean()(mode).real();
    double p0 = state.mean()(mode).imag();

    for (Index ix = 0; ix < window.nx; ++ix) {
        double dx = grid.x_at(ix) - x0;
        for (Index ip = 0; ip < window.np; ++ip) {
            double dp = grid.p_at(ip) - p0;
            double quad = v_inv(0, 0) * dx * dx + 2.0 * v_inv(0, 1) * dx * dp +
                          v_inv(1, 1) * dp * dp;
            grid.values[static_cast<size_t>(ix * window.np + ip)] =
                norm * std::exp(-0.5 * quad);
        }
    }
    return grid;
}

} // namespace qgls
