#include "qgls/device.hpp"

#include <string>

namespace qgls {

namespace {

// Noise matrix from a Hermitian residual I - T T+ (or T T+ - I). Eigenvalues
// within the clamp band around zero collapse to exactly zero so that
// near-unitary transmissions yield exactly noise-free devices instead of
// sqrt-of-roundoff couplings.
Matrix residual_noise(const Matrix& residual, double band) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (residual + residual.adjoint()));
    const RealVector& values = solver.eigenvalues();
    double scale = std::max(values.size() > 0 ? values.cwiseAbs().maxCoeff() : 0.0, 1.0);
    RealVector roots(values.size());
    for (Index i = 0; i < values.size(); ++i) {
        double lambda = values(i);
        if (lambda < -band * scale)
            throw Error(ErrorCode::NegativeEigenvalue,
                        "residual eigenvalue " + std::to_string(lambda) + " below -tolerance");
        roots(i) = lambda > band * scale ? std::sqrt(lambda) : 0.0;
    }
    return solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().adjoint();
}

void require_device_shape(const DeviceSpec& spec) {
    if (spec.transmission.rows() != spec.transmission.cols() ||
        spec.noise.rows() != spec.noise.cols() ||
        spec.transmission.rows() != spec.noise.rows())
        throw Error(ErrorCode::DimensionMismatch,
                    "device matrices must be square and of equal dimension (T is " +
                        std::to_string(spec.transmission.rows()) + "x" +
                        std::to_string(spec.transmission.cols()) + ", A is " +
                        std::to_string(spec.noise.rows()) + "x" +
                        std::to_string(spec.noise.cols()) + ")");
    if (spec.sigma != 1 && spec.sigma != -1)
        throw Error(ErrorCode::DomainError, "sigma must be +1 or -1");
}

} // namespace

ValidationReport validate_device(const DeviceSpec& spec, double tol) {
    require_device_shape(spec);
    ValidationReport report;
    report.tolerance = tol;
    const Index n = spec.modes();
    Matrix constraint = spec.transmission * spec.transmission.adjoint() +
                        static_cast<double>(spec.sigma) * spec.noise * spec.noise.adjoint() -
                        Matrix::Identity(n, n);
    report.constraint_residual = spectral_norm(constraint);

    RealVector sv = spec.transmission.jacobiSvd().singularValues();
    report.singular_max = sv.size() > 0 ? sv(0) : 0.0;
    report.singular_min = sv.size() > 0 ? sv(sv.size() - 1) : 0.0;
    report.sigma_consistent = spec.sigma == +1 ? report.singular_max <= 1.0 + tol
                                               : report.singular_min >= 1.0 - tol;
    report.passed = report.constraint_residual <= tol && report.sigma_consistent;
    return report;
}

DeviceSpec loss_device(const Matrix& transmission, double tol) {
    if (transmission.rows() != transmission.cols())
        throw Error(ErrorCode::DimensionMismatch, "transmission matrix must be square");
    const Index n = transmission.rows();
    double sv_max = spectral_norm(transmission);
    if (sv_max > 1.0 + tol)
        throw Error(ErrorCode::GainNotLoss,
                    "singular value " + std::to_string(sv_max) +
                        " exceeds 1; amplifying maps need gain_device");
    Matrix residual = Matrix::Identity(n, n) - transmission * transmission.adjoint();
    // sv <= 1 + tol allows eigenvalues grazing -2 tol; widen the clamp band.
    return DeviceSpec{transmission, residual_noise(residual, 3.0 * tol), +1};
}

DeviceSpec gain_device(const Matrix& transmission, double tol) {
    if (transmission.rows() != transmission.cols())
        throw Error(ErrorCode::DimensionMismatch, "transmission matrix must be square");
    const Index n = transmission.rows();
    RealVector sv = transmission.jacobiSvd().singularValues();
    double sv_min = sv.size() > 0 ? sv(sv.size() - 1) : 0.0;
    if (sv_min < 1.0 - tol)
        throw Error(ErrorCode::LossNotGain,
                    "singular value " + std::to_string(sv_min) +
                        " below 1; attenuating maps need loss_device");
    Matrix residual = transmission * transmission.adjoint() - Matrix::Identity(n, n);
    return DeviceSpec{transmission, residual_noise(residual, 3.0 * tol), -1};
}

namespace {

// Spectral functions of a Hermitian PSD matrix with a single rank decision,
// so that sqrt, pseudo-inverse of the sqrt, and the kernel projector agree
// on which eigenvalues count as zero.
struct SpectralParts {
    Matrix sqrt;
    Matrix inv_sqrt;     // pseudo-inverse of sqrt
    Matrix ker_projector;
    bool singular = false;
};

SpectralParts spectral_parts(const Matrix& psd, double tol) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (psd + psd.adjoint()));
    const RealVector& values = solver.eigenvalues();
    const Matrix& vectors = solver.eigenvectors();
    double norm = values.size() > 0 ? values.cwiseAbs().maxCoeff() : 0.0;
    double cutoff = tol * std::max(norm, 1.0);

    RealVector roots(values.size()), inv_roots(values.size()), kernel(values.size());
    SpectralParts parts;
    for (Index i = 0; i < values.size(); ++i) {
        if (values(i) <= cutoff) {
            roots(i) = 0.0;
            inv_roots(i) = 0.0;
            kernel(i) = 1.0;
            parts.singular = true;
        } else {
            roots(i) = std::sqrt(values(i));
            inv_roots(i) = 1.0 / roots(i);
            kernel(i) = 0.0;
        }
    }
    parts.sqrt = vectors * roots.asDiagonal() * vectors.adjoint();
    parts.inv_sqrt = vectors * inv_roots.asDiagonal() * vectors.adjoint();
    parts.ker_projector = vectors * kernel.asDiagonal() * vectors.adjoint();
    return parts;
}

} // namespace

Dilation dilation(const DeviceSpec& spec, double tol) {
    ValidationReport report = validate_device(spec, tol);
    if (!report.passed)
        throw Error(ErrorCode::ConstraintViolated,
                    "device fails T T+ + sigma A A+ = I (residual " +
                        std::to_string(report.constraint_residual) + ", singular values in [" +
                        std::to_string(report.singular_min) + ", " +
                        std::to_string(report.singular_max) + "], sigma " +
                        std::to_string(spec.sigma) + ")");

    const Index n = spec.modes();
    const double sigma = static_cast<double>(spec.sigma);
    const Matrix& t = spec.transmission;

    // C = sqrt(T T+) and its regularized inverse, with one rank decision for
    // everything derived from T: eigenvalue sv^2 counts as zero when
    // sv^2 <= tol * max(||T T+||, 1).
    Eigen::JacobiSVD<Matrix> svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RealVector& sv = svd.singularValues();
    double sv_scale = std::max(sv.size() > 0 ? sv(0) * sv(0) : 0.0, 1.0);
    RealVector c_diag(n), c_inv_diag(n);
    std::vector<Index> absorbed;
    for (Index i = 0; i < n; ++i) {
        if (sv(i) * sv(i) <= tol * sv_scale) {
            c_diag(i) = 0.0;
            c_inv_diag(i) = 0.0;
            absorbed.push_back(i);
        } else {
            c_diag(i) = sv(i);
            c_inv_diag(i) = 1.0 / sv(i);
        }
    }
    Matrix c_sqrt = svd.matrixU() * c_diag.asDiagonal() * svd.matrixU().adjoint();
    Matrix c_inv = svd.matrixU() * c_inv_diag.asDiagonal() * svd.matrixU().adjoint();

    SpectralParts s = spectral_parts(spec.noise * spec.noise.adjoint(), tol);
    // Noise components inside the kernel of S are sub-tolerance couplings
    // (sqrt-amplified roundoff on lossless directions); drop them so the
    // identity completion closes exactly.
    Matrix a = s.singular
                   ? ((Matrix::Identity(n, n) - s.ker_projector) * spec.noise).eval()
                   : spec.noise;

    Matrix lower_left = -sigma * s.sqrt * c_inv * t;
    Matrix lower_right = c_sqrt * s.inv_sqrt * a;

    if (s.singular) {
        // Lossless directions: the device modes decouple, act as identity.
        lower_right += s.ker_projector;
    }
    if (!absorbed.empty() && spec.sigma == +1) {
        // Fully absorbed directions: pair T's zero input/output singular
        // vectors so the field routes into the device isometrically.
        for (Index i : absorbed)
            lower_left += svd.matrixU().col(i) * svd.matrixV().col(i).adjoint();
    }

    Dilation dil;
    dil.sigma = spec.sigma;
    dil.lambda = Matrix(2 * n, 2 * n);
    dil.lambda.topLeftCorner(n, n) = t;
    dil.lambda.topRightCorner(n, n) = a;
    dil.lambda.bottomLeftCorner(n, n) = lower_left;
    dil.lambda.bottomRightCorner(n, n) = lower_right;
    dil.metric = Matrix::Identity(2 * n, 2 * n);
    dil.metric.bottomRightCorner(n, n) *= sigma;

    Matrix defect = dil.lambda * dil.metric * dil.lambda.adjoint() - dil.metric;
    double scale = std::max(1.0, dil.lambda.squaredNorm());
    if (defect.norm() > 10.0 * tol * scale)
        throw Error(ErrorCode::ConstraintViolated,
                    "dilation is not pseudo-unitary (defect " +
                        std::to_string(defect.norm()) +
                        "); the noise matrix has a null space the completion "
                        "convention cannot close");
    return dil;
}

} // namespace qgls
