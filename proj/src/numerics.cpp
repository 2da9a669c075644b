#include "qgls/numerics.hpp"

#include <cstdlib>
#include <string>

namespace qgls {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::NegativeEigenvalue: return "NegativeEigenvalue";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::GainNotLoss: return "GainNotLoss";
        case ErrorCode::LossNotGain: return "LossNotGain";
        case ErrorCode::ConstraintViolated: return "ConstraintViolated";
        case ErrorCode::InadmissibleState: return "InadmissibleState";
        case ErrorCode::NegativeOccupation: return "NegativeOccupation";
        case ErrorCode::EmptyWindow: return "EmptyWindow";
        case ErrorCode::SubunityGain: return "SubunityGain";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::AsymmetricSampling: return "AsymmetricSampling";
        case ErrorCode::TruncationOverflow: return "TruncationOverflow";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::SemanticError: return "SemanticError";
        case ErrorCode::BadGrid: return "BadGrid";
        case ErrorCode::IoError: return "IoError";
    }
    return "UnknownError";
}

double global_tolerance() {
    static const double tol = [] {
        if (const char* env = std::getenv("QGLS_TOL")) {
            char* end = nullptr;
            double value = std::strtod(env, &end);
            if (end != env && value > 0.0) return value;
        }
        return 1e-10;
    }();
    return tol;
}

double spectral_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    return m.jacobiSvd().singularValues()(0);
}

namespace {

void require_square(const Matrix& m, const char* op) {
    if (m.rows() != m.cols())
        throw Error(ErrorCode::DimensionMismatch,
                    std::string(op) + " requires a square matrix, got " +
                        std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

// Hermiticity residual relative to max(spectral norm, 1), and the
// eigendecomposition of the symmetrized matrix.
struct HermitianEig {
    RealVector values;
    Matrix vectors;
    double scale; // max(|lambda|, 1)
};

HermitianEig hermitian_eig(const Matrix& m, double tol, const char* op) {
    require_square(m, op);
    Matrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    double norm = solver.eigenvalues().size() > 0
                      ? solver.eigenvalues().cwiseAbs().maxCoeff()
                      : 0.0;
    double scale = std::max(norm, 1.0);
    double asym = (m - m.adjoint()).norm();
    if (asym > tol * scale)
        throw Error(ErrorCode::NotHermitian,
                    std::string(op) + ": asymmetry " + std::to_string(asym) +
                        " exceeds tolerance");
    return {solver.eigenvalues(), solver.eigenvectors(), scale};
}

} // namespace

Matrix hermitian_sqrt(const Matrix& m, double tol) {
    HermitianEig eig = hermitian_eig(m, tol, "hermitian_sqrt");
    RealVector roots(eig.values.size());
    for (Index i = 0; i < eig.values.size(); ++i) {
        double lambda = eig.values(i);
        if (lambda < -tol * eig.scale)
            throw Error(ErrorCode::NegativeEigenvalue,
                        "hermitian_sqrt: eigenvalue " + std::to_string(lambda) +
                            " below -tolerance");
        roots(i) = lambda > 0.0 ? std::sqrt(lambda) : 0.0;
    }
    return eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
}

Matrix regularized_inverse(const Matrix& m, double tol) {
    HermitianEig eig = hermitian_eig(m, tol, "regularized_inverse");
    double norm = eig.values.size() > 0 ? eig.values.cwiseAbs().maxCoeff() : 0.0;
    double cutoff = tol * norm;
    RealVector inv(eig.values.size());
    for (Index i = 0; i < eig.values.size(); ++i) {
        double lambda = eig.values(i);
        inv(i) = std::abs(lambda) <= cutoff ? 0.0 : 1.0 / lambda;
    }
    return eig.vectors * inv.asDiagonal() * eig.vectors.adjoint();
}

RealMatrix complex_to_quadrature(const Matrix& m) {
    RealMatrix q(2 * m.rows(), 2 * m.cols());
    for (Index r = 0; r < m.rows(); ++r) {
        for (Index c = 0; c < m.cols(); ++c) {
            double re = m(r, c).real();
            double im = m(r, c).imag();
            q(2 * r, 2 * c) = re;
            q(2 * r, 2 * c + 1) = -im;
            q(2 * r + 1, 2 * c) = im;
            q(2 * r + 1, 2 * c + 1) = re;
        }
    }
    return q;
}

} // namespace qgls
