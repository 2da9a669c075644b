#pragma once

#include <complex>

#include <Eigen/Dense>

#include "qgls/error.hpp"

namespace qgls {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Library-wide relative tolerance. Defaults to 1e-10; the environment
/// variable QGLS_TOL overrides it (read once, at first use).
double global_tolerance();

/// Largest singular value.
double spectral_norm(const Matrix& m);

bool is_hermitian(const Matrix& m, double tol = global_tolerance());

/// Principal square root of a Hermitian positive-semidefinite matrix via
/// eigendecomposition. Eigenvalues in [-tol*scale, 0] are clamped to zero,
/// where scale = max(spectral norm, 1); more negative ones are an error.
Matrix hermitian_sqrt(const Matrix& m, double tol = global_tolerance());

/// Moore-Penrose pseudoinverse of a Hermitian matrix: eigenvalues with
/// |lambda| <= tol * spectral norm map to 0, the rest to 1/lambda.
Matrix regularized_inverse(const Matrix& m, double tol = global_tolerance());

/// Real quadrature representation of a complex-linear mode map: each entry
/// z becomes the 2x2 block [[Re z, -Im z], [Im z, Re z]] acting on (x, p)
/// pairs ordered (x1, p1, x2, p2, ...).
RealMatrix complex_to_quadrature(const Matrix& m);

} // namespace qgls
