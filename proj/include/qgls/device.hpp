#pragma once

#include "qgls/numerics.hpp"

namespace qgls {

/// One frequency-resolved linear optical element. The transmission matrix T
/// maps field inputs to field outputs; the noise matrix A couples the device
/// (Langevin) variables in. sigma = +1 models an absorbing element, -1 an
/// amplifying one, and the pair must satisfy T T+ + sigma A A+ = I.
struct DeviceSpec {
    Matrix transmission;
    Matrix noise;
    int sigma = +1;

    Index modes() const { return transmission.rows(); }
};

struct ValidationReport {
    double constraint_residual = 0.0; // ||T T+ + sigma A A+ - I||
    double singular_min = 0.0;        // singular-value range of T
    double singular_max = 0.0;
    bool sigma_consistent = false;    // sv range compatible with sigma
    bool passed = false;
    double tolerance = 0.0;
};

ValidationReport validate_device(const DeviceSpec& spec, double tol = global_tolerance());

/// Absorbing element from its transmission matrix: A = sqrt(I - T T+),
/// sigma = +1. Every singular value of T must be <= 1 + tol.
DeviceSpec loss_device(const Matrix& transmission, double tol = global_tolerance());

/// Amplifying element: A = sqrt(T T+ - I), sigma = -1. Every singular value
/// of T must be >= 1 - tol.
DeviceSpec gain_device(const Matrix& transmission, double tol = global_tolerance());

/// The enlarged field+device map Lambda with metric J = diag(I, sigma I).
/// Lambda J Lambda+ = J: unitary for loss, pseudo-unitary for gain, and
/// Lambda^-1 = J Lambda+ J either way.
struct Dilation {
    Matrix lambda; // 2m x 2m
    Matrix metric; // J
    int sigma = +1;

    Index field_modes() const { return lambda.rows() / 2; }
};

/// Builds Lambda = [[T, A], [-sigma S C^-1 T, C S^-1 A]] with C = sqrt(T T+),
/// S = sqrt(A A+) and regularized inverses. Where the formula is 0/0 the map
/// is completed so that Lambda J Lambda+ = J holds exactly: the lower-right
/// block acts as the identity on the null space of A, and for sigma = +1 a
/// fully absorbed input direction is routed isometrically into the matching
/// device output (SVD pairing).
Dilation dilation(const DeviceSpec& spec, double tol = global_tolerance());

} // namespace qgls
