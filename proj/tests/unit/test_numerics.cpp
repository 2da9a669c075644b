#include <doctest.h>

#include "qgls/numerics.hpp"

#include "test_support.hpp"

using namespace qgls;

TEST_CASE("hermitian_sqrt on identity and diagonal matrices") {
    Matrix id = Matrix::Identity(2, 2);
    CHECK((hermitian_sqrt(id) - id).norm() == doctest::Approx(0.0));

    Matrix diag = Matrix::Zero(2, 2);
    diag(0, 0) = 4.0;
    diag(1, 1) = 9.0;
    Matrix root = hermitian_sqrt(diag);
    CHECK(root(0, 0).real() == doctest::Approx(2.0));
    CHECK(root(1, 1).real() == doctest::Approx(3.0));
    CHECK(std::abs(root(0, 1)) < 1e-14);
}

TEST_CASE("hermitian_sqrt squares back to the input on random PSD matrices") {
    std::mt19937 rng(7101);
    for (int trial = 0; trial < 20; ++trial) {
        Index n = 2 + trial % 5;
        Matrix m = test::random_hermitian_psd(n, rng);
        Matrix r = hermitian_sqrt(m);
        CHECK((r - r.adjoint()).norm() < 1e-10 * std::max(1.0, m.norm()));
        CHECK((r * r - m).norm() < 1e-10 * std::max(1.0, spectral_norm(m)));
        // commutes with its argument
        CHECK((r * m - m * r).norm() < 1e-10 * std::max(1.0, m.norm()));
    }
}

TEST_CASE("square roots of commuting PSD matrices commute") {
    std::mt19937 rng(7102);
    for (int trial = 0; trial < 10; ++trial) {
        // Commuting pair: two polynomials of the same Hermitian seed.
        Matrix h = test::random_hermitian_psd(4, rng);
        Matrix m1 = h * h + 2.0 * h;
        Matrix m2 = 3.0 * h + Matrix::Identity(4, 4);
        Matrix r1 = hermitian_sqrt(m1);
        Matrix r2 = hermitian_sqrt(m2);
        CHECK((r1 * r2 - r2 * r1).norm() < 1e-9 * std::max(1.0, m1.norm() * m2.norm()));
    }
}

TEST_CASE("hermitian_sqrt rejects non-Hermitian and indefinite input") {
    Matrix skew(2, 2);
    skew << Complex(0, 0), Complex(1, 0), Complex(-1, 0), Complex(0, 0);
    CHECK_THROWS_AS(hermitian_sqrt(skew), Error);

    Matrix negative = -Matrix::Identity(2, 2);
    try {
        hermitian_sqrt(negative);
        FAIL("expected NegativeEigenvalue");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NegativeEigenvalue);
    }

    // Grazing negatives inside the clamp band are fine.
    Matrix grazing = -0.5e-10 * Matrix::Identity(2, 2);
    CHECK(hermitian_sqrt(grazing).norm() == doctest::Approx(0.0));
}

TEST_CASE("regularized_inverse on singular diagonal and identity") {
    Matrix diag = Matrix::Zero(2, 2);
    diag(0, 0) = 2.0;
    Matrix pinv = regularized_inverse(diag);
    CHECK(pinv(0, 0).real() == doctest::Approx(0.5));
    CHECK(std::abs(pinv(1, 1)) == doctest::Approx(0.0));

    Matrix id = Matrix::Identity(3, 3);
    CHECK((regularized_inverse(id) - id).norm() == doctest::Approx(0.0));
}

TEST_CASE("regularized_inverse satisfies the Penrose conditions") {
    std::mt19937 rng(7103);
    for (int trial = 0; trial < 12; ++trial) {
        Index n = 2 + trial % 4;
        Matrix m = test::random_hermitian_psd(n, rng);
        if (trial % 3 == 0) {
            // Project out a direction to make it genuinely singular.
            Matrix u = test::random_unitary(n, rng);
            Matrix p = Matrix::Identity(n, n) - u.col(0) * u.col(0).adjoint();
            m = p * m * p;
        }
        Matrix pinv = regularized_inverse(m);
        double scale = std::max(1.0, m.norm());
        CHECK((m * pinv * m - m).norm() < 1e-9 * scale);
        CHECK((pinv * m * pinv - pinv).norm() < 1e-9 * scale);
        CHECK(((m * pinv).adjoint() - m * pinv).norm() < 1e-9 * scale);
        CHECK(((pinv * m).adjoint() - pinv * m).norm() < 1e-9 * scale);
    }
}

TEST_CASE("quadrature representation multiplies like the complex map") {
    std::mt19937 rng(7104);
    Matrix a = test::random_complex(3, 3, rng);
    Matrix b = test::random_complex(3, 3, rng);
    CHECK((complex_to_quadrature(a * b) - complex_to_quadrature(a) * complex_to_quadrature(b))
              .norm() < 1e-12 * std::max(1.0, a.norm() * b.norm()));
}

TEST_CASE("QGLS_TOL fallback default is 1e-10") {
    // The test binary runs without QGLS_TOL set; see the CLI tests for the
    // override path.
    CHECK(global_tolerance() == doctest::Approx(1e-10));
}
