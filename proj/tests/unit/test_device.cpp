#include <doctest.h>

#include "qgls/device.hpp"

#include "test_support.hpp"

using namespace qgls;

namespace {

Matrix scalar(double v) {
    Matrix m(1, 1);
    m(0, 0) = v;
    return m;
}

const double kRoot5 = std::sqrt(5.0);

} // namespace

TEST_CASE("validate_device accepts the canonical loss element") {
    DeviceSpec spec{scalar(2.0 / 3.0), scalar(kRoot5 / 3.0), +1};
    ValidationReport report = validate_device(spec);
    CHECK(report.passed);
    CHECK(report.constraint_residual < 1e-12);
    CHECK(report.singular_max == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("validate_device accepts a lossless identity") {
    DeviceSpec spec{Matrix::Identity(2, 2), Matrix::Zero(2, 2), +1};
    CHECK(validate_device(spec).passed);
}

TEST_CASE("validate_device rejects a gain element with the loss noise matrix") {
    // Correct noise for T = 3/2 would be sqrt(5)/2, not sqrt(5)/3.
    DeviceSpec spec{scalar(1.5), scalar(kRoot5 / 3.0), -1};
    ValidationReport report = validate_device(spec);
    CHECK_FALSE(report.passed);
    CHECK(report.constraint_residual == doctest::Approx(9.0 / 4.0 - 5.0 / 9.0 - 1.0));
}

TEST_CASE("validate_device rejects shape and sigma abuse") {
    CHECK_THROWS_AS(validate_device(DeviceSpec{Matrix::Identity(2, 2), Matrix::Zero(3, 3), +1}),
                    Error);
    try {
        validate_device(DeviceSpec{scalar(0.5), scalar(0.5), 2});
        FAIL("sigma = 2 must be rejected");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DomainError);
    }
}

TEST_CASE("loss_device derives the noise coupling") {
    DeviceSpec spec = loss_device(scalar(2.0 / 3.0));
    CHECK(spec.sigma == +1);
    CHECK(spec.noise(0, 0).real() == doctest::Approx(0.7453559925).epsilon(1e-9));
    CHECK(validate_device(spec).passed);

    CHECK(loss_device(Matrix::Identity(3, 3)).noise.norm() == doctest::Approx(0.0));

    std::mt19937 rng(41);
    Matrix u = test::random_unitary(2, rng);
    CHECK(loss_device(u).noise.norm() < 1e-9);
}

TEST_CASE("loss_device refuses amplifying input") {
    try {
        loss_device(scalar(1.2));
        FAIL("expected GainNotLoss");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::GainNotLoss);
    }
    // mixed loss/gain singular values belong in separate elements
    Matrix mixed = Matrix::Zero(2, 2);
    mixed(0, 0) = 0.5;
    mixed(1, 1) = 1.5;
    CHECK_THROWS_AS(loss_device(mixed), Error);
    CHECK_THROWS_AS(gain_device(mixed), Error);
}

TEST_CASE("gain_device derives the noise coupling") {
    DeviceSpec spec = gain_device(scalar(1.5));
    CHECK(spec.sigma == -1);
    CHECK(spec.noise(0, 0).real() == doctest::Approx(1.1180339887).epsilon(1e-9));
    CHECK(validate_device(spec).passed);

    CHECK(gain_device(Matrix::Identity(2, 2)).noise.norm() == doctest::Approx(0.0));

    Matrix two = Matrix::Zero(2, 2);
    two(0, 0) = 1.5;
    two(1, 1) = 2.0;
    DeviceSpec diag = gain_device(two);
    CHECK(diag.noise(0, 0).real() == doctest::Approx(kRoot5 / 2.0));
    CHECK(diag.noise(1, 1).real() == doctest::Approx(std::sqrt(3.0)));

    try {
        gain_device(scalar(0.5));
        FAIL("expected LossNotGain");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::LossNotGain);
    }
}

TEST_CASE("dilation of scalar loss is the expected rotation") {
    Dilation dil = dilation(loss_device(scalar(2.0 / 3.0)));
    Matrix expected(2, 2);
    expected << 2.0 / 3.0, kRoot5 / 3.0, -kRoot5 / 3.0, 2.0 / 3.0;
    CHECK((dil.lambda - expected).norm() < 1e-12);
    CHECK((dil.lambda * dil.lambda.adjoint() - Matrix::Identity(2, 2)).norm() < 1e-12);
    CHECK((dil.metric - Matrix::Identity(2, 2)).norm() == doctest::Approx(0.0));
}

TEST_CASE("dilation of scalar gain is pseudo-unitary with J = diag(1, -1)") {
    Dilation dil = dilation(gain_device(scalar(1.5)));
    Matrix expected(2, 2);
    expected << 1.5, kRoot5 / 2.0, kRoot5 / 2.0, 1.5;
    CHECK((dil.lambda - expected).norm() < 1e-12);
    CHECK(dil.metric(1, 1).real() == doctest::Approx(-1.0));
    Matrix defect = dil.lambda * dil.metric * dil.lambda.adjoint() - dil.metric;
    CHECK(defect.norm() < 1e-12);
}

TEST_CASE("dilation limits: lossless identity and full absorber") {
    Dilation ideal = dilation(loss_device(Matrix::Identity(2, 2)));
    CHECK((ideal.lambda - Matrix::Identity(4, 4)).norm() < 1e-12);

    Dilation absorber = dilation(loss_device(scalar(0.0)));
    Matrix swap(2, 2);
    swap << 0.0, 1.0, 1.0, 0.0;
    CHECK((absorber.lambda - swap).norm() < 1e-12);
}

TEST_CASE("dilation of a unitary device never mixes field and device modes") {
    std::mt19937 rng(42);
    Matrix u = test::random_unitary(3, rng);
    Dilation dil = dilation(loss_device(u));
    CHECK((dil.lambda.topLeftCorner(3, 3) - u).norm() < 1e-12);
    CHECK(dil.lambda.topRightCorner(3, 3).norm() < 1e-12);
    CHECK(dil.lambda.bottomLeftCorner(3, 3).norm() < 1e-12);
    CHECK((dil.lambda.bottomRightCorner(3, 3) - Matrix::Identity(3, 3)).norm() < 1e-12);
}

TEST_CASE("pseudo-unitarity holds for random admissible devices") {
    std::mt19937 rng(43);
    for (int trial = 0; trial < 60; ++trial) {
        Index n = 1 + trial % 4;
        bool edges = trial % 5 == 0;
        int sigma = trial % 2 == 0 ? +1 : -1;
        Matrix t = sigma == +1 ? test::random_transmission(n, 0.0, 1.0, rng, edges)
                               : test::random_transmission(n, 1.0, 2.5, rng, edges);
        DeviceSpec spec = sigma == +1 ? loss_device(t) : gain_device(t);
        Dilation dil = dilation(spec);

        Matrix defect = dil.lambda * dil.metric * dil.lambda.adjoint() - dil.metric;
        CHECK(defect.norm() < 1e-9);

        Matrix inverse_defect =
            dil.lambda.inverse() - dil.metric * dil.lambda.adjoint() * dil.metric;
        CHECK(inverse_defect.norm() < 1e-9);

        if (sigma == +1)
            CHECK((dil.lambda * dil.lambda.adjoint() -
                   Matrix::Identity(2 * n, 2 * n)).norm() < 1e-9);
    }
}

TEST_CASE("dilation rejects an inadmissible pair") {
    try {
        dilation(DeviceSpec{scalar(1.5), scalar(kRoot5 / 3.0), -1});
        FAIL("expected ConstraintViolated");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ConstraintViolated);
    }
}
