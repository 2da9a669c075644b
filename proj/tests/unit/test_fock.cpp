#include <doctest.h>

#include <numbers>

#include "qgls/fock.hpp"

using namespace qgls;

namespace {

constexpr double kTwoOverPi = 2.0 / std::numbers::pi;

FockState number_state(Index n, Index dim) {
    FockState state{dim, 1, Matrix::Zero(dim, dim)};
    state.rho(n, n) = 1.0;
    return state;
}

double trace_distance(const FockState& a, const FockState& b) {
    return 0.5 * (a.rho - b.rho).jacobiSvd().singularValues().sum();
}

} // namespace

TEST_CASE("coherent_fock basics") {
    FockState vacuum = coherent_fock(Complex(0.0, 0.0), 8);
    CHECK(std::abs(vacuum.rho(0, 0) - Complex(1.0, 0.0)) < 1e-15);
    CHECK(vacuum.rho.trace().real() == doctest::Approx(1.0));

    FockState big = coherent_fock(Complex(3.0, 3.0), 60);
    CHECK(truncation_report(big).trace_deficit < 1e-10);

    FockState two = coherent_fock(Complex(2.0, 0.0), 40);
    CHECK(mean_photon_fock(two, 0) == doctest::Approx(4.0).epsilon(1e-10));
    CHECK(std::abs(mean_amplitude_fock(two)(0) - Complex(2.0, 0.0)) < 1e-10);
    CHECK((covariance_fock(two) - 0.25 * RealMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() <
          1e-10);
}

TEST_CASE("single photon through a beam splitter") {
    FockState out = loss_channel_fock(number_state(1, 2), 2.0 / 3.0);
    CHECK(std::abs(out.rho(0, 0) - Complex(5.0 / 9.0, 0.0)) < 1e-10);
    CHECK(std::abs(out.rho(1, 1) - Complex(4.0 / 9.0, 0.0)) < 1e-10);
    CHECK(std::abs(out.rho(0, 1)) < 1e-12);
}

TEST_CASE("loss keeps coherent states coherent in the Fock picture") {
    FockState out = loss_channel_fock(coherent_fock(Complex(3.0, 3.0), 60), 2.0 / 3.0);
    Vector reference(60);
    reference.setZero();
    reference(0) = std::exp(-0.5 * std::norm(Complex(2.0, 2.0)));
    for (Index n = 1; n < 60; ++n)
        reference(n) = reference(n - 1) * Complex(2.0, 2.0) / std::sqrt(static_cast<double>(n));
    CHECK(fidelity_with_pure(out, reference) > 1.0 - 1e-8);
}

TEST_CASE("identity limits of both channels") {
    FockState state = coherent_fock(Complex(1.0, -0.5), 20);
    CHECK(trace_distance(loss_channel_fock(state, 1.0), state) == doctest::Approx(0.0));
    CHECK(trace_distance(gain_channel_fock(state, 1.0), state) == doctest::Approx(0.0));
}

TEST_CASE("vacuum through gain becomes a thermal state") {
    FockState out = gain_channel_fock(coherent_fock(Complex(0.0, 0.0), 40), 1.5);
    double nbar = 1.25;
    double p = 1.0 / (nbar + 1.0);
    CHECK(out.rho(0, 0).real() == doctest::Approx(4.0 / 9.0).epsilon(1e-8));
    for (Index n = 0; n < 10; ++n) {
        CHECK(out.rho(n, n).real() == doctest::Approx(p).epsilon(1e-7));
        p *= nbar / (nbar + 1.0);
    }
}

TEST_CASE("amplified coherent state gains the thermal photon number") {
    FockState out = gain_channel_fock(coherent_fock(Complex(2.0, 2.0), 80), 1.5);
    CHECK(std::abs(mean_amplitude_fock(out)(0) - Complex(3.0, 3.0)) < 1e-4);
    CHECK(mean_photon_fock(out, 0) == doctest::Approx(19.25).epsilon(1e-4));
}

TEST_CASE("channels preserve trace and positivity") {
    FockState state = coherent_fock(Complex(1.0, 1.0), 30);
    state = gain_channel_fock(state, 1.4);
    state = loss_channel_fock(state, 0.6);
    CHECK(state.rho.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
    Eigen::SelfAdjointEigenSolver<Matrix> solver(state.rho);
    CHECK(solver.eigenvalues().minCoeff() > -1e-10);
    CHECK((state.rho - state.rho.adjoint()).norm() < 1e-12);
}

TEST_CASE("loss channels compose multiplicatively") {
    FockState state = coherent_fock(Complex(1.0, 0.5), 25);
    FockState chained = loss_channel_fock(loss_channel_fock(state, 0.9), 0.7);
    FockState direct = loss_channel_fock(state, 0.9 * 0.7);
    CHECK(trace_distance(chained, direct) < 1e-8);
}

TEST_CASE("photon number scales by t^2 under loss") {
    FockState inputs[] = {coherent_fock(Complex(1.3, -0.4), 30), number_state(3, 30),
                          displaced_thermal_fock(Complex(0.8, 0.2), 0.6, 30)};
    for (const FockState& input : inputs) {
        double before = mean_photon_fock(input, 0);
        for (double t : {0.5, 0.85}) {
            double after = mean_photon_fock(loss_channel_fock(input, t), 0);
            CHECK(after == doctest::Approx(t * t * before).epsilon(1e-8));
        }
    }
}

TEST_CASE("displaced parity Wigner values") {
    CHECK(wigner_fock(coherent_fock(Complex(0.0, 0.0), 20), Complex(0.0, 0.0)) ==
          doctest::Approx(kTwoOverPi));
    CHECK(wigner_fock(number_state(1, 20), Complex(0.0, 0.0)) == doctest::Approx(-kTwoOverPi));

    // loss-then-gain output at its center: (2/pi)/3.5
    FockState state = coherent_fock(Complex(3.0, 3.0), 80);
    state = loss_channel_fock(state, 2.0 / 3.0);
    state = gain_channel_fock(state, 1.5);
    CHECK(wigner_fock(state, Complex(3.0, 3.0)) ==
          doctest::Approx(kTwoOverPi / 3.5).epsilon(1e-5));
}

TEST_CASE("gain then loss covariance, Fock cross-check of the Gaussian formula") {
    double t = 0.75;
    FockState state = coherent_fock(Complex(0.8, 0.0), 40);
    state = gain_channel_fock(state, 1.0 / t);
    state = loss_channel_fock(state, t);
    RealMatrix cov = covariance_fock(state);
    double v = (3.0 - 2.0 * t * t) / 4.0;
    CHECK((cov - v * RealMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-6);
    CHECK(std::abs(mean_amplitude_fock(state)(0) - Complex(0.8, 0.0)) < 1e-6);
}

TEST_CASE("compare agrees for independently built coherent states") {
    ComparisonReport report =
        compare(coherent_state(Complex(3.0, 3.0)), coherent_fock(Complex(3.0, 3.0), 60),
                CompareTolerances{1e-8, 1e-8, 1e-8, 1e-8});
    CHECK(report.passed);
}

TEST_CASE("compare validates the loss channel end to end") {
    GaussianState gauss = apply_device(coherent_state(Complex(3.0, 3.0)), loss(2.0 / 3.0), {0});
    FockState fock = loss_channel_fock(coherent_fock(Complex(3.0, 3.0), 60), 2.0 / 3.0);
    ComparisonReport report = compare(gauss, fock, CompareTolerances{1e-7, 1e-7, 1e-7, 1e-7});
    CHECK(report.passed);
}

TEST_CASE("compare rejects mismatched mode counts") {
    Vector alpha(2);
    alpha << Complex(0.0, 0.0), Complex(0.0, 0.0);
    CHECK_THROWS_AS(compare(coherent_state(alpha), coherent_fock(Complex(0.0, 0.0), 10)), Error);
}

TEST_CASE("multimode channel application against the Gaussian engine") {
    Vector alpha(2);
    alpha << Complex(1.0, 1.0), Complex(0.5, 0.0);
    GaussianState gauss = apply_device(coherent_state(alpha), loss(0.6), {1});
    FockState fock = loss_channel_fock(coherent_fock(alpha, 18), 0.6, 1);
    ComparisonReport report = compare(gauss, fock, CompareTolerances{1e-8, 1e-8, 1e-8, 1e-8});
    CHECK(report.passed);

    FockState reduced = reduce_to_mode(fock, 1);
    CHECK(reduced.modes == 1);
    CHECK(std::abs(mean_amplitude_fock(reduced)(0) - Complex(0.3, 0.0)) < 1e-10);
}

TEST_CASE("displaced thermal construction") {
    FockState state = displaced_thermal_fock(Complex(1.0, -1.0), 0.7, 40);
    CHECK(mean_photon_fock(state, 0) == doctest::Approx(2.0 + 0.7).epsilon(1e-9));
    CHECK(std::abs(mean_amplitude_fock(state)(0) - Complex(1.0, -1.0)) < 1e-9);
    CHECK(purity_fock(state) == doctest::Approx(1.0 / 2.4).epsilon(1e-9));
    CHECK_THROWS_AS(displaced_thermal_fock(Complex(0.0, 0.0), -0.5, 10), Error);
}

TEST_CASE("phase channel rotates the mean amplitude") {
    FockState state = coherent_fock(Complex(1.0, 0.0), 25);
    FockState rotated = phase_channel_fock(state, std::numbers::pi / 2.0);
    CHECK(std::abs(mean_amplitude_fock(rotated)(0) - Complex(0.0, 1.0)) < 1e-10);
}

TEST_CASE("truncation overflow on an undersized basis") {
    FockState cramped = coherent_fock(Complex(3.0, 3.0), 10);
    CHECK(truncation_report(cramped).trace_deficit > 0.9);
    try {
        loss_channel_fock(cramped, 0.5);
        FAIL("expected TruncationOverflow");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TruncationOverflow);
    }
}

TEST_CASE("run_pipeline_fock mirrors the channel sequence") {
    PipelineSpec pipeline;
    pipeline.modes = 1;
    pipeline.input.kind = InputSpec::Kind::Coherent;
    pipeline.input.alpha.resize(1);
    pipeline.input.alpha(0) = Complex(1.0, 0.5);
    ElementSpec element;
    element.kind = ElementSpec::Kind::Loss;
    element.scalar = true;
    element.value = 0.7;
    element.modes = {0};
    pipeline.elements = {element};

    FockState via_pipeline = run_pipeline_fock(pipeline, 30);
    FockState direct = loss_channel_fock(coherent_fock(Complex(1.0, 0.5), 30), 0.7);
    CHECK(trace_distance(via_pipeline, direct) < 1e-12);

    // matrix elements are out of the oracle's scope
    ElementSpec matrix_element;
    matrix_element.kind = ElementSpec::Kind::Loss;
    matrix_element.matrix = Matrix::Identity(2, 2) * 0.5;
    matrix_element.modes = {0, 1};
    pipeline.modes = 2;
    Vector alpha(2);
    alpha << Complex(0.1, 0.0), Complex(0.0, 0.0);
    pipeline.input.alpha = alpha;
    pipeline.elements = {matrix_element};
    try {
        run_pipeline_fock(pipeline, 8);
        FAIL("expected SemanticError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SemanticError);
    }
}
