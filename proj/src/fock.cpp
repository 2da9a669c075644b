#include "qgls/fock.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qgls {

namespace {

struct ModeIndexer {
    Index dim;
    Index modes;

    Index stride(Index mode) const {
        Index s = 1;
        for (Index k = mode + 1; k < modes; ++k) s *= dim;
        return s;
    }
    Index digit(Index flat, Index mode) const { return (flat / stride(mode)) % dim; }
    Index total() const {
        Index t = 1;
        for (Index k = 0; k < modes; ++k) t *= dim;
        return t;
    }
};

void check_fock_mode(const FockState& state, Index mode) {
    if (mode < 0 || mode >= state.modes)
        throw Error(ErrorCode::DimensionMismatch,
                    "mode " + std::to_string(mode) + " out of range for " +
                        std::to_string(state.modes) + "-mode state");
}

double trace_deficit(const FockState& state) {
    double deficit = 1.0 - state.rho.trace().real();
    return deficit > 0.0 ? deficit : 0.0;
}

/// exp(G) for anti-Hermitian G, via the Hermitian eigenproblem of iG.
Matrix expm_antihermitian(const Matrix& g) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(Complex(0.0, 1.0) * g);
    Vector phases(solver.eigenvalues().size());
    for (Index i = 0; i < phases.size(); ++i)
        phases(i) = std::exp(Complex(0.0, -solver.eigenvalues()(i)));
    return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

/// Truncated displacement operator exp(alpha a+ - alpha* a).
Matrix displacement_operator(Complex alpha, Index dim) {
    Matrix g = Matrix::Zero(dim, dim);
    for (Index n = 0; n + 1 < dim; ++n) {
        double root = std::sqrt(static_cast<double>(n + 1));
        g(n + 1, n) += alpha * root;
        g(n, n + 1) -= std::conj(alpha) * root;
    }
    return expm_antihermitian(g);
}

// Single-mode channels in banded Kraus form. coeff[s](n') is the amplitude
// for the mode to go from level n' to n' + shift*s while the ancilla absorbs
// or supplies s quanta; shift is -1 for loss, +1 for gain.
struct BandedKraus {
    std::vector<RealVector> coeff;
    int shift = 0;
};

// Beam-splitter dilation restricted to the ancilla-vacuum column. The
// generator theta (a+g - a g+) conserves n + m, so each input level n' lives
// in its own block spanned by |n'-s, s>, s = 0..n'; exponentiate per block.
BandedKraus loss_kraus(Index dim, double theta) {
    BandedKraus kraus;
    kraus.shift = -1;
    kraus.coeff.assign(static_cast<size_t>(dim), RealVector::Zero(dim));
    for (Index level = 0; level < dim; ++level) {
        const Index size = level + 1;
        Matrix block = Matrix::Zero(size, size);
        for (Index s = 0; s + 1 < size; ++s) {
            double c = theta * std::sqrt(static_cast<double>((level - s) * (s + 1)));
            block(s + 1, s) = -c;
            block(s, s + 1) = c;
        }
        Matrix u = expm_antihermitian(block);
        for (Index s = 0; s < size; ++s)
            kraus.coeff[static_cast<size_t>(s)](level) = u(s, 0).real();
    }
    return kraus;
}

// Two-mode-squeezer dilation, ancilla-vacuum column. The generator
// r (a+g+ - a g) conserves n - m; block for input level n' is spanned by
// |n'+s, s>, s = 0..dim-1-n'.
BandedKraus gain_kraus(Index dim, double r) {
    BandedKraus kraus;
    kraus.shift = +1;
    kraus.coeff.assign(static_cast<size_t>(dim), RealVector::Zero(dim));
    for (Index level = 0; level < dim; ++level) {
        const Index size = dim - level;
        Matrix block = Matrix::Zero(size, size);
        for (Index s = 0; s + 1 < size; ++s) {
            double c = r * std::sqrt(static_cast<double>((level + s + 1) * (s + 1)));
            block(s + 1, s) = c;
            block(s, s + 1) = -c;
        }
        Matrix u = expm_antihermitian(block);
        for (Index s = 0; s < size; ++s)
            kraus.coeff[static_cast<size_t>(s)](level) = u(s, 0).real();
    }
    return kraus;
}

FockState apply_banded_kraus(const FockState& in, const BandedKraus& kraus, Index mode) {
    const ModeIndexer idx{in.dim, in.modes};
    const Index total = idx.total();
    const Index stride = idx.stride(mode);
    const Index d = in.dim;

    FockState out{in.dim, in.modes, Matrix::Zero(total, total)};
    for (Index s = 0; s < d; ++s) {
        const RealVector& c = kraus.coeff[static_cast<size_t>(s)];
        if (c.cwiseAbs().maxCoeff() == 0.0) continue;
        for (Index row = 0; row < total; ++row) {
            Index n_in = idx.digit(row, mode);
            Index n_out = n_in + kraus.shift * s;
            if (n_out < 0 || n_out >= d || c(n_in) == 0.0) continue;
            Index row_out = row + (n_out - n_in) * stride;
            for (Index col = 0; col < total; ++col) {
                Index m_in = idx.digit(col, mode);
                Index m_out = m_in + kraus.shift * s;
                if (m_out < 0 || m_out >= d || c(m_in) == 0.0) continue;
                Index col_out = col + (m_out - m_in) * stride;
                out.rho(row_out, col_out) += c(n_in) * c(m_in) * in.rho(row, col);
            }
        }
    }
    return out;
}

void check_incoming_leak(const FockState& state, double leak_bound, const char* channel) {
    double deficit = trace_deficit(state);
    if (deficit > leak_bound)
        throw Error(ErrorCode::TruncationOverflow,
                    std::string(channel) + ": input trace deficit " + std::to_string(deficit) +
                        " exceeds bound " + std::to_string(leak_bound) +
                        "; increase the truncation dimension");
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Vector coherent_vector(Complex alpha, Index dim) {
    Vector psi(dim);
    psi(0) = std::exp(-0.5 * std::norm(alpha));
    for (Index n = 1; n < dim; ++n)
        psi(n) = psi(n - 1) * alpha / std::sqrt(static_cast<double>(n));
    return psi;
}

} // namespace

TruncationReport truncation_report(const FockState& state) {
    const ModeIndexer idx{state.dim, state.modes};
    TruncationReport report;
    report.trace_deficit = trace_deficit(state);
    for (Index row = 0; row < state.size(); ++row) {
        double population = state.rho(row, row).real();
        for (Index k = 0; k < state.modes; ++k) {
            Index level = idx.digit(row, k);
            if (level == state.dim - 1 && population > 0.0)
                report.boundary_mass += population;
            if (population > 1e-12 && level > report.max_occupied)
                report.max_occupied = level;
        }
    }
    return report;
}

FockState coherent_fock(Complex alpha, Index dim) {
    Vector one(1);
    one(0) = alpha;
    return coherent_fock(one, dim);
}

FockState coherent_fock(const Vector& alpha, Index dim) {
    if (dim < 1) throw Error(ErrorCode::DomainError, "truncation dimension must be >= 1");
    if (alpha.size() < 1) throw Error(ErrorCode::DomainError, "need at least one mode");
    Vector psi = coherent_vector(alpha(0), dim);
    for (Index k = 1; k < alpha.size(); ++k) {
        Vector next = coherent_vector(alpha(k), dim);
        Vector joint(psi.size() * dim);
        for (Index i = 0; i < psi.size(); ++i)
            joint.segment(i * dim, dim) = psi(i) * next;
        psi = joint;
    }
    return FockState{dim, alpha.size(), psi * psi.adjoint()};
}

FockState displaced_thermal_fock(Complex alpha, double nbar, Index dim) {
    if (dim < 1) throw Error(ErrorCode::DomainError, "truncation dimension must be >= 1");
    if (nbar < 0.0)
        throw Error(ErrorCode::NegativeOccupation, "nbar must be >= 0, got " + std::to_string(nbar));
    Matrix rho = Matrix::Zero(dim, dim);
    double q = nbar / (nbar + 1.0);
    double p = 1.0 / (nbar + 1.0);
    for (Index n = 0; n < dim; ++n) {
        rho(n, n) = p;
        p *= q;
    }
    Matrix d = displacement_operator(alpha, dim);
    return FockState{dim, 1, d * rho * d.adjoint()};
}

FockState loss_channel_fock(const FockState& state, double t, Index mode, double leak_bound) {
    check_fock_mode(state, mode);
    if (!(t >= 0.0 && t <= 1.0))
        throw Error(ErrorCode::DomainError, "loss transmission must lie in [0, 1]");
    check_incoming_leak(state, leak_bound, "loss_channel_fock");
    if (t == 1.0) return state;
    // Total excitation is conserved and the ancilla starts empty, so every
    // block the input touches is complete: the truncated evolution is exact.
    BandedKraus kraus = loss_kraus(state.dim, std::acos(t));
    return apply_banded_kraus(state, kraus, mode);
}

FockState gain_channel_fock(const FockState& state, double g, Index mode, double leak_bound) {
    check_fock_mode(state, mode);
    if (!(g >= 1.0))
        throw Error(ErrorCode::DomainError, "gain must be >= 1, got " + std::to_string(g));
    check_incoming_leak(state, leak_bound, "gain_channel_fock");
    if (g == 1.0) return state;
    // The Kraus set is exactly trace-preserving: mass that would cross the
    // cutoff is reflected, not lost. The reflection artifact shows up as
    // boundary occupancy in truncation_report; the gate here is the
    // probability mass already missing from the input.
    BandedKraus kraus = gain_kraus(state.dim, std::acosh(g));
    return apply_banded_kraus(state, kraus, mode);
}

FockState phase_channel_fock(const FockState& state, double phi, Index mode) {
    check_fock_mode(state, mode);
    const ModeIndexer idx{state.dim, state.modes};
    FockState out = state;
    for (Index row = 0; row < state.size(); ++row)
        for (Index col = 0; col < state.size(); ++col)
            out.rho(row, col) *= std::exp(
                Complex(0.0, phi * static_cast<double>(idx.digit(row, mode) - idx.digit(col, mode))));
    return out;
}

FockState reduce_to_mode(const FockState& state, Index mode) {
    check_fock_mode(state, mode);
    if (state.modes == 1) return state;
    const ModeIndexer idx{state.dim, state.modes};
    const Index stride = idx.stride(mode);
    const Index d = state.dim;
    Matrix reduced = Matrix::Zero(d, d);
    // Flat index = outer * (d * stride) + level * stride + inner.
    const Index outer_count = idx.total() / (d * stride);
    for (Index outer = 0; outer < outer_count; ++outer)
        for (Index inner = 0; inner < stride; ++inner) {
            Index base = outer * d * stride + inner;
            for (Index n = 0; n < d; ++n)
                for (Index m = 0; m < d; ++m)
                    reduced(n, m) += state.rho(base + n * stride, base + m * stride);
        }
    return FockState{d, 1, reduced};
}

double wigner_fock(const FockState& state, Complex point, Index mode) {
    FockState single = reduce_to_mode(state, mode);
    Matrix d = displacement_operator(point, single.dim);
    Matrix shifted = d.adjoint() * single.rho * d;
    double parity_sum = 0.0;
    double sign = 1.0;
    for (Index n = 0; n < single.dim; ++n) {
        parity_sum += sign * shifted(n, n).real();
        sign = -sign;
    }
    return 2.0 / std::numbers::pi * parity_sum;
}

Vector mean_amplitude_fock(const FockState& state) {
    const ModeIndexer idx{state.dim, state.modes};
    Vector mean = Vector::Zero(state.modes);
    for (Index k = 0; k < state.modes; ++k) {
        Index stride = idx.stride(k);
        Complex acc = 0.0;
        // Tr[rho a_k] = sum_J sqrt(n_k(J)) rho[J, J - stride_k]
        for (Index col = 0; col < state.size(); ++col) {
            Index n = idx.digit(col, k);
            if (n >= 1) acc += std::sqrt(static_cast<double>(n)) * state.rho(col, col - stride);
        }
        mean(k) = acc;
    }
    return mean;
}

namespace {

// <a_j a_k> and <a_j+ a_k> over the truncated density matrix.
void second_moments(const FockState& state, Matrix& aa, Matrix& ada) {
    const ModeIndexer idx{state.dim, state.modes};
    const Index n_modes = state.modes;
    aa = Matrix::Zero(n_modes, n_modes);
    ada = Matrix::Zero(n_modes, n_modes);
    for (Index j = 0; j < n_modes; ++j) {
        for (Index k = 0; k < n_modes; ++k) {
            Index sj = idx.stride(j), sk = idx.stride(k);
            Complex acc_aa = 0.0, acc_ada = 0.0;
            // Tr[rho a_j a_k] = sum_J c(J) rho[J, J - s_k - s_j] and
            // Tr[rho a_j+ a_k] = sum_J c'(J) rho[J, J - s_k + s_j].
            for (Index col = 0; col < state.size(); ++col) {
                Index nk = idx.digit(col, k);
                if (nk < 1) continue;
                double ck = std::sqrt(static_cast<double>(nk));
                Index mid = col - sk;
                Index nj_mid = idx.digit(mid, j);
                if (nj_mid >= 1)
                    acc_aa += ck * std::sqrt(static_cast<double>(nj_mid)) *
                              state.rho(col, mid - sj);
                if (nj_mid + 1 < state.dim)
                    acc_ada += ck * std::sqrt(static_cast<double>(nj_mid + 1)) *
                               state.rho(col, mid + sj);
            }
            aa(j, k) = acc_aa;
            ada(j, k) = acc_ada;
        }
    }
}

} // namespace

RealMatrix covariance_fock(const FockState& state) {
    const Index n = state.modes;
    Vector mean = mean_amplitude_fock(state);
    Matrix aa, ada;
    second_moments(state, aa, ada);
    Matrix m2 = aa, n2 = ada;
    for (Index j = 0; j < n; ++j)
        for (Index k = 0; k < n; ++k) {
            m2(j, k) -= mean(j) * mean(k);
            n2(j, k) -= std::conj(mean(j)) * mean(k);
        }
    RealMatrix cov(2 * n, 2 * n);
    for (Index j = 0; j < n; ++j)
        for (Index k = 0; k < n; ++k) {
            double delta = j == k ? 1.0 : 0.0;
            cov(2 * j, 2 * k) = (2.0 * m2(j, k).real() + 2.0 * n2(j, k).real() + delta) / 4.0;
            cov(2 * j + 1, 2 * k + 1) =
                (-2.0 * m2(j, k).real() + 2.0 * n2(j, k).real() + delta) / 4.0;
            cov(2 * j, 2 * k + 1) = (m2(j, k).imag() + n2(j, k).imag()) / 2.0;
            cov(2 * j + 1, 2 * k) = (m2(j, k).imag() - n2(j, k).imag()) / 2.0;
        }
    return 0.5 * (cov + cov.transpose().eval());
}

double purity_fock(const FockState& state) { return state.rho.squaredNorm(); }

double mean_photon_fock(const FockState& state, Index mode) {
    check_fock_mode(state, mode);
    const ModeIndexer idx{state.dim, state.modes};
    double acc = 0.0;
    for (Index row = 0; row < state.size(); ++row)
        acc += static_cast<double>(idx.digit(row, mode)) * state.rho(row, row).real();
    return acc;
}

double fidelity_with_pure(const FockState& state, const Vector& psi) {
    if (psi.size() != state.size())
        throw Error(ErrorCode::DimensionMismatch, "reference vector size mismatch");
    return (psi.adjoint() * state.rho * psi)(0, 0).real();
}

ComparisonReport compare(const GaussianState& gaussian, const FockState& fock,
                         CompareTolerances tolerances, const std::vector<Complex>& points) {
    if (gaussian.modes() != fock.modes)
        throw Error(ErrorCode::DimensionMismatch,
                    "states have " + std::to_string(gaussian.modes()) + " vs " +
                        std::to_string(fock.modes) + " modes");
    ComparisonReport report;
    report.tolerances = tolerances;

    Vector fock_mean = mean_amplitude_fock(fock);
    report.mean_diff = (gaussian.mean() - fock_mean).cwiseAbs().maxCoeff();
    report.covariance_diff =
        (gaussian.covariance() - covariance_fock(fock)).cwiseAbs().maxCoeff();
    report.purity_diff = std::abs(purity(gaussian) - purity_fock(fock));

    for (Index k = 0; k < gaussian.modes(); ++k) {
        Complex center = gaussian.mean()(k);
        std::vector<Complex> mode_points = {Complex(0.0, 0.0), center, center + 0.5,
                                            center + Complex(0.0, 0.5)};
        mode_points.insert(mode_points.end(), points.begin(), points.end());
        for (Complex point : mode_points) {
            double diff = std::abs(wigner_value(gaussian, k, point) - wigner_fock(fock, point, k));
            report.wigner_points.emplace_back(point, diff);
            report.wigner_diff = std::max(report.wigner_diff, diff);
        }
    }
    report.passed = report.mean_diff <= tolerances.mean &&
                    report.covariance_diff <= tolerances.covariance &&
                    report.purity_diff <= tolerances.purity &&
                    report.wigner_diff <= tolerances.wigner;
    return report;
}

FockState run_pipeline_fock(const PipelineSpec& pipeline, Index dim, double leak_bound) {
    if (pipeline.input.alpha.size() != pipeline.modes)
        throw Error(ErrorCode::DimensionMismatch,
                    "input declares " + std::to_string(pipeline.input.alpha.size()) +
                        " amplitudes for " + std::to_string(pipeline.modes) + " modes");
    FockState state{dim, pipeline.modes, Matrix()};
    if (pipeline.input.kind == InputSpec::Kind::Coherent) {
        state = coherent_fock(pipeline.input.alpha, dim);
    } else {
        state = displaced_thermal_fock(pipeline.input.alpha(0), pipeline.input.nbar(0), dim);
        for (Index k = 1; k < pipeline.modes; ++k) {
            FockState next =
                displaced_thermal_fock(pipeline.input.alpha(k), pipeline.input.nbar(k), dim);
            state = FockState{dim, state.modes + 1, kron(state.rho, next.rho)};
        }
    }

    for (size_t i = 0; i < pipeline.elements.size(); ++i) {
        const ElementSpec& element = pipeline.elements[i];
        if (element.dimension() != 1 || element.modes.size() != 1)
            throw Error(ErrorCode::SemanticError,
                        "element " + std::to_string(i) + " (" + element.describe() +
                            "): the Fock oracle supports scalar single-mode elements only");
        Index mode = element.modes[0];
        Complex value = element.scalar ? Complex(element.value, 0.0) : element.matrix(0, 0);
        double magnitude = std::abs(value);
        double phase = std::arg(value);
        // Admissibility was validated at device level with tolerance slack;
        // snap magnitudes grazing the loss/gain boundary.
        if (element.kind == ElementSpec::Kind::Loss && magnitude > 1.0 && magnitude < 1.0 + 1e-9)
            magnitude = 1.0;
        if (element.kind == ElementSpec::Kind::Gain && magnitude < 1.0 && magnitude > 1.0 - 1e-9)
            magnitude = 1.0;
        if (phase != 0.0) state = phase_channel_fock(state, phase, mode);
        switch (element.kind) {
            case ElementSpec::Kind::Loss:
                state = loss_channel_fock(state, magnitude, mode, leak_bound);
                break;
            case ElementSpec::Kind::Gain:
                state = gain_channel_fock(state, magnitude, mode, leak_bound);
                break;
            case ElementSpec::Kind::Unitary:
                break; // phase already applied; |value| = 1 was validated upstream
        }
    }
    return state;
}

} // namespace qgls
