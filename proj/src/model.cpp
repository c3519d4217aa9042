#include "spinclock/model.hpp"

#include <cmath>

namespace spinclock {

namespace {
const Complex kI(0.0, 1.0);

ComplexMatrix eye2() { return ComplexMatrix::Identity(2, 2); }
} // namespace

void ModelParams::validate() const {
    if (!std::isfinite(theta) || !std::isfinite(epsilon) || !std::isfinite(mu))
        throw DomainError("ModelParams: parameters must be finite");
    if (epsilon < 0.0)
        throw DomainError("ModelParams: epsilon must be >= 0");
    if (mu < -1.0 || mu > 1.0)
        throw DomainError("ModelParams: mu must lie in [-1, 1]");
}

int basis_index(int sigma1, int tau3_L, int tau3_L1) {
    auto bit = [](int s, const char* what) {
        if (s != 1 && s != -1)
            throw DomainError(std::string("basis_index: ") + what + " must be +1 or -1");
        return s == 1 ? 0 : 1;
    };
    return 4 * bit(sigma1, "sigma1") + 2 * bit(tau3_L, "tau3_L") + bit(tau3_L1, "tau3_L1") + 1;
}

ComplexMatrix sigma_factor(int a) {
    ComplexMatrix m(2, 2);
    switch (a) {
    // sigma_1 eigenbasis: sigma_1 diagonal, sigma_3 becomes the flip matrix,
    // and sigma_2 picks up the signs that keep sigma_1 sigma_2 = i sigma_3.
    case 1: m << 1, 0, 0, -1; break;
    case 2: m << 0, kI, -kI, 0; break;
    case 3: m << 0, 1, 1, 0; break;
    default: throw DomainError("sigma_factor: component must be 1, 2 or 3");
    }
    return m;
}

ComplexMatrix tau_factor(int a) {
    ComplexMatrix m(2, 2);
    switch (a) {
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -kI, kI, 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw DomainError("tau_factor: component must be 1, 2 or 3");
    }
    return m;
}

ComplexMatrix tau_plus_factor() {
    ComplexMatrix m(2, 2);
    m << 0, 1, 0, 0;
    return m;
}

ComplexMatrix tau_minus_factor() {
    ComplexMatrix m(2, 2);
    m << 0, 0, 1, 0;
    return m;
}

ComplexMatrix rotation_factor(double theta) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = std::exp(-kI * theta / 2.0);
    m(1, 1) = std::exp(kI * theta / 2.0);
    return m;
}

ComplexMatrix register_op(const ComplexMatrix& op2) {
    return kron(op2, ComplexMatrix::Identity(4, 4));
}

ComplexMatrix site_op_L(const ComplexMatrix& op2) {
    return kron(eye2(), kron(op2, eye2()));
}

ComplexMatrix site_op_L1(const ComplexMatrix& op2) {
    return kron(eye2(), kron(eye2(), op2));
}

ComplexMatrix build_hamiltonian(const ModelParams& p) {
    p.validate();
    const ComplexMatrix u = rotation_factor(p.theta);
    // Forward hop L -> L+1 applies U; the matrix of tau_+(L+1) tau_-(L) in the
    // working basis is I2 (x) tau_- (x) tau_+.
    const ComplexMatrix forward = kron(u, kron(tau_minus_factor(), tau_plus_factor()));
    const ComplexMatrix backward = kron(u.adjoint(), kron(tau_plus_factor(), tau_minus_factor()));
    return -0.5 * forward - 0.5 * backward;
}

std::array<ComplexMatrix, 4> build_bath_operators(const ModelParams& p) {
    p.validate();
    const double inject_L = std::sqrt(p.epsilon * (1.0 - p.mu));
    const double absorb_L = std::sqrt(p.epsilon * (1.0 + p.mu));
    return {
        inject_L * site_op_L(tau_plus_factor()),
        absorb_L * site_op_L(tau_minus_factor()),
        absorb_L * site_op_L1(tau_plus_factor()),
        inject_L * site_op_L1(tau_minus_factor()),
    };
}

ComplexMatrix initial_state() {
    const ComplexMatrix reg =
        0.5 * (eye2() - sigma_factor(3)); // projector on sigma_3 = -1
    ComplexMatrix site_up = ComplexMatrix::Zero(2, 2);
    site_up(0, 0) = 1.0; // tau_3 = +1
    ComplexMatrix site_down = ComplexMatrix::Zero(2, 2);
    site_down(1, 1) = 1.0; // tau_3 = -1
    return kron(reg, kron(site_up, site_down));
}

ComplexMatrix build_current_operator() {
    const ComplexMatrix fwd = kron(eye2(), kron(tau_minus_factor(), tau_plus_factor()));
    const ComplexMatrix bwd = kron(eye2(), kron(tau_plus_factor(), tau_minus_factor()));
    return 0.5 * kI * (fwd - bwd);
}

ComplexMatrix build_chirality_operator() {
    ComplexMatrix chi = ComplexMatrix::Zero(kDim, kDim);
    // chi = sum_{abc} levi_civita(a,b,c) sigma_a tau_b(L) tau_c(L+1)
    constexpr int perm[6][4] = {{1, 2, 3, +1}, {1, 3, 2, -1}, {2, 3, 1, +1},
                                {2, 1, 3, -1}, {3, 1, 2, +1}, {3, 2, 1, -1}};
    for (const auto& q : perm)
        chi += static_cast<double>(q[3]) *
               kron(sigma_factor(q[0]), kron(tau_factor(q[1]), tau_factor(q[2])));
    return chi;
}

DensityMatrix::DensityMatrix(ComplexMatrix mat) : m(std::move(mat)) {
    if (m.rows() != kDim || m.cols() != kDim)
        throw DimensionMismatch("DensityMatrix: expected an 8x8 matrix");
}

void DensityMatrix::validate(double herm_tol, double trace_tol, double psd_tol) const {
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > herm_tol)
        throw NotAState("DensityMatrix: not Hermitian within tolerance");
    if (std::abs(m.trace() - Complex(1.0)) > trace_tol)
        throw NotAState("DensityMatrix: trace differs from 1 beyond tolerance");
    const ComplexMatrix sym = 0.5 * (m + m.adjoint());
    const auto ev = hermitian_eigenvalues(sym, 1e-9);
    if (ev.front() < -psd_tol)
        throw NotAState("DensityMatrix: negative eigenvalue beyond tolerance");
}

} // namespace spinclock
