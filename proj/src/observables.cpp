#include "spinclock/observables.hpp"

#include <cmath>

namespace spinclock {

namespace {
void require_8x8(const ComplexMatrix& m, const char* who) {
    if (m.rows() != kDim || m.cols() != kDim)
        throw DimensionMismatch(std::string(who) + ": expected an 8x8 matrix");
}

// Built once: the observables are fixed operators of the model.
const ComplexMatrix& chi_op() {
    static const ComplexMatrix op = build_chirality_operator();
    return op;
}
const ComplexMatrix& current_op() {
    static const ComplexMatrix op = build_current_operator();
    return op;
}
} // namespace

Complex expectation(const ComplexMatrix& rho, const ComplexMatrix& op) {
    require_8x8(rho, "expectation");
    require_8x8(op, "expectation");
    return (rho * op).trace();
}

JointDistribution joint_distribution(const ComplexMatrix& rho) {
    require_8x8(rho, "joint_distribution");
    JointDistribution j;
    j.pp = (rho(0, 0) + rho(4, 4)).real();
    j.pm = (rho(1, 1) + rho(5, 5)).real();
    j.mp = (rho(2, 2) + rho(6, 6)).real();
    j.mm = (rho(3, 3) + rho(7, 7)).real();
    return j;
}

BlochVector bloch_vector(const ComplexMatrix& rho) {
    require_8x8(rho, "bloch_vector");
    BlochVector m;
    m.m1 = expectation(rho, register_op(sigma_factor(1))).real();
    m.m2 = expectation(rho, register_op(sigma_factor(2))).real();
    m.m3 = expectation(rho, register_op(sigma_factor(3))).real();
    return m;
}

ComplexMatrix partial_trace_register(const ComplexMatrix& rho) {
    require_8x8(rho, "partial_trace_register");
    ComplexMatrix out = ComplexMatrix::Zero(2, 2);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int k = 0; k < 4; ++k)
                out(a, b) += rho(4 * a + k, 4 * b + k);
    return out;
}

ComplexMatrix partial_trace_cursor(const ComplexMatrix& rho) {
    require_8x8(rho, "partial_trace_cursor");
    ComplexMatrix out = ComplexMatrix::Zero(4, 4);
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
            out(j, k) = rho(j, k) + rho(j + 4, k + 4);
    return out;
}

double von_neumann_entropy(const ComplexMatrix& rho) {
    if (rho.rows() != rho.cols())
        throw DimensionMismatch("von_neumann_entropy: expected a square matrix");
    double s = 0.0;
    for (double lambda : hermitian_eigenvalues(rho)) {
        if (lambda < -1e-8)
            throw NotAState("von_neumann_entropy: eigenvalue " + std::to_string(lambda) +
                            " below the positivity tolerance");
        if (lambda > 0.0)
            s -= lambda * std::log(lambda);
    }
    return s;
}

double chirality_mean(const ComplexMatrix& rho) {
    require_8x8(rho, "chirality_mean");
    const double full = expectation(rho, chi_op()).real();
    const double shortcut = 8.0 * rho(1, 6).imag();
    if (std::abs(full - shortcut) > 1e-8)
        throw IdentityViolation("chirality_mean: operator trace and 8 Im rho(2,7) disagree by " +
                                std::to_string(std::abs(full - shortcut)));
    return full;
}

double current_mean(const ComplexMatrix& rho) {
    require_8x8(rho, "current_mean");
    return expectation(rho, current_op()).real();
}

ObservableRecord observe(double t, const ComplexMatrix& rho) {
    require_8x8(rho, "observe");
    ObservableRecord r;
    r.t = t;
    r.joint = joint_distribution(rho);
    r.n3L = r.joint.pp + r.joint.pm;
    r.n3L1 = r.joint.pp + r.joint.mp;
    const BlochVector m = bloch_vector(rho);
    r.m1 = m.m1;
    r.m2 = m.m2;
    r.m3 = m.m3;
    r.current = current_mean(rho);
    r.chirality = chirality_mean(rho);
    r.s_reg = von_neumann_entropy(partial_trace_register(rho));
    r.s_cur = von_neumann_entropy(partial_trace_cursor(rho));
    r.s_tot = von_neumann_entropy(rho);
    return r;
}

} // namespace spinclock
