#include "spinclock/liouvillian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spinclock {

namespace {
const Complex kI(0.0, 1.0);

std::array<int, 16> sector_positions(BlockSystem::Sector s) {
    std::array<int, 16> idx{};
    for (int p = 0; p < 16; ++p) {
        auto [j, k] = BlockSystem::pair_of(s, p);
        idx[p] = Superoperator::vec_index(j, k);
    }
    return idx;
}

ComplexMatrix extract(const ComplexMatrix& m, const std::array<int, 16>& idx) {
    ComplexMatrix out(16, 16);
    for (int r = 0; r < 16; ++r)
        for (int c = 0; c < 16; ++c)
            out(r, c) = m(idx[r], idx[c]);
    return out;
}

bool complex_less(const Complex& a, const Complex& b) {
    if (a.real() != b.real())
        return a.real() < b.real();
    return a.imag() < b.imag();
}
} // namespace

int Superoperator::vec_index(int j, int k) {
    if (j < 1 || j > kDim || k < 1 || k > kDim)
        throw DimensionMismatch("vec_index: indices must lie in 1..8");
    return kDim * (j - 1) + (k - 1);
}

std::pair<int, int> Superoperator::unvec_index(int pos) {
    if (pos < 0 || pos >= dim)
        throw DimensionMismatch("unvec_index: position must lie in 0..63");
    return {pos / kDim + 1, pos % kDim + 1};
}

ComplexVector vec(const ComplexMatrix& rho) {
    if (rho.rows() != kDim || rho.cols() != kDim)
        throw DimensionMismatch("vec: expected an 8x8 matrix");
    ComplexVector v(Superoperator::dim);
    for (int j = 0; j < kDim; ++j)
        for (int k = 0; k < kDim; ++k)
            v(kDim * j + k) = rho(j, k);
    return v;
}

ComplexMatrix unvec(const ComplexVector& v) {
    if (v.size() != Superoperator::dim)
        throw DimensionMismatch("unvec: expected a 64-vector");
    ComplexMatrix rho(kDim, kDim);
    for (int j = 0; j < kDim; ++j)
        for (int k = 0; k < kDim; ++k)
            rho(j, k) = v(kDim * j + k);
    return rho;
}

Superoperator assemble(const ComplexMatrix& hamiltonian,
                       const std::array<ComplexMatrix, 4>& baths) {
    if (hamiltonian.rows() != kDim || hamiltonian.cols() != kDim)
        throw DimensionMismatch("assemble: Hamiltonian must be 8x8");
    const ComplexMatrix id = ComplexMatrix::Identity(kDim, kDim);

    ComplexMatrix s =
        -kI * (kron(hamiltonian, id) - kron(id, hamiltonian.transpose()));
    for (const auto& L : baths) {
        if (L.rows() != kDim || L.cols() != kDim)
            throw DimensionMismatch("assemble: bath operators must be 8x8");
        const ComplexMatrix ldl = L.adjoint() * L;
        s += kron(L, L.conjugate()) -
             0.5 * (kron(ldl, id) + kron(id, ldl.transpose()));
    }
    return Superoperator{std::move(s)};
}

Superoperator assemble(const ModelParams& p) {
    return assemble(build_hamiltonian(p), build_bath_operators(p));
}

std::pair<int, int> BlockSystem::pair_of(Sector s, int p) {
    if (p < 0 || p >= 16)
        throw DimensionMismatch("pair_of: position must lie in 0..15");
    const int a = p / 4, b = p % 4;
    switch (s) {
    case Sector::PlusPlus: return {a + 1, b + 1};
    case Sector::MinusMinus: return {a + 5, b + 5};
    case Sector::PlusMinus: return {a + 1, b + 5};
    case Sector::MinusPlus: return {a + 5, b + 1};
    }
    throw DomainError("pair_of: unknown sector");
}

BlockSystem split_blocks(const Superoperator& s, double leak_tol) {
    using Sector = BlockSystem::Sector;
    const std::array<std::array<int, 16>, 4> idx = {
        sector_positions(Sector::PlusPlus), sector_positions(Sector::MinusMinus),
        sector_positions(Sector::PlusMinus), sector_positions(Sector::MinusPlus)};

    double leak = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            if (a == b)
                continue;
            for (int r : idx[a])
                for (int c : idx[b])
                    leak = std::max(leak, std::abs(s.matrix(r, c)));
        }
    if (leak > leak_tol)
        throw BlockLeakage("split_blocks: generator couples distinct sigma_1 sectors");

    return BlockSystem{extract(s.matrix, idx[0]), extract(s.matrix, idx[1]),
                       extract(s.matrix, idx[2]), extract(s.matrix, idx[3])};
}

std::array<Complex, 16> mpp_charpoly_roots(const ModelParams& p) {
    p.validate();
    const double e = p.epsilon;
    std::array<Complex, 16> roots;
    int n = 0;
    roots[n++] = 0.0;
    roots[n++] = Complex(-2 * e, 1.0);
    roots[n++] = Complex(-2 * e, -1.0);
    roots[n++] = -4 * e;
    for (int i = 0; i < 4; ++i)
        roots[n++] = -2 * e;
    for (double sign : {+1.0, -1.0}) {
        // x^2 + 4 e x + 3 e^2 + sign e mu + 1/4, roots -2e +- sqrt(e^2 - sign e mu - 1/4)
        const Complex d = std::sqrt(Complex(e * e - sign * e * p.mu - 0.25));
        roots[n++] = -2 * e + d;
        roots[n++] = -2 * e + d;
        roots[n++] = -2 * e - d;
        roots[n++] = -2 * e - d;
    }
    return roots;
}

OmegaSet omega_eigenvalues(const ModelParams& p) {
    p.validate();
    const double e = p.epsilon, mu = p.mu, th = p.theta;

    OmegaSet out;
    const Complex inner =
        1.0 + 16 * std::pow(e, 4) - 8 * e * e * mu * mu +
        8 * e * e * (std::cos(th) + mu * mu * std::cos(th) + 2.0 * kI * mu * std::sin(th));
    const Complex inner_sqrt = std::sqrt(inner);
    int n = 0;
    for (double s1 : {+1.0, -1.0})
        for (double s2 : {+1.0, -1.0})
            out.omegas[n++] =
                -2 * e + s1 * std::sqrt(Complex(4 * e * e - 1) + s2 * inner_sqrt) / std::sqrt(2.0);

    const Complex eith = std::exp(kI * th);
    const Complex zeta_inner = std::sqrt(eith * e * e * std::pow(mu - 1.0 + eith * (mu + 1.0), 2));
    n = 0;
    for (double s1 : {+1.0, -1.0})
        for (double s2 : {+1.0, -1.0})
            out.zetas[n++] = -2 * e + s1 * (std::exp(-kI * th) / 2.0) *
                                          std::sqrt(eith * eith * (4 * e * e - 1) + s2 * 2.0 * eith * zeta_inner);

    std::sort(out.omegas.begin(), out.omegas.end(), complex_less);
    std::sort(out.zetas.begin(), out.zetas.end(), complex_less);

    out.min_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            out.min_gap = std::min(out.min_gap, std::abs(out.omegas[i] - out.omegas[j]));
    out.degenerate = out.min_gap < 1e-6;

    // The sign enumeration fixes the candidate set but not which branch the
    // assembled block realizes; matching against its numerical spectrum makes
    // the formula self-validating.
    const BlockSystem blocks = split_blocks(assemble(p));
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(blocks.mpm, /*computeEigenvectors=*/false);
    const ComplexVector& spec = solver.eigenvalues();
    out.match_residual = 0.0;
    auto nearest = [&spec](const Complex& x) {
        double best = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < spec.size(); ++i)
            best = std::min(best, std::abs(x - spec(i)));
        return best;
    };
    for (const Complex& w : out.omegas)
        out.match_residual = std::max(out.match_residual, nearest(w));
    for (const Complex& z : out.zetas)
        out.match_residual = std::max(out.match_residual, nearest(z));
    return out;
}

RelaxationTimes relaxation_times(const ModelParams& p) {
    p.validate();
    if (p.epsilon <= 0.0)
        throw DomainError("relaxation_times: requires epsilon > 0");
    const OmegaSet ws = omega_eigenvalues(p);
    double max_re = -std::numeric_limits<double>::infinity();
    for (const Complex& w : ws.omegas)
        max_re = std::max(max_re, w.real());
    RelaxationTimes t;
    // max Re omega = 0 happens at theta = 0, where a register coherence mode
    // is conserved and the register never relaxes; report that as an infinite
    // scale rather than 1/roundoff.
    t.register_time = std::abs(max_re) < 1e-12 ? std::numeric_limits<double>::infinity()
                                               : 1.0 / std::abs(max_re);
    t.cursor_time = 1.0 / (2.0 * p.epsilon);
    return t;
}

double verify_mpm_charpoly(const ModelParams& p, const std::vector<Complex>& samples) {
    p.validate();
    const BlockSystem blocks = split_blocks(assemble(p));
    const OmegaSet ws = omega_eigenvalues(p);
    const double e = p.epsilon, mu = p.mu, th = p.theta;

    double worst = 0.0;
    for (const Complex& x : samples) {
        const Complex det_num =
            (blocks.mpm - x * ComplexMatrix::Identity(16, 16)).partialPivLu().determinant();

        Complex bracket =
            1.0 +
            8.0 * (2.0 * std::pow(x, 4) + 16.0 * e * std::pow(x, 3) +
                   (1.0 + 44.0 * e * e) * x * x + 4.0 * (e + 12.0 * std::pow(e, 3)) * x +
                   e * e * (4.0 + 18.0 * e * e - mu * mu)) -
            8.0 * e * e * ((1.0 + mu * mu) * std::cos(th) + 2.0 * kI * mu * std::sin(th));
        Complex det_cf = std::pow(x + 2.0 * e, 4) * bracket * bracket / 256.0;
        for (const Complex& w : ws.omegas)
            det_cf *= x - w;

        worst = std::max(worst, std::abs(det_num - det_cf) / std::max(1.0, std::abs(det_num)));
    }
    return worst;
}

} // namespace spinclock
