#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "spinclock/liouvillian.hpp"

using namespace spinclock;
using namespace std::complex_literals;

namespace {

constexpr double kPi = 3.14159265358979323846;

ComplexMatrix random_hermitian8(unsigned seed) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexMatrix m(8, 8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            m(i, j) = Complex(u(gen), u(gen));
    return (m + m.adjoint()).eval() / 2.0;
}

// worst-case distance under a greedy nearest-neighbour multiset assignment
double multiset_mismatch(std::vector<Complex> a, std::vector<Complex> b) {
    double worst = 0.0;
    for (const Complex& x : a) {
        std::size_t best = 0;
        double dist = 1e300;
        for (std::size_t i = 0; i < b.size(); ++i)
            if (std::abs(x - b[i]) < dist) {
                dist = std::abs(x - b[i]);
                best = i;
            }
        worst = std::max(worst, dist);
        b.erase(b.begin() + static_cast<long>(best));
    }
    return worst;
}

std::vector<Complex> eigenvalues_of(const ComplexMatrix& m) {
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, /*computeEigenvectors=*/false);
    std::vector<Complex> out(static_cast<std::size_t>(m.rows()));
    for (int i = 0; i < m.rows(); ++i)
        out[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    return out;
}

} // namespace

TEST_CASE("vectorization index maps round-trip") {
    for (int j = 1; j <= 8; ++j)
        for (int k = 1; k <= 8; ++k) {
            const int pos = Superoperator::vec_index(j, k);
            CHECK(pos == 8 * (j - 1) + (k - 1));
            const auto [jj, kk] = Superoperator::unvec_index(pos);
            CHECK(jj == j);
            CHECK(kk == k);
        }
    const ComplexMatrix m = random_hermitian8(5);
    CHECK((unvec(vec(m)) - m).cwiseAbs().maxCoeff() == 0.0);
    CHECK(std::abs(vec(m)(Superoperator::vec_index(3, 7)) - m(2, 6)) == 0.0);
}

TEST_CASE("assembled generator reproduces the master-equation right side") {
    const ModelParams p{kPi / 2, 0.1, -1.0};
    const Superoperator s = assemble(p);
    const ComplexMatrix h = build_hamiltonian(p);
    const auto baths = build_bath_operators(p);
    const ComplexMatrix rho = random_hermitian8(17);

    ComplexMatrix rhs = -1.0i * (h * rho - rho * h);
    for (const auto& l : baths) {
        const ComplexMatrix ldl = l.adjoint() * l;
        rhs += l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
    }
    CHECK((unvec(s.matrix * vec(rho)) - rhs).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("generator preserves the trace") {
    for (const ModelParams p :
         {ModelParams{kPi / 2, 0.1, -1.0}, ModelParams{0.3, 1.0, 0.7}, ModelParams{0.0, 0.05, 0.0}}) {
        const Superoperator s = assemble(p);
        const ComplexVector id_row = vec(ComplexMatrix::Identity(8, 8));
        CHECK((id_row.transpose() * s.matrix).cwiseAbs().maxCoeff() <= 1e-14);
    }
}

TEST_CASE("closed-system generator is the pure commutator") {
    const ModelParams p{1.1, 0.0, 0.0};
    const Superoperator s = assemble(p);
    const ComplexMatrix h = build_hamiltonian(p);
    const ComplexMatrix rho = random_hermitian8(23);
    const ComplexMatrix want = -1.0i * (h * rho - rho * h);
    CHECK((unvec(s.matrix * vec(rho)) - want).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("sector pair maps address the right matrix elements") {
    using Sector = BlockSystem::Sector;
    CHECK(BlockSystem::pair_of(Sector::PlusPlus, 0) == std::pair<int, int>{1, 1});
    CHECK(BlockSystem::pair_of(Sector::PlusPlus, 6) == std::pair<int, int>{2, 3});
    CHECK(BlockSystem::pair_of(Sector::MinusMinus, 15) == std::pair<int, int>{8, 8});
    CHECK(BlockSystem::pair_of(Sector::PlusMinus, 1) == std::pair<int, int>{1, 6});
    CHECK(BlockSystem::pair_of(Sector::MinusPlus, 4) == std::pair<int, int>{6, 1});
}

TEST_CASE("block extraction: no cross-sector coupling, mirror symmetries") {
    const double th = kPi / 2;
    const ModelParams p{th, 0.1, -1.0};
    const Superoperator s = assemble(p);
    BlockSystem blocks;
    CHECK_NOTHROW(blocks = split_blocks(s, 1e-14));

    // theta -> -theta maps the (+,+) block onto the (-,-) block
    const BlockSystem mirrored = split_blocks(assemble({-th, 0.1, -1.0}));
    CHECK((blocks.mmm - mirrored.mpp).cwiseAbs().maxCoeff() <= 1e-14);

    // Hermitian conjugation: M-+[perm(p),perm(q)] = conj(M+-[p,q]) with
    // perm(4a+b) = 4b+a (the (j,k) -> (k,j) index swap)
    auto perm = [](int x) { return 4 * (x % 4) + x / 4; };
    double dev = 0.0;
    for (int pq = 0; pq < 16; ++pq)
        for (int q = 0; q < 16; ++q)
            dev = std::max(dev, std::abs(blocks.mmp(perm(pq), perm(q)) -
                                         std::conj(blocks.mpm(pq, q))));
    CHECK(dev <= 1e-14);
}

TEST_CASE("an injected cross-sector entry is flagged") {
    Superoperator s = assemble({kPi / 2, 0.1, -1.0});
    // (1,1) lives in the (+,+) sector, (1,5) in (+,-)
    s.matrix(Superoperator::vec_index(1, 1), Superoperator::vec_index(1, 5)) = 1e-6;
    CHECK_THROWS_AS(split_blocks(s), BlockLeakage);
}

TEST_CASE("closed-form occupation-sector roots match the numerical spectrum") {
    for (const ModelParams p : {ModelParams{kPi / 2, 0.1, 0.0}, ModelParams{kPi / 2, 0.1, -1.0},
                                ModelParams{kPi, 0.5, 0.7}, ModelParams{0.9, 1.0, 1.0}}) {
        const BlockSystem blocks = split_blocks(assemble(p));
        const auto roots = mpp_charpoly_roots(p);
        const std::vector<Complex> closed(roots.begin(), roots.end());
        CHECK(multiset_mismatch(closed, eigenvalues_of(blocks.mpp)) <= 1e-8);

        Complex sum = 0.0;
        for (const Complex& r : roots)
            sum += r;
        CHECK(std::abs(sum - blocks.mpp.trace()) <= 1e-10);
    }
}

TEST_CASE("root list collapses correctly in the decoupled limit") {
    const auto roots = mpp_charpoly_roots({0.3, 0.0, 0.0});
    int zeros = 0, plus_i = 0, minus_i = 0, plus_half = 0, minus_half = 0;
    for (const Complex& r : roots) {
        if (std::abs(r) <= 1e-12)
            ++zeros;
        else if (std::abs(r - 1.0i) <= 1e-12)
            ++plus_i;
        else if (std::abs(r + 1.0i) <= 1e-12)
            ++minus_i;
        else if (std::abs(r - 0.5i) <= 1e-12)
            ++plus_half;
        else if (std::abs(r + 0.5i) <= 1e-12)
            ++minus_half;
    }
    CHECK(zeros == 6);
    CHECK(plus_i == 1);
    CHECK(minus_i == 1);
    CHECK(plus_half == 4);
    CHECK(minus_half == 4);
}

TEST_CASE("slow coherence eigenvalues at the strong-coupling point") {
    const OmegaSet ws = omega_eigenvalues({kPi / 10, 1.0, -1.0});
    CHECK(!ws.degenerate);
    CHECK(ws.match_residual <= 1e-8);
    const Complex expect[4] = {{-3.9942708395155928, 0.062652816886885593},
                               {-2.1256411075401975, -0.99447297287673642},
                               {-1.8743588924598025, 0.99447297287673642},
                               {-0.0057291604844071919, -0.062652816886885593}};
    for (int i = 0; i < 4; ++i)
        CHECK(std::abs(ws.omegas[i] - expect[i]) <= 1e-12);
    for (const Complex& w : ws.omegas)
        CHECK(w.real() <= 1e-12);
}

TEST_CASE("doubled eigenvalues really have multiplicity two") {
    const ModelParams p{kPi / 10, 1.0, -1.0};
    const OmegaSet ws = omega_eigenvalues(p);
    const auto ev = eigenvalues_of(split_blocks(assemble(p)).mpm);
    for (const Complex& z : ws.zetas) {
        int close = 0;
        for (const Complex& lam : ev)
            if (std::abs(z - lam) < 1e-6)
                ++close;
        CHECK(close >= 2);
    }
}

TEST_CASE("degeneracy is flagged where the coherence spectrum collides") {
    CHECK(omega_eigenvalues({kPi, 0.1, 0.0}).degenerate);  // gap closes at theta = pi, mu = 0
    CHECK(omega_eigenvalues({kPi, 0.5, 0.0}).degenerate);  // fourfold collision
    CHECK(!omega_eigenvalues({kPi / 2, 0.1, -1.0}).degenerate);
    CHECK(!omega_eigenvalues({0.0, 0.1, -1.0}).degenerate); // zero mode, but gaps stay open
}

TEST_CASE("relaxation scales") {
    CHECK_THROWS_AS(relaxation_times({kPi / 2, 0.0, 0.0}), DomainError);

    const RelaxationTimes rt = relaxation_times({kPi / 2, 0.1, -1.0});
    CHECK(std::abs(rt.cursor_time - 5.0) <= 1e-15);
    CHECK(rt.register_time > 0.0);

    const RelaxationTimes slow = relaxation_times({kPi / 10, 1.0, -1.0});
    CHECK(std::abs(slow.register_time - 1.0 / 0.0057291604844071919) <= 1e-6);

    // at theta = 0 a coherence mode is conserved: no finite register scale
    CHECK(std::isinf(relaxation_times({0.0, 0.1, -1.0}).register_time));
}

TEST_CASE("printed coherence-sector characteristic polynomial matches the determinant") {
    const std::vector<Complex> samples{1.0, 1.0i, Complex(-0.2 + 0.3, 0.0),
                                       Complex(0.5, -0.25), Complex(-1.0, 1.0)};
    CHECK(verify_mpm_charpoly({kPi / 2, 0.1, -1.0}, samples) <= 1e-8);
    CHECK(verify_mpm_charpoly({kPi / 10, 1.0, -1.0}, samples) <= 1e-8);
    CHECK(verify_mpm_charpoly({1.3, 0.0, 0.0}, samples) <= 1e-10); // closed-system reduction

    // any eigenvalue of the block is a root
    const ModelParams p{kPi / 2, 0.1, -1.0};
    const auto ev = eigenvalues_of(split_blocks(assemble(p)).mpm);
    CHECK(verify_mpm_charpoly(p, {ev[0], ev[5]}) <= 1e-8);
}

TEST_CASE("only the occupation sectors carry a stationary mode") {
    const ModelParams p{kPi / 2, 0.1, -1.0};
    const BlockSystem blocks = split_blocks(assemble(p));
    auto min_abs = [](const std::vector<Complex>& v) {
        double best = 1e300;
        for (const Complex& x : v)
            best = std::min(best, std::abs(x));
        return best;
    };
    CHECK(min_abs(eigenvalues_of(blocks.mpp)) <= 1e-10);
    CHECK(min_abs(eigenvalues_of(blocks.mmm)) <= 1e-10);
    CHECK(min_abs(eigenvalues_of(blocks.mpm)) > 1e-9);
    CHECK(min_abs(eigenvalues_of(blocks.mmp)) > 1e-9);
}
