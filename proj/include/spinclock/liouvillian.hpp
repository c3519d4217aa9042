#pragma once

#include <array>
#include <utility>
#include <vector>

#include "spinclock/model.hpp"

namespace spinclock {

/// The master-equation generator as a 64x64 matrix acting on row-major
/// vectorized density matrices:
///
///   vec(rho)[8 (j-1) + (k-1)] = rho(j,k)        (1-based j, k)
///   d vec(rho)/dt = matrix * vec(rho)
///
/// With this convention vec(A rho B) = (A (x) B^T) vec(rho), so
///   matrix = -i (H (x) I - I (x) H^T)
///          + sum_j [ L_j (x) conj(L_j) - 1/2 (L_j^+ L_j (x) I + I (x) (L_j^+ L_j)^T) ].
struct Superoperator {
    static constexpr int dim = 64;

    ComplexMatrix matrix;

    /// Row-major position of element (j,k), 1-based.
    static int vec_index(int j, int k);
    /// Inverse of vec_index; returns 1-based (j,k).
    static std::pair<int, int> unvec_index(int pos);
};

/// Row-major vectorization of an 8x8 matrix and its inverse.
ComplexVector vec(const ComplexMatrix& rho);
ComplexMatrix unvec(const ComplexVector& v);

/// Assemble the generator from a Hamiltonian and jump operators.
Superoperator assemble(const ComplexMatrix& hamiltonian,
                       const std::array<ComplexMatrix, 4>& baths);
Superoperator assemble(const ModelParams& p);

/// The generator never couples the four sectors defined by the sign of
/// sigma_1 on each side of the matrix element: (+,+) for 1<=j,k<=4, (-,-) for
/// 5<=j,k<=8, and the coherence sectors (+,-) / (-,+).  Each sector evolves
/// under its own 16x16 block, extracted here in row-major pair order.
struct BlockSystem {
    ComplexMatrix mpp, mmm, mpm, mmp;

    enum class Sector { PlusPlus, MinusMinus, PlusMinus, MinusPlus };
    /// The (j,k) pairs (1-based) addressed by row p of a sector's block.
    static std::pair<int, int> pair_of(Sector s, int p);
};

/// Extract the four blocks.  Throws BlockLeakage if any cross-sector entry of
/// the generator exceeds leak_tol.
BlockSystem split_blocks(const Superoperator& s, double leak_tol = 1e-12);

/// The sixteen closed-form eigenvalues of the (+,+) block, with multiplicity:
/// {0, -2e +- i, -4e, -2e (x4), -2e +- sqrt(e^2 + e mu - 1/4) (x2 each),
///  -2e +- sqrt(e^2 - e mu - 1/4) (x2 each)}.
std::array<Complex, 16> mpp_charpoly_roots(const ModelParams& p);

/// The four eigenvalues omega of the (+,-) block that drive the canonical
/// solution, plus the remaining closed-form eigenvalues zeta (multiplicity 2
/// each).  Candidates are produced by enumerating both signs of both nested
/// principal square roots and are matched against the numerical spectrum of
/// the assembled block; match_residual records the worst distance.
struct OmegaSet {
    std::array<Complex, 4> omegas; // sorted by (Re, Im) ascending
    std::array<Complex, 4> zetas;  // sorted by (Re, Im) ascending
    double min_gap = 0.0;          // min pairwise |omega_i - omega_j|
    bool degenerate = false;       // min_gap < 1e-6: spectral formulas unusable
    double match_residual = 0.0;
};
OmegaSet omega_eigenvalues(const ModelParams& p);

/// Slowest relaxation scales: 1/|max Re omega_i| for the register coherences
/// and (2 epsilon)^-1 for the cursor occupations.  Requires epsilon > 0.
struct RelaxationTimes {
    double register_time = 0.0;
    double cursor_time = 0.0;
};
RelaxationTimes relaxation_times(const ModelParams& p);

/// Evaluate the closed-form characteristic polynomial of the (+,-) block at
/// the given sample points against det(mpm - x I) computed numerically.
/// Returns the maximum relative residual; a persistent large value would
/// indicate a transcription error in the closed form.
double verify_mpm_charpoly(const ModelParams& p, const std::vector<Complex>& samples);

} // namespace spinclock
