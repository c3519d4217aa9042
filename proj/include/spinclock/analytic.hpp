#pragma once

#include <array>
#include <map>
#include <utility>

#include "spinclock/model.hpp"

namespace spinclock {

// Sparse density-matrix entries keyed by 1-based (row, column) pairs.
using SparseEntries = std::map<std::pair<int, int>, Complex>;

// Closed-form state of the dissipative model at time t: only the index pairs
// that are nonvanishing under the canonical initial condition are populated
// (8 diagonals, the register coherences (2,3)/(6,7), the cross-sector entries
// (1,5),(2,6),(3,7),(4,8),(2,7),(3,6), and Hermitian partners — 24 total).
struct AnalyticState {
    double t = 0.0;
    ModelParams params;
    SparseEntries entries;

    ComplexMatrix dense() const;
    // Hermiticity as a map, unit trace, and no entry outside the declared
    // 24-pair pattern.
    void validate(double herm_tol = 1e-12, double trace_tol = 1e-10) const;
};

// Stationary long-time state, with its entropy from the closed form (nats).
struct NessState {
    ModelParams params;
    SparseEntries entries;
    double entropy = 0.0;

    ComplexMatrix dense() const;
};

// Closed-system (epsilon = 0) observables.
struct BallisticObservables {
    double n3L;       // occupation of the first cursor site, cos^2(t/2)
    double n3L1;      // occupation of the second cursor site, sin^2(t/2)
    double m1, m2, m3; // register Bloch vector
    double s_reg;     // register entropy (nats)
    double chirality; // mean chirality, 2 cos(theta/2) sin t
};

BallisticObservables ballistic_observables(double theta, double t);

// The six nonvanishing entries of the (+,+) sector: (1,1),(2,2),(3,3),(4,4),
// (2,3),(3,2). Requires epsilon > 0 (DomainError); epsilon = 0 is the
// ballistic path.
SparseEntries system_pp(const ModelParams& p, double t);

// The (-,-) sector entries, related to the (+,+) ones by
// rho(j+4,k+4) = rho(j,k) on the diagonal and rho(6,7) = e^{-i theta} rho(2,3).
SparseEntries system_mm(const ModelParams& p, double t);

// The six cross-sector entries (1,5),(2,6),(3,7),(4,8),(2,7),(3,6) as spectral
// sums over the four slow eigenvalues. Throws DegenerateOmegas when the
// eigenvalues are closer than 1e-6 pairwise (the sums carry 1/(w_j - w_k)
// denominators); callers then fall back to numerical propagation.
SparseEntries system_pm(const ModelParams& p, double t);

// Same sums evaluated for caller-supplied eigenvalues, with no degeneracy
// gate: the caller owns the conditioning question. The sums are symmetric in
// the eigenvalues, so their order does not matter. Used for the epsilon -> 0
// continuity limit, where the gap shrinks like epsilon but the cancellation
// error stays far below observable tolerances.
SparseEntries system_pm(const ModelParams& p, double t, const std::array<Complex, 4>& omegas);

// Merges the three sectors and the Hermitian-partner entries.
AnalyticState assemble_analytic_state(const ModelParams& p, double t);

// Same, with the slow eigenvalues supplied by the caller so a grid of times
// does not recompute them; no degeneracy gate (see the system_pm overload).
AnalyticState assemble_analytic_state(const ModelParams& p, double t,
                                      const std::array<Complex, 4>& omegas);

// The stationary state and its closed-form entropy. DomainError for
// epsilon <= 0 (the closed system never relaxes).
NessState ness(const ModelParams& p);

// Long-time entropy values: the register limit log 2, and the small-epsilon
// series for the total and cursor entropies.
struct AsymptoticEntropies {
    double s_reg_inf;       // log 2
    double s_total_series;  // log 8 - 4 eps^2 mu^2
    double s_cursor_series; // log 4 - 2 eps^2 mu^2 (cos theta + 1)
};

AsymptoticEntropies asymptotic_entropies(const ModelParams& p);

} // namespace spinclock
