#pragma once

#include "spinclock/model.hpp"

namespace spinclock {

// tau_3 joint outcome probabilities for the two cursor sites.
struct JointDistribution {
    double pp; // tau3(L) = +1 and tau3(L+1) = +1
    double pm; // tau3(L) = +1 and tau3(L+1) = -1
    double mp;
    double mm;
};

struct BlochVector {
    double m1, m2, m3;
};

// Every scalar the model's figures and statements use, extracted from one
// density matrix. All entropies in nats.
struct ObservableRecord {
    double t = 0.0;
    double n3L = 0.0;  // P(tau3(L) = +1) = joint.pp + joint.pm
    double n3L1 = 0.0; // P(tau3(L+1) = +1) = joint.pp + joint.mp
    JointDistribution joint{};
    double m1 = 0.0, m2 = 0.0, m3 = 0.0;
    double current = 0.0;
    double chirality = 0.0;
    double s_reg = 0.0;
    double s_cur = 0.0;
    double s_tot = 0.0;
};

// Tr[rho * op]; DimensionMismatch unless both are 8x8.
Complex expectation(const ComplexMatrix& rho, const ComplexMatrix& op);

// Reads the four probabilities straight off the diagonal:
// pp = rho(1,1)+rho(5,5), pm = rho(2,2)+rho(6,6), mp = rho(3,3)+rho(7,7),
// mm = rho(4,4)+rho(8,8).
JointDistribution joint_distribution(const ComplexMatrix& rho);

// Register Bloch vector m_a = Tr[rho sigma_a]. Also satisfies
// m2 = Im m(t), m3 = Re m(t) with m(t) = 2 sum_j rho(j, j+4).
BlochVector bloch_vector(const ComplexMatrix& rho);

// Reduced register state (2x2): (rho_reg)_{ab} = sum_k rho(4(a-1)+k, 4(b-1)+k).
ComplexMatrix partial_trace_register(const ComplexMatrix& rho);

// Reduced cursor state (4x4): (rho_cur)_{jk} = rho(j,k) + rho(j+4,k+4).
ComplexMatrix partial_trace_cursor(const ComplexMatrix& rho);

// -sum lambda log lambda over the eigenvalues of a Hermitian PSD matrix, with
// 0 log 0 = 0. Eigenvalues in [-1e-8, 0) are clipped to zero (propagator
// round-off must not produce NaN); anything below that is NotAState.
double von_neumann_entropy(const ComplexMatrix& rho);

// Mean chirality Tr[chi rho]. Computes the full operator trace AND the sparse
// shortcut 8 Im rho(2,7) and cross-asserts them (IdentityViolation beyond
// 1e-8): a deliberate redundancy validating the chi construction.
double chirality_mean(const ComplexMatrix& rho);

// Mean cursor-site current Tr[J rho].
double current_mean(const ComplexMatrix& rho);

// Full record at time t.
ObservableRecord observe(double t, const ComplexMatrix& rho);

} // namespace spinclock
