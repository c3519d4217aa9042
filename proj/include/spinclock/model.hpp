#pragma once

#include <array>

#include "spinclock/linalg.hpp"

namespace spinclock {

/// Hilbert-space dimension: register (2) x cursor site L (2) x cursor site L+1 (2).
inline constexpr int kDim = 8;

/// Model parameters.
///   theta   — rotation angle of the register primitive U = exp(-i theta sigma_1 / 2)
///   epsilon — bath coupling strength, epsilon >= 0
///   mu      — bath asymmetry ("chemical potential" bias), -1 <= mu <= 1
struct ModelParams {
    double theta = 0.0;
    double epsilon = 0.0;
    double mu = 0.0;

    /// Throws DomainError when a parameter is outside its admissible range.
    void validate() const;
};

/// Working basis |e_1> ... |e_8>: simultaneous eigenvectors of
/// (sigma_1, tau_3(L), tau_3(L+1)), listed in lexicographic order with
/// eigenvalue +1 preceding -1.  Returns the 1-based basis index.
int basis_index(int sigma1, int tau3_L, int tau3_L1);

/// Single-factor Pauli matrices in the working basis.
/// The register factor is expressed in the sigma_1 eigenbasis, so sigma_1 is
/// diagonal there while sigma_3 is the flip matrix; the cursor factors are
/// expressed in the tau_3 eigenbasis.
ComplexMatrix sigma_factor(int a);              // a = 1, 2, 3 (2x2)
ComplexMatrix tau_factor(int a);                // a = 1, 2, 3 (2x2)
ComplexMatrix tau_plus_factor();                // unit ladder |+><-| (2x2)
ComplexMatrix tau_minus_factor();               // unit ladder |-><+| (2x2)
ComplexMatrix rotation_factor(double theta);    // U(theta), diagonal 2x2

/// Embeddings into the 8-dimensional space.
ComplexMatrix register_op(const ComplexMatrix& op2);   // op (x) I4
ComplexMatrix site_op_L(const ComplexMatrix& op2);     // I2 (x) op (x) I2
ComplexMatrix site_op_L1(const ComplexMatrix& op2);    // I2 (x) I2 (x) op

/// Three-body Hamiltonian: the excitation hopping L -> L+1 applies U to the
/// register, the reverse hop applies U^dagger.  Only four matrix elements are
/// nonzero; (2,3) and (7,6) both hold -1/2 e^{i theta/2}.
ComplexMatrix build_hamiltonian(const ModelParams& p);

/// The four bath (jump) operators, injection/absorption at each cursor site
/// with rates epsilon (1 -+ mu).
std::array<ComplexMatrix, 4> build_bath_operators(const ModelParams& p);

/// Canonical initial state: register input sigma_3 = -1, excitation at site L.
/// Nonzero entries: rho(2,2) = rho(6,6) = 1/2, rho(2,6) = rho(6,2) = -1/2.
ComplexMatrix initial_state();

/// Excitation current J = (i/2)(tau_-(L) tau_+(L+1) - tau_-(L+1) tau_+(L)).
ComplexMatrix build_current_operator();

/// Chirality (entanglement witness) chi = sigma . tau(L) x tau(L+1).
ComplexMatrix build_chirality_operator();

/// An 8x8 density matrix.  Construction checks the dimension only; validate()
/// applies the physical checks with per-caller tolerances.
struct DensityMatrix {
    ComplexMatrix m;

    explicit DensityMatrix(ComplexMatrix mat);

    /// Throws NotAState unless m is Hermitian within herm_tol, has unit trace
    /// within trace_tol and min eigenvalue >= -psd_tol.
    void validate(double herm_tol = 1e-12, double trace_tol = 1e-12, double psd_tol = 1e-10) const;
};

} // namespace spinclock
