#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "spinclock/errors.hpp"

namespace spinclock {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Kronecker product a (x) b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Result of a general (non-Hermitian) eigendecomposition A = V diag(values) V^-1.
///
/// Both residuals are Frobenius norms scaled by max(1, ||A||_F):
///   reconstruction_residual = || A V - V diag(values) ||
///   inverse_residual        = || V V^-1 - I ||
/// basis_condition is ||V||_F ||V^-1||_F. Defectiveness never shows in the
/// reconstruction residual (the solver is backward stable even on Jordan
/// blocks); it shows as a numerically singular eigenvector matrix, detected
/// through the inverse residual and through basis_condition * eps_machine,
/// which bounds from below the accuracy of any matrix function evaluated in
/// this basis.
struct EigenDecomposition {
    ComplexVector values;
    ComplexMatrix vectors;
    ComplexMatrix inverse_vectors;
    double reconstruction_residual = 0.0;
    double inverse_residual = 0.0;
    double basis_condition = 0.0;
};

/// General complex eigendecomposition with residual verification.
/// Throws NonDiagonalizable when either residual exceeds residual_tol.
EigenDecomposition eig_general(const ComplexMatrix& a, double residual_tol = 1e-8);

/// exp(t A) v given a verified decomposition of A.
ComplexVector expm_times(const EigenDecomposition& dec, double t, const ComplexVector& v);

/// Ascending real eigenvalues of a Hermitian matrix.
/// Throws NotHermitian when ||a - a^dagger||_max exceeds herm_tol.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a, double herm_tol = 1e-12);

} // namespace spinclock
