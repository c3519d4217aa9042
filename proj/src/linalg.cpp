#include "spinclock/linalg.hpp"

#include <cmath>
#include <limits>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace spinclock {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

EigenDecomposition eig_general(const ComplexMatrix& a, double residual_tol) {
    if (a.rows() != a.cols())
        throw DimensionMismatch("eig_general: matrix must be square");

    // LAPACK's zgeev: unlike Schur-plus-back-substitution schemes, it returns
    // a well-conditioned eigenbasis for exactly repeated (but semisimple)
    // eigenvalues, which this model produces in abundance — the two diagonal
    // sectors of the generator always share their full spectrum.
    const lapack_int n = static_cast<lapack_int>(a.rows());
    ComplexMatrix work = a; // zgeev overwrites its input
    EigenDecomposition dec;
    dec.values.resize(n);
    dec.vectors.resize(n, n);
    const lapack_int info =
        LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'V', n, work.data(), n, dec.values.data(), nullptr,
                      1, dec.vectors.data(), n);
    if (info != 0)
        throw NonDiagonalizable("eig_general: eigensolver failed to converge");
    dec.inverse_vectors = dec.vectors.partialPivLu().inverse();

    const double scale = std::max(1.0, a.norm());
    dec.reconstruction_residual =
        (a * dec.vectors - dec.vectors * dec.values.asDiagonal()).norm() / scale;
    dec.inverse_residual =
        (dec.vectors * dec.inverse_vectors - ComplexMatrix::Identity(a.rows(), a.cols())).norm() /
        scale;
    dec.basis_condition = dec.vectors.norm() * dec.inverse_vectors.norm();

    // A defective matrix surfaces as a large inverse residual, a singular
    // eigenvector matrix (non-finite after inversion), or an eigenbasis so
    // ill conditioned that no function of the matrix can come out of it at
    // working precision: kappa(V) * eps_machine bounds the achievable
    // accuracy from below.
    const double eps_mach = std::numeric_limits<double>::epsilon();
    if (!std::isfinite(dec.reconstruction_residual) || !std::isfinite(dec.inverse_residual) ||
        dec.reconstruction_residual > residual_tol || dec.inverse_residual > residual_tol ||
        dec.basis_condition * eps_mach > residual_tol)
        throw NonDiagonalizable("eig_general: residual above tolerance, matrix is defective");
    return dec;
}

ComplexVector expm_times(const EigenDecomposition& dec, double t, const ComplexVector& v) {
    if (v.size() != dec.vectors.rows())
        throw DimensionMismatch("expm_times: vector length does not match decomposition");
    ComplexVector coeff = dec.inverse_vectors * v;
    for (Eigen::Index i = 0; i < coeff.size(); ++i)
        coeff(i) *= std::exp(dec.values(i) * t);
    return dec.vectors * coeff;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a, double herm_tol) {
    if (a.rows() != a.cols())
        throw DimensionMismatch("hermitian_eigenvalues: matrix must be square");
    const double herm_err = (a - a.adjoint()).cwiseAbs().maxCoeff();
    if (herm_err > herm_tol)
        throw NotHermitian("hermitian_eigenvalues: matrix is not Hermitian");

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw Error("hermitian_eigenvalues: eigensolver failed to converge");
    const auto& ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

} // namespace spinclock
