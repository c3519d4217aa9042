#pragma once

#include <vector>

#include "spinclock/liouvillian.hpp"
#include "spinclock/model.hpp"

namespace spinclock {

// Propagation backends. Auto picks per system parameters: closed-form state
// when epsilon > 0 and the slow register modes are non-degenerate, pure
// unitary evolution when epsilon == 0, and the spectral exponential otherwise
// (which itself falls back to rk4 if the generator is defective).
enum class Method { Rk4, Expm, Unitary, Analytic, Auto };

const char* method_name(Method m);
Method parse_method(const std::string& name); // throws DomainError on unknown names

struct Trajectory {
    std::vector<double> times;
    std::vector<ComplexMatrix> states; // one 8x8 density matrix per time
    Method method = Method::Rk4;       // backend that actually produced the data
};

// Classic fixed-step RK4 on the vectorized master equation. Samples every
// `sample_every`-th step (the initial state is always sample 0). Requires
// 0 < dt <= 0.1 (StepSizeError) and monitors trace conservation at every
// sample (TraceDrift beyond 1e-6).
Trajectory propagate_rk4(const Superoperator& s, const ComplexMatrix& rho0,
                         double t_max, double dt, int sample_every = 1);

// Evolves through the generator's eigendecomposition: exact up to the
// diagonalization error, arbitrary (even non-uniform) sample times. Throws
// NonDiagonalizable when the generator is defective.
Trajectory propagate_expm(const Superoperator& s, const ComplexMatrix& rho0,
                          const std::vector<double>& times);

// Closed-system evolution rho(t) = e^{-iHt} rho0 e^{+iHt} via the Hermitian
// eigendecomposition of H. Only valid when no baths act.
Trajectory propagate_unitary(const ComplexMatrix& hamiltonian, const ComplexMatrix& rho0,
                             const std::vector<double>& times);

// Uniform sample grid {0, step, 2*step, ...} covering [0, t_max].
std::vector<double> sample_times(double t_max, double step);

} // namespace spinclock
