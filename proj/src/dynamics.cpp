#include "spinclock/dynamics.hpp"

#include <cmath>

namespace spinclock {

const char* method_name(Method m) {
    switch (m) {
    case Method::Rk4: return "rk4";
    case Method::Expm: return "expm";
    case Method::Unitary: return "unitary";
    case Method::Analytic: return "analytic";
    case Method::Auto: return "auto";
    }
    return "unknown";
}

Method parse_method(const std::string& name) {
    if (name == "rk4") return Method::Rk4;
    if (name == "expm") return Method::Expm;
    if (name == "unitary") return Method::Unitary;
    if (name == "analytic") return Method::Analytic;
    if (name == "auto") return Method::Auto;
    throw DomainError("unknown method '" + name + "'");
}

std::vector<double> sample_times(double t_max, double step) {
    if (!(step > 0.0) || !(t_max >= 0.0))
        throw DomainError("sample_times: need step > 0 and t_max >= 0");
    std::vector<double> times;
    const long n = std::lround(std::floor(t_max / step + 1e-9));
    times.reserve(static_cast<std::size_t>(n) + 1);
    for (long i = 0; i <= n; ++i)
        times.push_back(static_cast<double>(i) * step);
    return times;
}

Trajectory propagate_rk4(const Superoperator& s, const ComplexMatrix& rho0,
                         double t_max, double dt, int sample_every) {
    if (!(dt > 0.0) || dt > 0.1)
        throw StepSizeError("propagate_rk4: dt must lie in (0, 0.1]");
    if (sample_every < 1)
        throw DomainError("propagate_rk4: sample_every must be >= 1");
    if (!(t_max >= 0.0))
        throw DomainError("propagate_rk4: t_max must be >= 0");

    const ComplexMatrix& A = s.matrix;
    ComplexVector v = vec(rho0);

    // Integrate with step dt but emit exactly the uniform grid
    // {0, dt*sample_every, ...} that the other backends use, so trajectories
    // from different methods line up sample for sample.
    const std::vector<double> grid = sample_times(t_max, dt * sample_every);

    Trajectory traj;
    traj.method = Method::Rk4;
    traj.times = grid;
    traj.states.reserve(grid.size());

    auto record = [&]() {
        const ComplexMatrix rho = unvec(v);
        const double drift = std::abs(rho.trace() - Complex(1.0));
        if (drift > 1e-6)
            throw TraceDrift("propagate_rk4: trace drifted by " + std::to_string(drift));
        traj.states.push_back(rho);
    };

    record();
    const long n_steps = static_cast<long>(grid.size() - 1) * sample_every;
    for (long step = 0; step < n_steps; ++step) {
        const ComplexVector k1 = A * v;
        const ComplexVector k2 = A * (v + 0.5 * dt * k1);
        const ComplexVector k3 = A * (v + 0.5 * dt * k2);
        const ComplexVector k4 = A * (v + dt * k3);
        v += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if ((step + 1) % sample_every == 0)
            record();
    }
    return traj;
}

Trajectory propagate_expm(const Superoperator& s, const ComplexMatrix& rho0,
                          const std::vector<double>& times) {
    const EigenDecomposition ed = eig_general(s.matrix);
    const ComplexVector v0 = vec(rho0);

    Trajectory traj;
    traj.method = Method::Expm;
    traj.times = times;
    traj.states.reserve(times.size());
    for (double t : times)
        traj.states.push_back(unvec(expm_times(ed, t, v0)));
    return traj;
}

Trajectory propagate_unitary(const ComplexMatrix& hamiltonian, const ComplexMatrix& rho0,
                             const std::vector<double>& times) {
    if (hamiltonian.rows() != kDim || hamiltonian.cols() != kDim)
        throw DimensionMismatch("propagate_unitary: Hamiltonian must be 8x8");
    const double herm = (hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-12)
        throw NotHermitian("propagate_unitary: Hamiltonian is not Hermitian");

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hamiltonian);
    const Eigen::VectorXd& w = solver.eigenvalues();
    const ComplexMatrix& V = solver.eigenvectors();
    const ComplexMatrix rho_eig = V.adjoint() * rho0 * V;

    Trajectory traj;
    traj.method = Method::Unitary;
    traj.times = times;
    traj.states.reserve(times.size());
    const Complex mi(0.0, -1.0);
    for (double t : times) {
        ComplexVector phase(kDim);
        for (int i = 0; i < kDim; ++i)
            phase(i) = std::exp(mi * w(i) * t);
        const ComplexMatrix rotated = phase.asDiagonal() * rho_eig * phase.conjugate().asDiagonal();
        traj.states.push_back(V * rotated * V.adjoint());
    }
    return traj;
}

} // namespace spinclock
