#include "c4shadow/eigen_solver.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "c4shadow/circuit.hpp"
#include "c4shadow/sim.hpp"

namespace c4s {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double x) {
    double w = std::fmod(x, kTwoPi);
    if (w < 0) w += kTwoPi;
    return w + 0.0;  // maps -0.0 to +0.0
}

}  // namespace

GroundSolution ground_state(const ObservableSum& h) {
    Eigen::MatrixXcd m = to_matrix(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success)
        throw SimulationError("dense diagonalization failed to converge");

    GroundSolution sol;
    sol.energy = solver.eigenvalues()(0);
    Eigen::VectorXcd v = solver.eigenvectors().col(0);

    Eigen::Index k = 0;
    double best = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (std::abs(v(i)) > best) {
            best = std::abs(v(i));
            k = i;
        }
    v *= std::conj(v(k)) / std::abs(v(k));

    sol.state.n_qubits = h.n_qubits;
    sol.state.amp.assign(v.data(), v.data() + v.size());
    sol.degeneracy_flag =
        v.size() > 1 && solver.eigenvalues()(1) - solver.eigenvalues()(0) < 1e-8;
    sol.residual = (m * v - sol.energy * v).norm();
    if (sol.residual > 1e-10)
        throw SimulationError("eigenpair residual " + std::to_string(sol.residual) +
                              " exceeds 1e-10");
    return sol;
}

StateVector prepare_state(const PrepAngles& a) {
    Circuit c(2, 0);
    c.append(Gate::ry(0, a.alpha));
    c.append(Gate::ry(1, a.beta));
    c.append(Gate::cnot(0, 1));
    c.append(Gate::ry(1, a.gamma));
    return evolve_unitary(c, 0, c.gates().size(), StateVector::zero_state(2));
}

double state_fidelity(const StateVector& a, const StateVector& b) {
    if (a.n_qubits != b.n_qubits)
        throw DimensionError("state_fidelity: qubit counts differ");
    std::complex<double> ov = 0;
    for (std::size_t i = 0; i < a.amp.size(); ++i)
        ov += std::conj(a.amp[i]) * b.amp[i];
    return std::norm(ov);
}

namespace {

PrepAngles closed_form(const double t[4]) {
    double r0 = std::hypot(t[0], t[1]);
    double r1 = std::hypot(t[2], t[3]);
    double alpha = 2.0 * std::atan2(r1, r0);
    double u = std::atan2(t[1], t[0]);  // (beta + gamma) / 2
    double v = std::atan2(t[2], t[3]);  // (beta - gamma) / 2
    return {wrap_angle(alpha), wrap_angle(u + v), wrap_angle(u - v)};
}

PrepAngles refine(const StateVector& target, PrepAngles a) {
    auto fid = [&](const PrepAngles& x) { return state_fidelity(target, prepare_state(x)); };
    double* comps[3] = {&a.alpha, &a.beta, &a.gamma};
    for (int sweep = 0; sweep < 4; ++sweep) {
        for (double* comp : comps) {
            double center = *comp, width = sweep == 0 ? 0.5 : 0.05;
            double lo = center - width, hi = center + width;
            for (int it = 0; it < 80; ++it) {
                double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
                *comp = m1;
                double f1 = fid(a);
                *comp = m2;
                double f2 = fid(a);
                if (f1 > f2)
                    hi = m2;
                else
                    lo = m1;
            }
            *comp = wrap_angle((lo + hi) / 2);
        }
    }
    return a;
}

}  // namespace

PrepAngles solve_prep_angles(const StateVector& target) {
    if (target.n_qubits != 2)
        throw DimensionError("solve_prep_angles expects a 2-qubit state");
    if (!target.normalized())
        throw UnsupportedError("solve_prep_angles expects a normalized state");
    double t[4];
    for (int i = 0; i < 4; ++i) {
        if (std::abs(target.amp[i].imag()) > 1e-9)
            throw UnsupportedError("the rotation ansatz is real; target amplitude " +
                                   std::to_string(i) + " has imaginary part " +
                                   std::to_string(target.amp[i].imag()));
        t[i] = target.amp[i].real();
    }

    // The circuit family only reaches real vectors up to global sign; fix
    // the sign so the largest-magnitude amplitude is positive.
    int k = 0;
    for (int i = 1; i < 4; ++i)
        if (std::abs(t[i]) > std::abs(t[k])) k = i;
    if (t[k] < 0)
        for (double& x : t) x = -x;

    PrepAngles a = closed_form(t);
    if (state_fidelity(target, prepare_state(a)) < 1.0 - 1e-9) a = refine(target, a);
    return a;
}

}  // namespace c4s
