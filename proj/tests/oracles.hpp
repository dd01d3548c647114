#pragma once

// Reference computations for the test suite, implemented independently of
// the library: literal Pauli matrices combined with an explicit Kronecker
// product, and a Jacobi eigensolver working on the real embedding of a
// Hermitian matrix. Agreement between these and the library is the point of
// the tests, so nothing here may call into c4shadow numerics.

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "c4shadow/pauli.hpp"
#include "c4shadow/sim.hpp"

namespace oracle {

using Cx = std::complex<double>;

inline Eigen::Matrix2cd letter_matrix(char c) {
    Eigen::Matrix2cd m;
    const Cx i(0, 1);
    switch (c) {
        case 'I': m << 1, 0, 0, 1; break;
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, -i, i, 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: throw std::runtime_error("bad letter");
    }
    return m;
}

// Plain-loop Kronecker product, no library shortcuts.
inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index ar = 0; ar < a.rows(); ++ar)
        for (Eigen::Index ac = 0; ac < a.cols(); ++ac)
            for (Eigen::Index br = 0; br < b.rows(); ++br)
                for (Eigen::Index bc = 0; bc < b.cols(); ++bc)
                    out(ar * b.rows() + br, ac * b.cols() + bc) = a(ar, ac) * b(br, bc);
    return out;
}

// Tensor product of the letters of a word, leftmost letter first (so the
// leftmost letter acts on the most significant index bit).
inline Eigen::MatrixXcd word_matrix(const std::string& word) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
    for (char c : word) m = kron(m, letter_matrix(c));
    return m;
}

inline Eigen::MatrixXcd observable_matrix(const c4s::ObservableSum& h) {
    Eigen::Index dim = Eigen::Index{1} << h.n_qubits;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& [word, coeff] : h.terms) m += coeff * word_matrix(word);
    return m;
}

// Smallest eigenvalue of a Hermitian matrix via cyclic Jacobi sweeps on the
// real symmetric embedding [[Re, -Im], [Im, Re]]. Every eigenvalue of the
// embedding is an eigenvalue of the original (doubled in multiplicity).
inline double jacobi_min_eigenvalue(const Eigen::MatrixXcd& h) {
    const Eigen::Index n = h.rows();
    Eigen::MatrixXd s(2 * n, 2 * n);
    s.topLeftCorner(n, n) = h.real();
    s.topRightCorner(n, n) = -h.imag();
    s.bottomLeftCorner(n, n) = h.imag();
    s.bottomRightCorner(n, n) = h.real();
    s = 0.5 * (s + s.transpose().eval());

    const Eigen::Index m = 2 * n;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (Eigen::Index p = 0; p < m; ++p)
            for (Eigen::Index q = p + 1; q < m; ++q) off += s(p, q) * s(p, q);
        if (off < 1e-26) break;
        for (Eigen::Index p = 0; p < m; ++p) {
            for (Eigen::Index q = p + 1; q < m; ++q) {
                if (std::abs(s(p, q)) < 1e-300) continue;
                double theta = (s(q, q) - s(p, p)) / (2 * s(p, q));
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1);
                double sn = t * c;
                for (Eigen::Index k = 0; k < m; ++k) {
                    double skp = s(k, p), skq = s(k, q);
                    s(k, p) = c * skp - sn * skq;
                    s(k, q) = sn * skp + c * skq;
                }
                for (Eigen::Index k = 0; k < m; ++k) {
                    double spk = s(p, k), sqk = s(q, k);
                    s(p, k) = c * spk - sn * sqk;
                    s(q, k) = sn * spk + c * sqk;
                }
            }
        }
    }
    double lo = s(0, 0);
    for (Eigen::Index k = 1; k < m; ++k) lo = std::min(lo, s(k, k));
    return lo;
}

inline double gaussian(c4s::Rng& rng) {
    double u = rng.uniform();
    double v = rng.uniform();
    if (u < 1e-300) u = 1e-300;
    return std::sqrt(-2 * std::log(u)) * std::cos(2 * M_PI * v);
}

inline c4s::StateVector random_state(c4s::Rng& rng, int n_qubits, bool real_only = false) {
    c4s::StateVector psi(n_qubits);
    double norm2 = 0;
    for (auto& a : psi.amp) {
        double re = gaussian(rng);
        double im = real_only ? 0.0 : gaussian(rng);
        a = Cx(re, im);
        norm2 += std::norm(a);
    }
    for (auto& a : psi.amp) a /= std::sqrt(norm2);
    return psi;
}

// Random full-rank density matrix: a normalized mixture of random pure states.
inline Eigen::MatrixXcd random_density(c4s::Rng& rng, int n_qubits, int n_pure = 4) {
    Eigen::Index dim = Eigen::Index{1} << n_qubits;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    double wsum = 0;
    for (int k = 0; k < n_pure; ++k) {
        c4s::StateVector psi = random_state(rng, n_qubits);
        Eigen::VectorXcd v(dim);
        for (Eigen::Index j = 0; j < dim; ++j) v(j) = psi.amp[static_cast<std::size_t>(j)];
        double w = rng.uniform() + 0.1;
        rho += w * (v * v.adjoint());
        wsum += w;
    }
    return rho / wsum;
}

// The experiment Hamiltonian as shipped in data/, embedded so parser tests
// do not depend on the data directory.
inline const char* kHamiltonianText =
    "-1.99134     II\n"
    "-0.02882925  XI\n"
    "-0.02882925  IX\n"
    "0.0541175    ZI\n"
    "0.0541175    IZ\n"
    "0.01495595   XX\n"
    "0.000151287  XZ\n"
    "0.000151287  ZX\n"
    "0.05900925   ZZ\n";

// Ground-state facts of that Hamiltonian, frozen from the exact solve.
inline constexpr double kGroundEnergy = -2.080243991170148;
inline constexpr std::array<double, 4> kGroundAmplitudes{0.070866, 0.499955, 0.499955,
                                                         0.703611};
inline constexpr std::array<double, 3> kPrepAngles{2.082939390174472, 2.047764754290491,
                                                   0.8122143311748994};

}  // namespace oracle
