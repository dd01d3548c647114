#pragma once

#include "c4shadow/pauli.hpp"

namespace c4s {

struct GroundSolution {
    double energy = 0;
    StateVector state;
    bool degeneracy_flag = false;  // spectral gap below 1e-8
    double residual = 0;           // ||H v - E v||_2
};

// Minimum eigenpair by full dense diagonalization. The eigenvector phase is
// fixed so the largest-magnitude amplitude is real positive.
GroundSolution ground_state(const ObservableSum& h);

struct PrepAngles {
    double alpha = 0;
    double beta = 0;
    double gamma = 0;
};

// R_Y(alpha) on qubit 1, R_Y(beta) on qubit 2, CNOT(1 -> 2), R_Y(gamma) on
// qubit 2, applied to |00>.
StateVector prepare_state(const PrepAngles& a);

// Inverts prepare_state for a real two-qubit target. Closed-form layer
// inversion, with coordinate-wise numerical refinement as a fallback when
// the closed form misses the 1 - 1e-9 fidelity bar.
PrepAngles solve_prep_angles(const StateVector& target);

// |<a|b>|^2
double state_fidelity(const StateVector& a, const StateVector& b);

}  // namespace c4s
