#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "c4shadow/errors.hpp"

namespace c4s {

// Multi-qubit Pauli operator, bit-packed. Qubit 1 is the leftmost letter of
// the word and the most significant bit of basis-state indices; qubit q maps
// to mask bit (n_qubits - q). The operator equals i^phase_exp times the
// literal tensor product of the letters.
class PauliString {
public:
    PauliString() = default;
    explicit PauliString(int n_qubits);  // identity word, phase +1
    PauliString(int n_qubits, uint64_t x_mask, uint64_t z_mask, int phase_exp = 0);

    static PauliString from_word(std::string_view word);

    int n_qubits() const { return n_; }
    uint64_t x_mask() const { return x_; }
    uint64_t z_mask() const { return z_; }
    int phase_exp() const { return k_; }
    std::complex<double> phase() const;

    char letter(int qubit) const;  // 1-based, leftmost = 1
    std::string word() const;
    std::string str() const;  // phase prefix + word, e.g. "-iXZ"

    bool operator==(const PauliString&) const = default;

private:
    int n_ = 0;
    uint64_t x_ = 0;
    uint64_t z_ = 0;
    int k_ = 0;
};

PauliString pauli_mul(const PauliString& a, const PauliString& b);
bool commutes(const PauliString& a, const PauliString& b);

// Real-weighted sum of un-phased Pauli words; Hermitian by construction.
struct ObservableSum {
    int n_qubits = 0;
    std::map<std::string, double> terms;

    ObservableSum() = default;
    explicit ObservableSum(int n) : n_qubits(n) {}

    // Merges into an existing entry; validates word length and letters.
    void add(const std::string& word, double coeff);
};

struct StateVector {
    int n_qubits = 0;
    std::vector<std::complex<double>> amp;

    StateVector() = default;
    explicit StateVector(int n)
        : n_qubits(n), amp(std::size_t{1} << n, 0.0) {}

    static StateVector zero_state(int n_qubits);

    double norm2() const;
    bool normalized(double tol = 1e-10) const;
};

inline constexpr int kDenseLimit = 12;

Eigen::MatrixXcd to_matrix(const PauliString& p, int dense_limit = kDenseLimit);
Eigen::MatrixXcd to_matrix(const ObservableSum& h, int dense_limit = kDenseLimit);

// <psi|P|psi> for a possibly phased Pauli; complex in general.
std::complex<double> matrix_element(const StateVector& psi, const PauliString& p);

// <psi|H|psi>. The imaginary residual is checked against 1e-10 and discarded.
double expectation(const StateVector& psi, const ObservableSum& h);
double expectation_word(const StateVector& psi, const std::string& word);

}  // namespace c4s
