#include "c4shadow/pauli.hpp"

#include <bit>
#include <cmath>

namespace c4s {

namespace {

void check_qubits(int n) {
    if (n < 1 || n > 64)
        throw DimensionError("qubit count must be in [1, 64], got " + std::to_string(n));
}

}  // namespace

PauliString::PauliString(int n_qubits) : n_(n_qubits) {
    check_qubits(n_qubits);
}

PauliString::PauliString(int n_qubits, uint64_t x_mask, uint64_t z_mask, int phase_exp)
    : n_(n_qubits), x_(x_mask), z_(z_mask), k_(((phase_exp % 4) + 4) % 4) {
    check_qubits(n_qubits);
    if (n_qubits < 64) {
        uint64_t valid = (uint64_t{1} << n_qubits) - 1;
        if ((x_mask | z_mask) & ~valid)
            throw DimensionError("Pauli mask has bits outside the qubit range");
    }
}

PauliString PauliString::from_word(std::string_view word) {
    int n = static_cast<int>(word.size());
    check_qubits(n);
    uint64_t x = 0, z = 0;
    for (int q = 1; q <= n; ++q) {
        uint64_t bit = uint64_t{1} << (n - q);
        switch (word[q - 1]) {
            case 'I': break;
            case 'X': x |= bit; break;
            case 'Y': x |= bit; z |= bit; break;
            case 'Z': z |= bit; break;
            default:
                throw Error("invalid Pauli letter '" + std::string(1, word[q - 1]) +
                            "' in word \"" + std::string(word) + "\"");
        }
    }
    return PauliString(n, x, z, 0);
}

std::complex<double> PauliString::phase() const {
    switch (k_) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

char PauliString::letter(int qubit) const {
    if (qubit < 1 || qubit > n_)
        throw DimensionError("qubit index " + std::to_string(qubit) + " out of range");
    uint64_t bit = uint64_t{1} << (n_ - qubit);
    bool xb = x_ & bit, zb = z_ & bit;
    if (xb && zb) return 'Y';
    if (xb) return 'X';
    if (zb) return 'Z';
    return 'I';
}

std::string PauliString::word() const {
    std::string w(static_cast<std::size_t>(n_), 'I');
    for (int q = 1; q <= n_; ++q) w[q - 1] = letter(q);
    return w;
}

std::string PauliString::str() const {
    static const char* prefix[4] = {"", "i", "-", "-i"};
    return prefix[k_] + word();
}

PauliString pauli_mul(const PauliString& a, const PauliString& b) {
    if (a.n_qubits() != b.n_qubits())
        throw DimensionError("pauli_mul: operand qubit counts differ");
    uint64_t xa = a.x_mask(), za = a.z_mask();
    uint64_t xb = b.x_mask(), zb = b.z_mask();
    // Letter pairs contributing +i: XY, YZ, ZX; their reverses contribute -i.
    uint64_t plus = (xa & ~za & xb & zb) | (xa & za & ~xb & zb) | (~xa & za & xb & ~zb);
    uint64_t minus = (xa & ~za & ~xb & zb) | (xa & za & xb & ~zb) | (~xa & za & xb & zb);
    int k = a.phase_exp() + b.phase_exp() + std::popcount(plus) + 3 * std::popcount(minus);
    return PauliString(a.n_qubits(), xa ^ xb, za ^ zb, k);
}

bool commutes(const PauliString& a, const PauliString& b) {
    if (a.n_qubits() != b.n_qubits())
        throw DimensionError("commutes: operand qubit counts differ");
    int anti = std::popcount(a.x_mask() & b.z_mask()) + std::popcount(a.z_mask() & b.x_mask());
    return (anti & 1) == 0;
}

void ObservableSum::add(const std::string& word, double coeff) {
    if (static_cast<int>(word.size()) != n_qubits)
        throw DimensionError("term word \"" + word + "\" does not have " +
                             std::to_string(n_qubits) + " letters");
    for (char c : word)
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
            throw Error("invalid Pauli letter '" + std::string(1, c) + "' in word \"" + word + "\"");
    if (!std::isfinite(coeff))
        throw Error("non-finite coefficient for word \"" + word + "\"");
    terms[word] += coeff;
}

StateVector StateVector::zero_state(int n_qubits) {
    check_qubits(n_qubits);
    StateVector psi(n_qubits);
    psi.amp[0] = 1.0;
    return psi;
}

double StateVector::norm2() const {
    double s = 0.0;
    for (const auto& a : amp) s += std::norm(a);
    return s;
}

bool StateVector::normalized(double tol) const {
    return std::abs(norm2() - 1.0) <= tol;
}

namespace {

// P|c> = phase_for(c) |c ^ x_mask| for a literal letter word.
inline std::complex<double> column_phase(const PauliString& p, uint64_t c) {
    static const std::complex<double> ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    int k = (p.phase_exp() + std::popcount(p.x_mask() & p.z_mask())) & 3;
    std::complex<double> v = ipow[k];
    if (std::popcount(c & p.z_mask()) & 1) v = -v;
    return v;
}

}  // namespace

Eigen::MatrixXcd to_matrix(const PauliString& p, int dense_limit) {
    if (p.n_qubits() > dense_limit)
        throw CapacityError("dense matrix for " + std::to_string(p.n_qubits()) +
                            " qubits exceeds the limit of " + std::to_string(dense_limit));
    uint64_t dim = uint64_t{1} << p.n_qubits();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (uint64_t c = 0; c < dim; ++c)
        m(c ^ p.x_mask(), c) = column_phase(p, c);
    return m;
}

Eigen::MatrixXcd to_matrix(const ObservableSum& h, int dense_limit) {
    if (h.n_qubits > dense_limit)
        throw CapacityError("dense matrix for " + std::to_string(h.n_qubits) +
                            " qubits exceeds the limit of " + std::to_string(dense_limit));
    uint64_t dim = uint64_t{1} << h.n_qubits;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& [word, coeff] : h.terms) {
        PauliString p = PauliString::from_word(word);
        for (uint64_t c = 0; c < dim; ++c)
            m(c ^ p.x_mask(), c) += coeff * column_phase(p, c);
    }
    return m;
}

std::complex<double> matrix_element(const StateVector& psi, const PauliString& p) {
    if (psi.n_qubits != p.n_qubits())
        throw DimensionError("matrix_element: state and operator qubit counts differ");
    std::complex<double> s = 0.0;
    uint64_t dim = uint64_t{1} << psi.n_qubits;
    for (uint64_t c = 0; c < dim; ++c) {
        const std::complex<double>& a = psi.amp[c];
        if (a == std::complex<double>(0.0, 0.0)) continue;
        s += std::conj(psi.amp[c ^ p.x_mask()]) * column_phase(p, c) * a;
    }
    return s;
}

double expectation(const StateVector& psi, const ObservableSum& h) {
    if (psi.n_qubits != h.n_qubits)
        throw DimensionError("expectation: state and observable qubit counts differ");
    if (!psi.normalized())
        throw UnsupportedError("expectation requires a normalized state");
    std::complex<double> s = 0.0;
    for (const auto& [word, coeff] : h.terms)
        s += coeff * matrix_element(psi, PauliString::from_word(word));
    if (std::abs(s.imag()) > 1e-10)
        throw Error("expectation value has imaginary residual " + std::to_string(s.imag()));
    return s.real();
}

double expectation_word(const StateVector& psi, const std::string& word) {
    std::complex<double> s = matrix_element(psi, PauliString::from_word(word));
    if (std::abs(s.imag()) > 1e-10)
        throw Error("expectation value has imaginary residual " + std::to_string(s.imag()));
    return s.real();
}

}  // namespace c4s
