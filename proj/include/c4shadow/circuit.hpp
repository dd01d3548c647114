#pragma once

#include <string>
#include <vector>

#include "c4shadow/errors.hpp"

namespace c4s {

enum class GateKind { H, S, X, Y, Z, RX, RY, CNOT, CY, Measure, Reset, CondPauli };

struct Gate {
    GateKind kind;
    int q0 = -1;       // target, or control for two-qubit kinds
    int q1 = -1;       // target for two-qubit kinds
    double theta = 0;  // RX / RY angle, radians
    int cbit = -1;     // Measure destination, CondPauli condition source
    char pauli = 'I';  // CondPauli correction letter

    static Gate h(int q) { return {GateKind::H, q}; }
    static Gate s(int q) { return {GateKind::S, q}; }
    static Gate x(int q) { return {GateKind::X, q}; }
    static Gate y(int q) { return {GateKind::Y, q}; }
    static Gate z(int q) { return {GateKind::Z, q}; }
    static Gate rx(int q, double theta) { return {GateKind::RX, q, -1, theta}; }
    static Gate ry(int q, double theta) { return {GateKind::RY, q, -1, theta}; }
    static Gate cnot(int control, int target) { return {GateKind::CNOT, control, target}; }
    static Gate cy(int control, int target) { return {GateKind::CY, control, target}; }
    static Gate measure(int q, int cbit) { return {GateKind::Measure, q, -1, 0, cbit}; }
    static Gate reset(int q) { return {GateKind::Reset, q}; }
    static Gate cond_pauli(int cbit, char pauli, int q) {
        return {GateKind::CondPauli, q, -1, 0, cbit, pauli};
    }

    bool two_qubit() const { return kind == GateKind::CNOT || kind == GateKind::CY; }
    bool branching() const { return kind == GateKind::Measure || kind == GateKind::Reset; }
};

std::string gate_text(const Gate& g);

class Circuit {
public:
    Circuit(int n_qubits, int n_classical_bits);

    int n_qubits() const { return nq_; }
    int n_cbits() const { return nc_; }
    const std::vector<Gate>& gates() const { return gates_; }

    // Validates indices before accepting the gate. A classical bit may be
    // written by at most one measurement unless allow_reuse is set.
    void append(const Gate& g, bool allow_reuse = false);

    void set_label(int cbit, const std::string& name);
    const std::string& label(int cbit) const;
    int bit(const std::string& name) const;  // reverse lookup, errors if absent

    int count_1q() const;
    int count_2q() const;
    int count_measure() const;
    int count_branching() const;  // measurements plus resets

    // One gate per line, stable text form.
    std::string dump() const;

    Circuit with_inserted(std::size_t position, const Gate& g) const;

private:
    int nq_;
    int nc_;
    std::vector<Gate> gates_;
    std::vector<std::string> labels_;
    std::vector<bool> bit_written_;
};

}  // namespace c4s
