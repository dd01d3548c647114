#include "c4shadow/circuit.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "c4shadow/util.hpp"

namespace c4s {

std::string g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

Circuit::Circuit(int n_qubits, int n_classical_bits)
    : nq_(n_qubits), nc_(n_classical_bits),
      labels_(static_cast<std::size_t>(n_classical_bits)),
      bit_written_(static_cast<std::size_t>(n_classical_bits), false) {
    if (n_qubits < 1) throw DimensionError("circuit needs at least one qubit");
    if (n_classical_bits < 0) throw DimensionError("negative classical bit count");
}

void Circuit::append(const Gate& g, bool allow_reuse) {
    auto check_q = [&](int q) {
        if (q < 0 || q >= nq_)
            throw DimensionError("qubit index " + std::to_string(q) + " out of range");
    };
    check_q(g.q0);
    if (g.two_qubit()) {
        check_q(g.q1);
        if (g.q0 == g.q1) throw DimensionError("two-qubit gate needs distinct qubits");
    }
    if (g.kind == GateKind::RX || g.kind == GateKind::RY) {
        if (!std::isfinite(g.theta)) throw DimensionError("non-finite rotation angle");
    }
    if (g.kind == GateKind::Measure || g.kind == GateKind::CondPauli) {
        if (g.cbit < 0 || g.cbit >= nc_)
            throw DimensionError("classical bit " + std::to_string(g.cbit) + " out of range");
    }
    if (g.kind == GateKind::Measure) {
        if (bit_written_[g.cbit] && !allow_reuse)
            throw DimensionError("classical bit " + std::to_string(g.cbit) +
                                 " already written; pass allow_reuse to overwrite");
        bit_written_[g.cbit] = true;
    }
    if (g.kind == GateKind::CondPauli &&
        g.pauli != 'X' && g.pauli != 'Y' && g.pauli != 'Z')
        throw DimensionError("conditioned Pauli letter must be X, Y or Z");
    gates_.push_back(g);
}

void Circuit::set_label(int cbit, const std::string& name) {
    if (cbit < 0 || cbit >= nc_) throw DimensionError("classical bit out of range");
    labels_[cbit] = name;
}

const std::string& Circuit::label(int cbit) const {
    if (cbit < 0 || cbit >= nc_) throw DimensionError("classical bit out of range");
    return labels_[cbit];
}

int Circuit::bit(const std::string& name) const {
    for (int i = 0; i < nc_; ++i)
        if (labels_[i] == name) return i;
    throw DimensionError("no classical bit labeled \"" + name + "\"");
}

int Circuit::count_1q() const {
    int n = 0;
    for (const auto& g : gates_)
        if (!g.two_qubit() && !g.branching()) ++n;
    return n;
}

int Circuit::count_2q() const {
    int n = 0;
    for (const auto& g : gates_)
        if (g.two_qubit()) ++n;
    return n;
}

int Circuit::count_measure() const {
    int n = 0;
    for (const auto& g : gates_)
        if (g.kind == GateKind::Measure) ++n;
    return n;
}

int Circuit::count_branching() const {
    int n = 0;
    for (const auto& g : gates_)
        if (g.branching()) ++n;
    return n;
}

std::string gate_text(const Gate& g) {
    std::ostringstream out;
    switch (g.kind) {
        case GateKind::H: out << "H q" << g.q0; break;
        case GateKind::S: out << "S q" << g.q0; break;
        case GateKind::X: out << "X q" << g.q0; break;
        case GateKind::Y: out << "Y q" << g.q0; break;
        case GateKind::Z: out << "Z q" << g.q0; break;
        case GateKind::RX: out << "RX(" << g12(g.theta) << ") q" << g.q0; break;
        case GateKind::RY: out << "RY(" << g12(g.theta) << ") q" << g.q0; break;
        case GateKind::CNOT: out << "CNOT q" << g.q0 << " q" << g.q1; break;
        case GateKind::CY: out << "CY q" << g.q0 << " q" << g.q1; break;
        case GateKind::Measure: out << "M q" << g.q0 << " -> c" << g.cbit; break;
        case GateKind::Reset: out << "RESET q" << g.q0; break;
        case GateKind::CondPauli:
            out << "IF c" << g.cbit << ' ' << g.pauli << " q" << g.q0;
            break;
    }
    return out.str();
}

std::string Circuit::dump() const {
    std::string out;
    for (const auto& g : gates_) {
        out += gate_text(g);
        out += '\n';
    }
    return out;
}

Circuit Circuit::with_inserted(std::size_t position, const Gate& g) const {
    if (position > gates_.size())
        throw DimensionError("insertion position past end of circuit");
    Circuit out(nq_, nc_);
    out.labels_ = labels_;
    for (std::size_t i = 0; i < gates_.size(); ++i) {
        if (i == position) out.append(g, true);
        out.append(gates_[i], true);
    }
    if (position == gates_.size()) out.append(g, true);
    return out;
}

}  // namespace c4s
