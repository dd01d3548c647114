#include "c4shadow/sim.hpp"

#include <cmath>
#include <complex>
#include <thread>

namespace c4s {

namespace {

using cplx = std::complex<double>;
constexpr cplx kI{0.0, 1.0};

std::size_t mask_of(const StateVector& psi, int q) {
    if (q < 0 || q >= psi.n_qubits)
        throw DimensionError("qubit index " + std::to_string(q) + " out of range");
    return std::size_t{1} << (psi.n_qubits - 1 - q);
}

template <class PairOp>
void for_pairs(StateVector& psi, std::size_t m, PairOp&& f) {
    std::size_t half = psi.amp.size() / 2;
    std::size_t low = m - 1;
    for (std::size_t i = 0; i < half; ++i) {
        std::size_t i0 = ((i & ~low) << 1) | (i & low);
        f(psi.amp[i0], psi.amp[i0 | m]);
    }
}

void apply_pauli(StateVector& psi, int q, char letter) {
    std::size_t m = mask_of(psi, q);
    switch (letter) {
        case 'X':
            for_pairs(psi, m, [](cplx& a, cplx& b) { std::swap(a, b); });
            break;
        case 'Y':
            for_pairs(psi, m, [](cplx& a, cplx& b) {
                cplx a0 = a;
                a = -kI * b;
                b = kI * a0;
            });
            break;
        case 'Z':
            for_pairs(psi, m, [](cplx&, cplx& b) { b = -b; });
            break;
        default:
            throw DimensionError("unknown Pauli letter");
    }
}

int sample_and_project(StateVector& psi, std::size_t m, Rng& rng) {
    double p1 = 0;
    std::size_t dim = psi.amp.size();
    for (std::size_t i = 0; i < dim; ++i)
        if (i & m) p1 += std::norm(psi.amp[i]);
    int outcome = rng.uniform() < p1 ? 1 : 0;
    double pb = outcome ? p1 : 1.0 - p1;
    if (pb < 1e-300)
        throw SimulationError("measurement branch probability underflow");
    double scale = 1.0 / std::sqrt(pb);
    for (std::size_t i = 0; i < dim; ++i) {
        if (((i & m) != 0) != (outcome == 1))
            psi.amp[i] = 0;
        else
            psi.amp[i] *= scale;
    }
    return outcome;
}

// Projects deterministically onto the given outcome, returning the branch
// probability; used by exact enumeration.
double project(StateVector& psi, std::size_t m, int outcome) {
    double p = 0;
    std::size_t dim = psi.amp.size();
    for (std::size_t i = 0; i < dim; ++i)
        if (((i & m) != 0) == (outcome == 1)) p += std::norm(psi.amp[i]);
    if (p <= 0) return 0;
    double scale = 1.0 / std::sqrt(p);
    for (std::size_t i = 0; i < dim; ++i) {
        if (((i & m) != 0) != (outcome == 1))
            psi.amp[i] = 0;
        else
            psi.amp[i] *= scale;
    }
    return p;
}

}  // namespace

NoiseModel NoiseModel::preset(const std::string& name) {
    if (name == "none") return {};
    if (name == "h1-like") return {5e-5, 2e-3, 3e-3, 3e-3};
    throw ConfigError("unknown noise preset \"" + name + "\"");
}

void NoiseModel::validate() const {
    for (double p : {p1, p2, pm, p_prep})
        if (!(p >= 0.0 && p <= 1.0))
            throw ConfigError("noise probabilities must lie in [0, 1]");
}

void apply_gate(StateVector& psi, const Gate& g, std::vector<uint8_t>& cbits, Rng& rng) {
    const double r2 = 1.0 / std::sqrt(2.0);
    switch (g.kind) {
        case GateKind::H: {
            std::size_t m = mask_of(psi, g.q0);
            for_pairs(psi, m, [&](cplx& a, cplx& b) {
                cplx a0 = a;
                a = (a0 + b) * r2;
                b = (a0 - b) * r2;
            });
            break;
        }
        case GateKind::S: {
            std::size_t m = mask_of(psi, g.q0);
            for_pairs(psi, m, [](cplx&, cplx& b) { b *= kI; });
            break;
        }
        case GateKind::X:
        case GateKind::Y:
        case GateKind::Z:
            apply_pauli(psi, g.q0,
                        g.kind == GateKind::X ? 'X' : (g.kind == GateKind::Y ? 'Y' : 'Z'));
            break;
        case GateKind::RX: {
            std::size_t m = mask_of(psi, g.q0);
            double c = std::cos(g.theta / 2), s = std::sin(g.theta / 2);
            for_pairs(psi, m, [&](cplx& a, cplx& b) {
                cplx a0 = a;
                a = c * a0 - kI * s * b;
                b = -kI * s * a0 + c * b;
            });
            break;
        }
        case GateKind::RY: {
            std::size_t m = mask_of(psi, g.q0);
            double c = std::cos(g.theta / 2), s = std::sin(g.theta / 2);
            for_pairs(psi, m, [&](cplx& a, cplx& b) {
                cplx a0 = a;
                a = c * a0 - s * b;
                b = s * a0 + c * b;
            });
            break;
        }
        case GateKind::CNOT: {
            std::size_t mc = mask_of(psi, g.q0), mt = mask_of(psi, g.q1);
            std::size_t dim = psi.amp.size();
            for (std::size_t i = 0; i < dim; ++i)
                if ((i & mc) && !(i & mt)) std::swap(psi.amp[i], psi.amp[i | mt]);
            break;
        }
        case GateKind::CY: {
            std::size_t mc = mask_of(psi, g.q0), mt = mask_of(psi, g.q1);
            std::size_t dim = psi.amp.size();
            for (std::size_t i = 0; i < dim; ++i)
                if ((i & mc) && !(i & mt)) {
                    cplx a0 = psi.amp[i];
                    psi.amp[i] = -kI * psi.amp[i | mt];
                    psi.amp[i | mt] = kI * a0;
                }
            break;
        }
        case GateKind::Measure: {
            int outcome = sample_and_project(psi, mask_of(psi, g.q0), rng);
            cbits.at(g.cbit) = static_cast<uint8_t>(outcome);
            break;
        }
        case GateKind::Reset: {
            int outcome = sample_and_project(psi, mask_of(psi, g.q0), rng);
            if (outcome == 1) apply_pauli(psi, g.q0, 'X');
            break;
        }
        case GateKind::CondPauli:
            if (cbits.at(g.cbit)) apply_pauli(psi, g.q0, g.pauli);
            break;
    }
}

void apply_gate(StateVector& psi, const Gate& g) {
    if (g.branching() || g.kind == GateKind::CondPauli)
        throw UnsupportedError("gate needs classical bits or randomness");
    std::vector<uint8_t> cbits;
    Rng rng(0, 0);
    apply_gate(psi, g, cbits, rng);
}

StateVector evolve_unitary(const Circuit& c, std::size_t gate_begin, std::size_t gate_end,
                           StateVector psi) {
    const auto& gs = c.gates();
    for (std::size_t i = gate_begin; i < gate_end && i < gs.size(); ++i)
        apply_gate(psi, gs[i]);
    return psi;
}

namespace {

void depolarize_1q(StateVector& psi, int q, double p, Rng& rng) {
    if (rng.uniform() < 0.75 * p)
        apply_pauli(psi, q, "XYZ"[rng.below(3)]);
}

void depolarize_2q(StateVector& psi, int q0, int q1, double p, Rng& rng) {
    if (rng.uniform() < 0.9375 * p) {
        uint32_t idx = 1 + rng.below(15);
        static const char letters[4] = {'I', 'X', 'Y', 'Z'};
        char a = letters[idx >> 2], b = letters[idx & 3];
        if (a != 'I') apply_pauli(psi, q0, a);
        if (b != 'I') apply_pauli(psi, q1, b);
    }
}

ShotRecord run_one_shot(const Circuit& c, const NoiseModel& noise, uint64_t seed,
                        uint64_t shot, const StateVector* prefix, std::size_t suffix_begin) {
    Rng rng(seed, shot);
    StateVector psi = prefix ? *prefix : StateVector::zero_state(c.n_qubits());
    std::vector<uint8_t> cbits(static_cast<std::size_t>(c.n_cbits()), 0);
    if (!prefix && noise.p_prep > 0)
        for (int q = 0; q < c.n_qubits(); ++q)
            if (rng.uniform() < noise.p_prep) apply_pauli(psi, q, 'X');
    const auto& gs = c.gates();
    for (std::size_t i = prefix ? suffix_begin : 0; i < gs.size(); ++i) {
        const Gate& g = gs[i];
        bool fired = g.kind != GateKind::CondPauli || cbits.at(g.cbit);
        apply_gate(psi, g, cbits, rng);
        if (noise.is_zero()) continue;
        if (g.two_qubit()) {
            if (noise.p2 > 0) depolarize_2q(psi, g.q0, g.q1, noise.p2, rng);
        } else if (g.kind == GateKind::Measure) {
            if (noise.pm > 0 && rng.uniform() < noise.pm) cbits[g.cbit] ^= 1;
        } else if (g.kind == GateKind::Reset) {
            if (noise.p_prep > 0 && rng.uniform() < noise.p_prep) apply_pauli(psi, g.q0, 'X');
        } else if (fired) {
            if (noise.p1 > 0) depolarize_1q(psi, g.q0, noise.p1, rng);
        }
    }
    return {std::move(cbits), seed, shot};
}

}  // namespace

std::vector<ShotRecord> run_shots(const Circuit& c, const NoiseModel& noise,
                                  uint64_t seed, std::size_t shots, int n_threads) {
    noise.validate();
    if (shots < 1) throw ConfigError("shots must be at least 1");
    if (n_threads < 1) throw ConfigError("thread count must be at least 1");

    // Noiseless shots share the deterministic prefix before the first
    // branching or conditioned gate.
    StateVector prefix;
    std::size_t suffix_begin = 0;
    bool use_prefix = noise.is_zero();
    if (use_prefix) {
        const auto& gs = c.gates();
        while (suffix_begin < gs.size() && !gs[suffix_begin].branching() &&
               gs[suffix_begin].kind != GateKind::CondPauli)
            ++suffix_begin;
        prefix = evolve_unitary(c, 0, suffix_begin, StateVector::zero_state(c.n_qubits()));
    }

    std::vector<ShotRecord> records(shots);
    auto work = [&](std::size_t first, std::size_t step) {
        for (std::size_t i = first; i < shots; i += step)
            records[i] = run_one_shot(c, noise, seed, i,
                                      use_prefix ? &prefix : nullptr, suffix_begin);
    };
    if (n_threads == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int t = 0; t < n_threads; ++t)
            pool.emplace_back(work, static_cast<std::size_t>(t), static_cast<std::size_t>(n_threads));
        for (auto& th : pool) th.join();
    }
    return records;
}

namespace {

void enumerate_rec(const Circuit& c, StateVector psi, std::vector<uint8_t> cbits,
                   std::size_t gate_idx, double prob,
                   std::map<std::string, double>& out) {
    const auto& gs = c.gates();
    Rng dummy(0, 0);
    for (std::size_t i = gate_idx; i < gs.size(); ++i) {
        const Gate& g = gs[i];
        if (!g.branching()) {
            apply_gate(psi, g, cbits, dummy);
            continue;
        }
        std::size_t m = mask_of(psi, g.q0);
        for (int outcome : {0, 1}) {
            StateVector child = psi;
            double pb = project(child, m, outcome);
            double child_prob = prob * pb;
            if (child_prob < 1e-30) continue;
            std::vector<uint8_t> child_bits = cbits;
            if (g.kind == GateKind::Measure)
                child_bits.at(g.cbit) = static_cast<uint8_t>(outcome);
            else if (outcome == 1)
                apply_pauli(child, g.q0, 'X');
            enumerate_rec(c, std::move(child), std::move(child_bits), i + 1,
                          child_prob, out);
        }
        return;
    }
    std::string key(cbits.size(), '0');
    for (std::size_t j = 0; j < cbits.size(); ++j)
        if (cbits[j]) key[j] = '1';
    out[key] += prob;
}

}  // namespace

std::map<std::string, double> enumerate_branches(const Circuit& c) {
    if (c.count_branching() > 20)
        throw CapacityError("circuit has " + std::to_string(c.count_branching()) +
                            " branching operations; the enumeration cap is 20");
    std::map<std::string, double> out;
    enumerate_rec(c, StateVector::zero_state(c.n_qubits()),
                  std::vector<uint8_t>(static_cast<std::size_t>(c.n_cbits()), 0), 0, 1.0, out);
    return out;
}

}  // namespace c4s
