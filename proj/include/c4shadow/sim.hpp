#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "c4shadow/circuit.hpp"
#include "c4shadow/pauli.hpp"
#include "c4shadow/util.hpp"

namespace c4s {

// Counter-based per-stream generator. Streams derived from (seed, stream id)
// are independent, so shot-level parallelism cannot reorder draws.
class Rng {
public:
    Rng(uint64_t seed, uint64_t stream)
        : state_(mix64(seed + 0x9E3779B97F4A7C15ULL) ^
                 mix64((stream + 1) * 0xD1B54A32D192ED03ULL)) {}

    uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    uint32_t below(uint32_t n) { return static_cast<uint32_t>(next() % n); }

private:
    uint64_t state_;
};

struct NoiseModel {
    double p1 = 0;      // depolarizing after each one-qubit gate
    double p2 = 0;      // depolarizing after each two-qubit gate
    double pm = 0;      // classical flip of each recorded measurement bit
    double p_prep = 0;  // X flip after each reset and initial preparation

    static NoiseModel none() { return {}; }
    static NoiseModel preset(const std::string& name);

    bool is_zero() const { return p1 == 0 && p2 == 0 && pm == 0 && p_prep == 0; }
    void validate() const;
};

struct ShotRecord {
    std::vector<uint8_t> bits;
    uint64_t seed = 0;
    uint64_t shot_index = 0;
};

// Applies one gate in place. Measure and Reset draw from rng; Measure and
// CondPauli touch cbits. Throws on dimension mismatch.
void apply_gate(StateVector& psi, const Gate& g, std::vector<uint8_t>& cbits, Rng& rng);

// Unitary-only convenience; errors on branching or conditioned gates.
void apply_gate(StateVector& psi, const Gate& g);

std::vector<ShotRecord> run_shots(const Circuit& c, const NoiseModel& noise,
                                  uint64_t seed, std::size_t shots, int n_threads = 1);

// Exact outcome distribution of a noiseless circuit, keyed by the final
// classical bit string (character i = classical bit i).
std::map<std::string, double> enumerate_branches(const Circuit& c);

// Evolves the zero state through a noiseless, non-branching prefix of gates.
StateVector evolve_unitary(const Circuit& c, std::size_t gate_begin, std::size_t gate_end,
                           StateVector psi);

}  // namespace c4s
