#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "c4shadow/pauli.hpp"
#include "c4shadow/sim.hpp"

namespace c4s {

enum class EnsembleMode { RandomPerShot, FixedGrid };

// Per-qubit measurement basis distribution. In fixed-grid mode the basis
// word is chosen by the experiment design rather than sampled, and the
// weights describe the share of shots each basis receives.
struct MeasurementEnsemble {
    std::string bases;            // subset of "XYZ", unique letters
    std::vector<double> weights;  // positive, normalized, same length
    EnsembleMode mode = EnsembleMode::FixedGrid;

    static MeasurementEnsemble uniform(const std::string& bases,
                                       EnsembleMode mode = EnsembleMode::FixedGrid);
    void validate() const;
    bool supports(char basis) const { return bases.find(basis) != std::string::npos; }
};

// Inverse of the per-qubit measurement channel, diagonal in the Pauli
// basis: the identity component passes through, the component along each
// sampled basis is rescaled by 1/weight, all others are annihilated.
struct InverseChannel {
    std::string bases;
    std::array<double, 3> scale{0, 0, 0};  // X, Y, Z

    Eigen::Matrix2cd apply(const Eigen::Matrix2cd& a) const;
};

InverseChannel inverse_channel(const MeasurementEnsemble& ensemble);

struct SnapshotEstimator {
    std::vector<Eigen::Matrix2cd> factors;
    std::string setting;
    std::string outcome;
    std::string supported;  // basis letters the source ensemble can estimate
};

SnapshotEstimator make_snapshot(const std::string& setting, const std::string& outcome,
                                const InverseChannel& ch);

// Tr(P restricted to each qubit times the qubit's factor), multiplied out.
double snapshot_pauli_value(const SnapshotEstimator& snap, const PauliString& p);

struct Estimate {
    double value = 0;
    double std_error = 0;
    std::int64_t n = 0;
};

struct EstimatorOptions {
    bool median_of_means = false;
    int mom_groups = 10;
};

Estimate estimate_pauli(const std::vector<SnapshotEstimator>& snaps, const PauliString& p,
                        const EstimatorOptions& opt = {});
Estimate estimate_energy(const std::vector<SnapshotEstimator>& snaps, const ObservableSum& h,
                         const EstimatorOptions& opt = {});

// One line per shot in the store file: `<setting> <bits> <accepted> <reason>`,
// with bits written as `--` for rejected shots. Append-only and sufficient
// to re-run estimation without re-simulation.
struct StoreRecord {
    std::string setting;
    std::string bits;  // logical outcome bits, empty/"--" when rejected
    bool accepted = false;
    std::string reason = "none";
};

struct ShotStore {
    std::vector<StoreRecord> records;

    void save(std::ostream& out) const;
    void save_file(const std::string& path) const;
    static ShotStore load(std::istream& in);
    static ShotStore load_file(const std::string& path);
};

// Outcome tallies per measurement setting for two logical bits; the compact
// form every estimator and the bootstrap work from.
struct SettingCounts {
    std::string setting;
    std::array<std::int64_t, 4> outcomes{0, 0, 0, 0};  // index = 2*b1 + b2
    std::int64_t rejected = 0;

    std::int64_t accepted() const { return outcomes[0] + outcomes[1] + outcomes[2] + outcomes[3]; }
    std::int64_t total() const { return accepted() + rejected; }
};

using CountsTable = std::vector<SettingCounts>;

// Strata appear in order of first appearance in the store.
CountsTable counts_from_store(const ShotStore& store);

struct GridProvenance {
    std::map<std::string, std::vector<std::string>> pooling;  // Pauli word -> settings used
    std::map<std::string, std::int64_t> shots_per_pauli;
    std::map<std::string, std::int64_t> accepted_per_setting;
};

// Fixed-grid estimators: a Pauli word is estimated from every setting whose
// basis letters agree with the word's non-identity letters; its eigenvalue
// per shot is the parity of the corresponding outcome bits.
Estimate estimate_pauli_grid(const CountsTable& counts, const std::string& word);
Estimate estimate_energy_grid(const CountsTable& counts, const ObservableSum& h,
                              GridProvenance* prov = nullptr);

// Snapshot-channel estimators recomputed from outcome tallies: the mean over
// accepted shots of the per-(setting, outcome) inverted-channel value. Used
// when the basis word was sampled per shot instead of fixed by the grid.
Estimate estimate_pauli_from_counts(const CountsTable& counts, const PauliString& p,
                                    const MeasurementEnsemble& ensemble);
Estimate estimate_energy_from_counts(const CountsTable& counts, const ObservableSum& h,
                                     const MeasurementEnsemble& ensemble);

std::string sample_setting(const MeasurementEnsemble& ensemble, int n_qubits, Rng& rng);

}  // namespace c4s
