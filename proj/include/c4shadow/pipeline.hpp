#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "c4shadow/bootstrap.hpp"
#include "c4shadow/c4.hpp"
#include "c4shadow/chem_io.hpp"
#include "c4shadow/eigen_solver.hpp"
#include "c4shadow/shadows.hpp"
#include "c4shadow/sim.hpp"

namespace c4s {

inline constexpr const char* kArtifactVersion = "0.1.0";

// Noise selection as configured: a named preset plus optional per-field
// overrides applied on top of it.
struct NoiseSpec {
    std::string preset = "none";
    std::optional<double> p1, p2, pm, p_prep;

    NoiseModel resolve() const;
};

enum class CircuitVariant { Unencoded, Encoded, Both };
std::string variant_name(CircuitVariant v);
CircuitVariant variant_from_name(const std::string& name);

// Parsed from a sectioned key = value file:
//
//   [hamiltonian]  path, format (pauli | fcidump)
//   [circuit]      angles ("solve" or three numbers), variant
//   [sampling]     shots, settings (e.g. "XX XZ ZX ZZ"), ensemble (grid | random)
//   [noise]        preset, p1, p2, pm, p_prep
//   [estimation]   resamples, level, sweep_increment
//   [run]          seed, out
//
// Unknown sections or keys are rejected. `shots` counts per setting in grid
// mode and total snapshots in random mode. Random per-shot bases pair only
// with the unencoded variant.
struct ExperimentConfig {
    std::string hamiltonian_path;
    std::string hamiltonian_format = "pauli";
    bool solve_angles = true;
    PrepAngles angles;
    CircuitVariant variant = CircuitVariant::Unencoded;
    std::int64_t shots = 1000;
    std::vector<LogicalSetting> settings{LogicalSetting::XX, LogicalSetting::XZ,
                                         LogicalSetting::ZX, LogicalSetting::ZZ};
    std::string ensemble = "grid";
    NoiseSpec noise;
    std::uint64_t seed = 1;
    int resamples = 5000;
    double level = 0.95;
    std::int64_t sweep_increment = 0;  // 0 disables the sweep series
    std::string out_dir = ".";

    void validate() const;  // ranges and combinations; does not touch the filesystem
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Stable field-by-field serialization of everything that defines the
// experiment (seed and output directory excluded; those are reported
// separately) and its FNV-1a fingerprint.
std::string canonical_config_text(const ExperimentConfig& cfg);
std::string config_hash(const ExperimentConfig& cfg);

ObservableSum load_hamiltonian(const std::string& path, const std::string& format);

struct GateTally {
    int one_qubit = 0;
    int two_qubit = 0;
    int measurements = 0;
    bool two_qubit_is_24 = false;  // reported, never enforced
};

struct ResultRecord {
    std::string variant;
    double e_exact = 0;
    double energy = 0;
    double std_error = 0;
    double ci_low = 0, ci_high = 0;
    double iqr_low = 0, iqr_high = 0;
    double boot_mean = 0, boot_median = 0;
    double delta_mha = 0;  // (energy - e_exact) in millihartree
    bool chemical_accuracy = false;
    std::int64_t accepted = 0, total = 0;
    std::map<std::string, std::int64_t> rejections;   // reason name -> count
    std::map<std::string, Estimate> expectations;     // the eight logical words
    std::map<std::string, GateTally> gate_counts;     // per setting, grid mode
    std::string cfg_hash;
    std::uint64_t seed = 0;
    std::string version = kArtifactVersion;
    int resamples = 0;
    double level = 0;
};

void write_result_json(const ResultRecord& r, std::ostream& out);

struct CompareRecord {
    std::string label_a, label_b;
    double truth = 0;
    double energy_a = 0, energy_b = 0;
    double prob_a_better = 0;  // P(|A - truth| < |B - truth|) over paired resamples
    bool meets_97_level = false;
    std::string cfg_hash;
    std::uint64_t seed = 0;
};

void write_compare_json(const CompareRecord& r, std::ostream& out);

// Ground problem solved once and shared by every later stage.
struct PipelineContext {
    ObservableSum hamiltonian;
    GroundSolution ground;
    PrepAngles angles;
};

PipelineContext prepare_context(const ExperimentConfig& cfg);

// Simulates one variant at the configured budget and returns the decoded
// shot store, with records interleaved round-robin across settings so any
// prefix covers the whole grid.
ShotStore simulate_variant(const ExperimentConfig& cfg, const PipelineContext& ctx,
                           CircuitVariant which);

// Estimation plus bootstrap on an existing store. The retained bootstrap is
// exposed through boot_out for paired comparisons.
ResultRecord estimate_record(const ExperimentConfig& cfg, const PipelineContext& ctx,
                             const ShotStore& store, const std::string& variant_label,
                             BootstrapSummary* boot_out = nullptr);

std::vector<SweepPoint> sweep_series(const ExperimentConfig& cfg, const PipelineContext& ctx,
                                     const ShotStore& store);

CompareRecord compare_stores(const ExperimentConfig& cfg, const PipelineContext& ctx,
                             const ShotStore& a, const ShotStore& b, const std::string& label_a,
                             const std::string& label_b);

struct PipelineResult {
    std::vector<ResultRecord> results;
    std::optional<CompareRecord> comparison;
    std::vector<std::string> files;  // paths written, in order
};

// Full flow: load, solve, simulate, store, estimate, bootstrap, optional
// sweep, optional paired comparison. Every file lands in cfg.out_dir; a
// status file reads "complete" only after all writes succeed. Stage errors
// are rethrown tagged with the stage name and config hash.
PipelineResult run_pipeline(const ExperimentConfig& cfg);

}  // namespace c4s
