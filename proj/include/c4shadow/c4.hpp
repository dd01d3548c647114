#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "c4shadow/circuit.hpp"
#include "c4shadow/eigen_solver.hpp"
#include "c4shadow/pauli.hpp"
#include "c4shadow/sim.hpp"

namespace c4s {

// Physical qubit assignment for the encoded experiment: a 4-qubit code
// block, one ancilla pair per teleported rotation, the two check readout
// qubits, and the repeated-measurement ancilla.
struct C4Layout {
    std::array<int, 4> data{0, 1, 2, 3};
    std::array<std::array<int, 2>, 3> rot_pairs{{{4, 5}, {6, 7}, {8, 9}}};  // alpha, beta, gamma
    int check_x = 10;
    int check_z = 11;
    int repeat_anc = 12;

    void validate() const;  // all 13 distinct
};

enum class LogicalSetting { XX, XZ, ZX, ZZ };

const std::array<LogicalSetting, 4>& all_settings();
std::string setting_name(LogicalSetting s);
LogicalSetting setting_from_name(const std::string& name);
char setting_basis(LogicalSetting s, int logical_qubit);  // 'X' or 'Z'

enum class RejectReason {
    None,
    StabilizerDetect,
    FlagDisagree,
    RepeatedMeasureDisagree,
    AlphaFrameNontrivial,
};
std::string reject_reason_name(RejectReason r);

struct PauliFrame {
    PauliString logical{2};                       // accumulated correction
    std::array<uint8_t, 3> teleport_outcomes{0, 0, 0};  // alpha, beta, gamma
};

struct DecodedShot {
    bool accepted = false;
    RejectReason reason = RejectReason::None;
    std::array<uint8_t, 2> logical_bits{0, 0};  // meaningful iff accepted
    PauliFrame frame;
};

struct DecodeMeta {
    LogicalSetting setting = LogicalSetting::ZZ;
    C4Layout layout;
    int n_cbits = 0;

    int flag_x_bit = -1;
    int flag_z_bit = -1;
    int block_flag_bit = -1;  // ZZ only: X-block parity measured before readout
    std::array<int, 2> alpha_bits{-1, -1};
    std::array<int, 2> beta_bits{-1, -1};
    std::array<int, 2> gamma_bits{-1, -1};
    std::array<int, 2> repeat_bits{-1, -1};  // XZ/ZX only
    std::array<int, 4> data_bits{-1, -1, -1, -1};

    // Which data-readout positions enter each logical parity; unused for a
    // bit that comes from the repeated ancilla measurement instead.
    std::array<uint8_t, 4> b1_parity{0, 0, 0, 0};
    std::array<uint8_t, 4> b2_parity{0, 0, 0, 0};
    bool b1_from_repeat = false;
    bool b2_from_repeat = false;

    struct Range {
        std::size_t begin = 0, end = 0;
    };
    Range encode_range, verify_range, alpha_range, beta_range, gamma_range, readout_range;

    // The logical CNOT is realized by relabeling two data qubits between
    // preparation and readout; recorded here, applied in the parity tables.
    std::string relabel_note;
};

Circuit build_unencoded_circuit(const PrepAngles& angles, LogicalSetting setting);
std::pair<Circuit, DecodeMeta> build_encoded_circuit(const PrepAngles& angles,
                                                     LogicalSetting setting);

DecodedShot decode_shot(const ShotRecord& raw, const DecodeMeta& meta);

// Accepted-conditional distribution over logical outcomes "00".."11" from an
// exact branch map; *p_accept (optional) receives the acceptance probability.
std::map<std::string, double> accepted_logical_distribution(
    const std::map<std::string, double>& branches, const DecodeMeta& meta,
    double* p_accept = nullptr);

enum class FaultBlock { Prep, Rotations, Measurement, All };
std::string fault_block_name(FaultBlock b);
FaultBlock fault_block_from_name(const std::string& name);

enum class FaultClass { Benign, Detected, UndetectedLogical };
std::string fault_class_name(FaultClass c);

struct AuditRow {
    std::string location;
    std::string pauli;  // "X", "Y", "Z", or "bitflip"
    FaultClass cls = FaultClass::Benign;
};

struct AuditReport {
    FaultBlock block = FaultBlock::All;
    LogicalSetting setting = LogicalSetting::ZZ;
    int benign = 0;
    int detected = 0;
    int undetected_logical = 0;
    double baseline_acceptance = 0;
    std::vector<AuditRow> rows;
};

AuditReport fault_audit(FaultBlock block, LogicalSetting setting, const PrepAngles& angles);

double tvd(const std::map<std::string, double>& a, const std::map<std::string, double>& b);

}  // namespace c4s
