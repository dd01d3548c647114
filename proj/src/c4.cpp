#include "c4shadow/c4.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string_view>

namespace c4s {

// Logical operator convention, stated once. Stabilizers of the data block
// are XXXX and ZZZZ. The logical CNOT between the two encoded qubits is
// performed by relabeling data qubits 2 and 4; every table below is written
// in the relabeled frame the readout sees:
//
//   X1 = X on d1, d4       Z1 = Z on d2, d4
//   X2 = X on d2, d4       Z2 = Z on d2, d3
//   I (x) Y on the encoded pair = Y d2, Z d3, X d4
//
// The logical-equivalence test, not this table, is authoritative; the table
// must make that test pass.

void C4Layout::validate() const {
    std::set<int> seen;
    auto put = [&](int q) {
        if (q < 0 || !seen.insert(q).second)
            throw DimensionError("layout indices must be 13 distinct non-negative qubits");
    };
    for (int q : data) put(q);
    for (const auto& pair : rot_pairs)
        for (int q : pair) put(q);
    put(check_x);
    put(check_z);
    put(repeat_anc);
}

const std::array<LogicalSetting, 4>& all_settings() {
    static const std::array<LogicalSetting, 4> s{LogicalSetting::XX, LogicalSetting::XZ,
                                                 LogicalSetting::ZX, LogicalSetting::ZZ};
    return s;
}

std::string setting_name(LogicalSetting s) {
    switch (s) {
        case LogicalSetting::XX: return "XX";
        case LogicalSetting::XZ: return "XZ";
        case LogicalSetting::ZX: return "ZX";
        case LogicalSetting::ZZ: return "ZZ";
    }
    throw DimensionError("invalid setting");
}

LogicalSetting setting_from_name(const std::string& name) {
    for (LogicalSetting s : all_settings())
        if (setting_name(s) == name) return s;
    throw ConfigError("unknown measurement setting \"" + name + "\"");
}

char setting_basis(LogicalSetting s, int logical_qubit) {
    std::string n = setting_name(s);
    if (logical_qubit < 1 || logical_qubit > 2)
        throw DimensionError("logical qubit index must be 1 or 2");
    return n[logical_qubit - 1];
}

std::string reject_reason_name(RejectReason r) {
    switch (r) {
        case RejectReason::None: return "none";
        case RejectReason::StabilizerDetect: return "stabilizer-detect";
        case RejectReason::FlagDisagree: return "flag-disagree";
        case RejectReason::RepeatedMeasureDisagree: return "repeated-measure-disagree";
        case RejectReason::AlphaFrameNontrivial: return "alpha-frame-nontrivial";
    }
    throw DimensionError("invalid rejection reason");
}

Circuit build_unencoded_circuit(const PrepAngles& angles, LogicalSetting setting) {
    Circuit c(2, 2);
    c.append(Gate::ry(0, angles.alpha));
    c.append(Gate::ry(1, angles.beta));
    c.append(Gate::cnot(0, 1));
    c.append(Gate::ry(1, angles.gamma));
    if (setting_basis(setting, 1) == 'X') c.append(Gate::h(0));
    if (setting_basis(setting, 2) == 'X') c.append(Gate::h(1));
    c.append(Gate::measure(0, 0));
    c.append(Gate::measure(1, 1));
    c.set_label(0, "b1");
    c.set_label(1, "b2");
    return c;
}

namespace {

// The encoded circuit as a declarative table: stage, operation, slots,
// angle selector, classical-bit label. Classical bits are numbered in order
// of first appearance.
struct TemplateRow {
    const char* stage;
    const char* op;
    const char* a;
    const char* b;
    const char* angle;
    const char* cbit;
};

// clang-format off
constexpr TemplateRow kMainTemplate[] = {
    // Bell halves and code-block preparation.
    {"encode", "H",    "d2", "",        "", ""},
    {"encode", "H",    "d3", "",        "", ""},
    {"encode", "H",    "d4", "",        "", ""},
    {"encode", "CNOT", "d3", "a_beta",  "", ""},
    {"encode", "CNOT", "d2", "a_alpha", "", ""},
    {"encode", "CNOT", "d4", "d2",      "", ""},
    {"encode", "CNOT", "d3", "d1",      "", ""},
    {"encode", "CNOT", "d2", "d1",      "", ""},
    {"encode", "CNOT", "d4", "d3",      "", ""},
    // Interleaved weight-4 X-type and Z-type checks with shared readout.
    {"verify", "H",    "s_x", "",        "", ""},
    {"verify", "CNOT", "s_x", "a_alpha", "", ""},
    {"verify", "CNOT", "a_beta", "s_z",  "", ""},
    {"verify", "CNOT", "s_x", "a_beta",  "", ""},
    {"verify", "CNOT", "a_alpha", "s_z", "", ""},
    {"verify", "CNOT", "s_x", "d3",      "", ""},
    {"verify", "CNOT", "d2", "s_z",      "", ""},
    {"verify", "CNOT", "s_x", "d2",      "", ""},
    {"verify", "CNOT", "d3", "s_z",      "", ""},
    {"verify", "H",    "s_x", "",        "", ""},
    {"verify", "M",    "s_x", "",        "", "flag_x"},
    {"verify", "M",    "s_z", "",        "", "flag_z"},
    // Teleported rotation on logical qubit 1, duplicated readout.
    {"alpha", "S",    "a_alpha", "",             "",      ""},
    {"alpha", "RX",   "a_alpha", "",             "alpha", ""},
    {"alpha", "CNOT", "a_alpha", "a_alpha_copy", "",      ""},
    {"alpha", "M",    "a_alpha", "",             "",      "m_alpha"},
    {"alpha", "M",    "a_alpha_copy", "",        "",      "m_alpha_copy"},
    // Teleported rotation on logical qubit 2, duplicated readout.
    {"beta", "S",    "a_beta", "",            "",     ""},
    {"beta", "RX",   "a_beta", "",            "beta", ""},
    {"beta", "CNOT", "a_beta", "a_beta_copy", "",     ""},
    {"beta", "M",    "a_beta", "",            "",     "m_beta"},
    {"beta", "M",    "a_beta_copy", "",       "",     "m_beta_copy"},
    // Second rotation on logical qubit 2: ancilla-controlled logical
    // I (x) Y (CY d2, CZ d3 via H-CNOT-H, CX d4), then the rotation.
    {"gamma", "H",    "a_gamma", "",             "",      ""},
    {"gamma", "CNOT", "a_gamma", "d4",           "",      ""},
    {"gamma", "H",    "d3", "",                  "",      ""},
    {"gamma", "CNOT", "a_gamma", "d3",           "",      ""},
    {"gamma", "H",    "d3", "",                  "",      ""},
    {"gamma", "CY",   "a_gamma", "d2",           "",      ""},
    {"gamma", "RX",   "a_gamma", "",             "gamma", ""},
    {"gamma", "CNOT", "a_gamma", "a_gamma_copy", "",      ""},
    {"gamma", "M",    "a_gamma", "",             "",      "m_gamma"},
    {"gamma", "M",    "a_gamma_copy", "",        "",      "m_gamma_copy"},
};

// The transversal Z readout checks the Z-type block stabilizer through the
// bit parity alone, which is blind to phase errors. The X-type block
// stabilizer is measured explicitly first: the interleaved checks do not
// touch d1 or d4, and a phase error resting on d4 would otherwise flip the
// sign of the third teleported rotation without leaving a trace.
constexpr TemplateRow kReadoutZZ[] = {
    {"readout", "RESET", "m_anc", "",  "", ""},
    {"readout", "H",     "m_anc", "",  "", ""},
    {"readout", "CNOT",  "m_anc", "d1", "", ""},
    {"readout", "CNOT",  "m_anc", "d2", "", ""},
    {"readout", "CNOT",  "m_anc", "d3", "", ""},
    {"readout", "CNOT",  "m_anc", "d4", "", ""},
    {"readout", "H",     "m_anc", "",  "", ""},
    {"readout", "M",     "m_anc", "",  "", "flag_block"},
    {"readout", "M", "d1", "", "", "r1"},
    {"readout", "M", "d2", "", "", "r2"},
    {"readout", "M", "d3", "", "", "r3"},
    {"readout", "M", "d4", "", "", "r4"},
};

constexpr TemplateRow kReadoutXX[] = {
    {"readout", "H", "d1", "", "", ""},
    {"readout", "H", "d2", "", "", ""},
    {"readout", "H", "d3", "", "", ""},
    {"readout", "H", "d4", "", "", ""},
    {"readout", "M", "d1", "", "", "r1"},
    {"readout", "M", "d2", "", "", "r2"},
    {"readout", "M", "d3", "", "", "r3"},
    {"readout", "M", "d4", "", "", "r4"},
};

// Non-destructive X1 measurement, performed twice through complementary
// representatives (X d1 d4, then X d2 d3, equal modulo the X-type block
// stabilizer), then transversal Z readout. A single data-qubit phase error
// flips exactly one of the two outcomes, so it surfaces as a disagreement
// instead of silently inverting the logical bit.
constexpr TemplateRow kReadoutXZ[] = {
    {"readout", "RESET", "m_anc", "",   "", ""},
    {"readout", "H",     "m_anc", "",   "", ""},
    {"readout", "CNOT",  "m_anc", "d1", "", ""},
    {"readout", "CNOT",  "m_anc", "d4", "", ""},
    {"readout", "H",     "m_anc", "",   "", ""},
    {"readout", "M",     "m_anc", "",   "", "rep1"},
    {"readout", "RESET", "m_anc", "",   "", ""},
    {"readout", "H",     "m_anc", "",   "", ""},
    {"readout", "CNOT",  "m_anc", "d2", "", ""},
    {"readout", "CNOT",  "m_anc", "d3", "", ""},
    {"readout", "H",     "m_anc", "",   "", ""},
    {"readout", "M",     "m_anc", "",   "", "rep2"},
    {"readout", "M",     "d1", "", "", "r1"},
    {"readout", "M",     "d2", "", "", "r2"},
    {"readout", "M",     "d3", "", "", "r3"},
    {"readout", "M",     "d4", "", "", "r4"},
};

// Non-destructive X2 measurement, twice through complementary
// representatives (X d2 d4, then X d1 d3), then transversal Z readout.
constexpr TemplateRow kReadoutZX[] = {
    {"readout", "RESET", "m_anc", "",   "", ""},
    {"readout", "H",     "m_anc", "",   "", ""},
    {"readout", "CNOT",  "m_anc", "d2", "", ""},
    {"readout", "CNOT",  "m_anc", "d4", "", ""},
    {"readout", "H",     "m_anc", "",   "", ""},
    {"readout", "M",     "m_anc", "",   "", "rep1"},
    {"readout", "RESET", "m_anc", "",   "", ""},
    {"readout", "H",     "m_anc", "",   "", ""},
    {"readout", "CNOT",  "m_anc", "d1", "", ""},
    {"readout", "CNOT",  "m_anc", "d3", "", ""},
    {"readout", "H",     "m_anc", "",   "", ""},
    {"readout", "M",     "m_anc", "",   "", "rep2"},
    {"readout", "M",     "d1", "", "", "r1"},
    {"readout", "M",     "d2", "", "", "r2"},
    {"readout", "M",     "d3", "", "", "r3"},
    {"readout", "M",     "d4", "", "", "r4"},
};
// clang-format on

int slot_index(const C4Layout& L, std::string_view name) {
    if (name == "d1") return L.data[0];
    if (name == "d2") return L.data[1];
    if (name == "d3") return L.data[2];
    if (name == "d4") return L.data[3];
    if (name == "a_alpha") return L.rot_pairs[0][0];
    if (name == "a_alpha_copy") return L.rot_pairs[0][1];
    if (name == "a_beta") return L.rot_pairs[1][0];
    if (name == "a_beta_copy") return L.rot_pairs[1][1];
    if (name == "a_gamma") return L.rot_pairs[2][0];
    if (name == "a_gamma_copy") return L.rot_pairs[2][1];
    if (name == "s_x") return L.check_x;
    if (name == "s_z") return L.check_z;
    if (name == "m_anc") return L.repeat_anc;
    throw DimensionError("unknown template slot \"" + std::string(name) + "\"");
}

std::pair<const TemplateRow*, std::size_t> readout_table(LogicalSetting s) {
    switch (s) {
        case LogicalSetting::ZZ: return {kReadoutZZ, std::size(kReadoutZZ)};
        case LogicalSetting::XX: return {kReadoutXX, std::size(kReadoutXX)};
        case LogicalSetting::XZ: return {kReadoutXZ, std::size(kReadoutXZ)};
        case LogicalSetting::ZX: return {kReadoutZX, std::size(kReadoutZX)};
    }
    throw DimensionError("invalid setting");
}

}  // namespace

std::pair<Circuit, DecodeMeta> build_encoded_circuit(const PrepAngles& angles,
                                                     LogicalSetting setting) {
    C4Layout layout;
    layout.validate();
    auto [readout_rows, readout_len] = readout_table(setting);

    std::vector<const TemplateRow*> rows;
    for (const auto& r : kMainTemplate) rows.push_back(&r);
    for (std::size_t i = 0; i < readout_len; ++i) rows.push_back(&readout_rows[i]);

    std::map<std::string, int> bit_of;
    int n_cbits = 0;
    for (const auto* r : rows)
        if (*r->cbit && bit_of.emplace(r->cbit, n_cbits).second) ++n_cbits;

    Circuit c(13, n_cbits);
    for (const auto& [label, idx] : bit_of) c.set_label(idx, label);

    DecodeMeta meta;
    meta.setting = setting;
    meta.layout = layout;
    meta.n_cbits = n_cbits;

    auto angle_value = [&](std::string_view sel) {
        if (sel == "alpha") return angles.alpha;
        if (sel == "beta") return angles.beta;
        if (sel == "gamma") return angles.gamma;
        throw DimensionError("unknown angle selector");
    };

    std::map<std::string, DecodeMeta::Range*> range_of{
        {"encode", &meta.encode_range},   {"verify", &meta.verify_range},
        {"alpha", &meta.alpha_range},     {"beta", &meta.beta_range},
        {"gamma", &meta.gamma_range},     {"readout", &meta.readout_range},
    };
    std::string current_stage;
    for (const auto* r : rows) {
        if (r->stage != current_stage) {
            if (!current_stage.empty()) range_of.at(current_stage)->end = c.gates().size();
            range_of.at(r->stage)->begin = c.gates().size();
            current_stage = r->stage;
        }
        std::string_view op = r->op;
        int qa = slot_index(layout, r->a);
        if (op == "H") c.append(Gate::h(qa));
        else if (op == "S") c.append(Gate::s(qa));
        else if (op == "RX") c.append(Gate::rx(qa, angle_value(r->angle)));
        else if (op == "CNOT") c.append(Gate::cnot(qa, slot_index(layout, r->b)));
        else if (op == "CY") c.append(Gate::cy(qa, slot_index(layout, r->b)));
        else if (op == "M") c.append(Gate::measure(qa, bit_of.at(r->cbit)));
        else if (op == "RESET") c.append(Gate::reset(qa));
        else throw DimensionError("unknown template op \"" + std::string(op) + "\"");
    }
    range_of.at(current_stage)->end = c.gates().size();

    meta.flag_x_bit = bit_of.at("flag_x");
    meta.flag_z_bit = bit_of.at("flag_z");
    meta.alpha_bits = {bit_of.at("m_alpha"), bit_of.at("m_alpha_copy")};
    meta.beta_bits = {bit_of.at("m_beta"), bit_of.at("m_beta_copy")};
    meta.gamma_bits = {bit_of.at("m_gamma"), bit_of.at("m_gamma_copy")};
    meta.data_bits = {bit_of.at("r1"), bit_of.at("r2"), bit_of.at("r3"), bit_of.at("r4")};
    if (bit_of.count("rep1")) meta.repeat_bits = {bit_of.at("rep1"), bit_of.at("rep2")};
    if (bit_of.count("flag_block")) meta.block_flag_bit = bit_of.at("flag_block");

    switch (setting) {
        case LogicalSetting::ZZ:
            meta.b1_parity = {0, 1, 0, 1};  // Z1 = Z d2 Z d4
            meta.b2_parity = {0, 1, 1, 0};  // Z2 = Z d2 Z d3
            break;
        case LogicalSetting::XX:
            meta.b1_parity = {1, 0, 0, 1};  // X1 = X d1 X d4
            meta.b2_parity = {0, 1, 0, 1};  // X2 = X d2 X d4
            break;
        case LogicalSetting::XZ:
            meta.b1_from_repeat = true;     // X1 from the repeated measurement
            meta.b2_parity = {0, 1, 1, 0};  // Z2 = Z d2 Z d3
            break;
        case LogicalSetting::ZX:
            meta.b1_parity = {0, 1, 0, 1};  // Z1 = Z d2 Z d4
            meta.b2_from_repeat = true;     // X2 from the repeated measurement
            break;
    }
    meta.relabel_note =
        "logical CNOT realized by relabeling data qubits 2 and 4 after preparation; "
        "parity tables are stated in the relabeled frame";
    return {std::move(c), std::move(meta)};
}

DecodedShot decode_shot(const ShotRecord& raw, const DecodeMeta& meta) {
    if (static_cast<int>(raw.bits.size()) != meta.n_cbits)
        throw DimensionError("shot has " + std::to_string(raw.bits.size()) +
                             " bits; decode metadata expects " + std::to_string(meta.n_cbits));
    auto bit = [&](int i) -> uint8_t { return raw.bits[static_cast<std::size_t>(i)]; };

    DecodedShot out;
    uint8_t m_alpha = bit(meta.alpha_bits[0]);
    uint8_t m_beta = bit(meta.beta_bits[0]);
    uint8_t m_gamma = bit(meta.gamma_bits[0]);
    out.frame.teleport_outcomes = {m_alpha, m_beta, m_gamma};
    PauliString frame(2);
    if (m_beta) frame = pauli_mul(frame, PauliString::from_word("ZY"));
    if (m_gamma) frame = pauli_mul(frame, PauliString::from_word("IY"));
    out.frame.logical = frame;

    uint8_t data_parity = 0;
    for (int b : meta.data_bits) data_parity ^= bit(b);
    bool block_flag = meta.block_flag_bit >= 0 && bit(meta.block_flag_bit);
    if (bit(meta.flag_x_bit) || bit(meta.flag_z_bit) || block_flag || data_parity) {
        out.reason = RejectReason::StabilizerDetect;
        return out;
    }
    if (bit(meta.alpha_bits[0]) != bit(meta.alpha_bits[1]) ||
        bit(meta.beta_bits[0]) != bit(meta.beta_bits[1]) ||
        bit(meta.gamma_bits[0]) != bit(meta.gamma_bits[1])) {
        out.reason = RejectReason::FlagDisagree;
        return out;
    }
    if (meta.repeat_bits[0] >= 0 && bit(meta.repeat_bits[0]) != bit(meta.repeat_bits[1])) {
        out.reason = RejectReason::RepeatedMeasureDisagree;
        return out;
    }
    if (m_alpha) {
        out.reason = RejectReason::AlphaFrameNontrivial;
        return out;
    }

    auto parity_bit = [&](const std::array<uint8_t, 4>& mask) {
        uint8_t v = 0;
        for (int i = 0; i < 4; ++i)
            if (mask[i]) v ^= bit(meta.data_bits[i]);
        return v;
    };
    std::array<uint8_t, 2> bits{};
    bits[0] = meta.b1_from_repeat ? bit(meta.repeat_bits[0]) : parity_bit(meta.b1_parity);
    bits[1] = meta.b2_from_repeat ? bit(meta.repeat_bits[0]) : parity_bit(meta.b2_parity);

    // A logical bit flips when its measured logical Pauli anticommutes with
    // the tracked frame.
    std::string basis1{setting_basis(meta.setting, 1)};
    std::string basis2{setting_basis(meta.setting, 2)};
    if (!commutes(PauliString::from_word(basis1 + "I"), frame)) bits[0] ^= 1;
    if (!commutes(PauliString::from_word("I" + basis2), frame)) bits[1] ^= 1;

    out.accepted = true;
    out.reason = RejectReason::None;
    out.logical_bits = bits;
    return out;
}

std::map<std::string, double> accepted_logical_distribution(
    const std::map<std::string, double>& branches, const DecodeMeta& meta, double* p_accept) {
    std::map<std::string, double> dist;
    double acc = 0;
    ShotRecord rec;
    for (const auto& [key, prob] : branches) {
        rec.bits.assign(key.size(), 0);
        for (std::size_t i = 0; i < key.size(); ++i) rec.bits[i] = key[i] == '1';
        DecodedShot d = decode_shot(rec, meta);
        if (!d.accepted) continue;
        acc += prob;
        std::string lkey{static_cast<char>('0' + d.logical_bits[0]),
                         static_cast<char>('0' + d.logical_bits[1])};
        dist[lkey] += prob;
    }
    if (p_accept) *p_accept = acc;
    if (acc > 0)
        for (auto& [_, v] : dist) v /= acc;
    return dist;
}

double tvd(const std::map<std::string, double>& a, const std::map<std::string, double>& b) {
    std::set<std::string> keys;
    for (const auto& [k, _] : a) keys.insert(k);
    for (const auto& [k, _] : b) keys.insert(k);
    double d = 0;
    for (const auto& k : keys) {
        auto ia = a.find(k), ib = b.find(k);
        double va = ia == a.end() ? 0 : ia->second;
        double vb = ib == b.end() ? 0 : ib->second;
        d += std::abs(va - vb);
    }
    return d / 2;
}

std::string fault_block_name(FaultBlock b) {
    switch (b) {
        case FaultBlock::Prep: return "prep";
        case FaultBlock::Rotations: return "rotations";
        case FaultBlock::Measurement: return "measurement";
        case FaultBlock::All: return "all";
    }
    throw DimensionError("invalid fault block");
}

FaultBlock fault_block_from_name(const std::string& name) {
    for (FaultBlock b : {FaultBlock::Prep, FaultBlock::Rotations, FaultBlock::Measurement,
                         FaultBlock::All})
        if (fault_block_name(b) == name) return b;
    throw ConfigError("unknown fault block \"" + name + "\"");
}

std::string fault_class_name(FaultClass c) {
    switch (c) {
        case FaultClass::Benign: return "benign";
        case FaultClass::Detected: return "detected";
        case FaultClass::UndetectedLogical: return "undetected-logical";
    }
    throw DimensionError("invalid fault class");
}

AuditReport fault_audit(FaultBlock block, LogicalSetting setting, const PrepAngles& angles) {
    auto [circ, meta] = build_encoded_circuit(angles, setting);
    auto base_branches = enumerate_branches(circ);
    double p_base = 0;
    auto ideal = accepted_logical_distribution(base_branches, meta, &p_base);

    AuditReport rep;
    rep.block = block;
    rep.setting = setting;
    rep.baseline_acceptance = p_base;

    auto classify = [&](const std::map<std::string, double>& branches) {
        double p_acc = 0;
        auto dist = accepted_logical_distribution(branches, meta, &p_acc);
        if (p_acc < 1e-12) return FaultClass::Detected;
        if (tvd(dist, ideal) > 1e-9) return FaultClass::UndetectedLogical;
        if (p_acc < p_base - 1e-12) return FaultClass::Detected;
        return FaultClass::Benign;
    };
    auto add_row = [&](std::string location, std::string pauli, FaultClass cls) {
        switch (cls) {
            case FaultClass::Benign: ++rep.benign; break;
            case FaultClass::Detected: ++rep.detected; break;
            case FaultClass::UndetectedLogical: ++rep.undetected_logical; break;
        }
        rep.rows.push_back({std::move(location), std::move(pauli), cls});
    };

    add_row("none", "none", classify(base_branches));

    std::vector<DecodeMeta::Range> ranges;
    switch (block) {
        case FaultBlock::Prep: ranges = {meta.encode_range}; break;
        case FaultBlock::Rotations:
            ranges = {meta.alpha_range, meta.beta_range, meta.gamma_range};
            break;
        case FaultBlock::Measurement: ranges = {meta.verify_range, meta.readout_range}; break;
        case FaultBlock::All: ranges = {{0, circ.gates().size()}}; break;
    }

    for (const auto& range : ranges) {
        for (std::size_t i = range.begin; i < range.end; ++i) {
            const Gate& g = circ.gates()[i];
            std::string desc = "gate " + std::to_string(i) + " (" + gate_text(g) + ")";
            if (g.kind == GateKind::Measure) {
                std::map<std::string, double> flipped;
                for (const auto& [key, prob] : base_branches) {
                    std::string k2 = key;
                    k2[static_cast<std::size_t>(g.cbit)] ^= '0' ^ '1';
                    flipped[k2] += prob;
                }
                add_row(desc, "bitflip", classify(flipped));
                continue;
            }
            std::vector<int> support{g.q0};
            if (g.two_qubit()) support.push_back(g.q1);
            for (int q : support) {
                for (char p : {'X', 'Y', 'Z'}) {
                    Gate fault = p == 'X' ? Gate::x(q) : (p == 'Y' ? Gate::y(q) : Gate::z(q));
                    Circuit faulted = circ.with_inserted(i + 1, fault);
                    add_row("after " + desc + " on q" + std::to_string(q),
                            std::string(1, p), classify(enumerate_branches(faulted)));
                }
            }
        }
    }
    return rep;
}

}  // namespace c4s
