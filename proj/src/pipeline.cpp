#include "c4shadow/pipeline.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "c4shadow/util.hpp"

namespace c4s {

namespace {

constexpr std::array<const char*, 8> kLogicalWords = {"IX", "XI", "IZ", "ZI",
                                                      "XX", "XZ", "ZX", "ZZ"};

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& tok, int line_no) {
    double v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size() || !std::isfinite(v))
        throw ParseError("expected a number, got \"" + tok + "\"", line_no);
    return v;
}

std::int64_t to_int(const std::string& tok, int line_no) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size())
        throw ParseError("expected an integer, got \"" + tok + "\"", line_no);
    return v;
}

std::uint64_t to_uint(const std::string& tok, int line_no) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size())
        throw ParseError("expected a non-negative integer, got \"" + tok + "\"", line_no);
    return v;
}

[[noreturn]] void rethrow_tagged(const std::string& stage, const std::string& hash) {
    auto tag = [&](const char* what) {
        return "stage " + stage + ": " + what + " [config " + hash + "]";
    };
    try {
        throw;
    } catch (const ParseError& e) {
        throw ConfigError(tag(e.what()));
    } catch (const ConfigError& e) {
        throw ConfigError(tag(e.what()));
    } catch (const SimulationError& e) {
        throw SimulationError(tag(e.what()));
    } catch (const EstimationError& e) {
        throw EstimationError(tag(e.what()));
    } catch (const UnsupportedError& e) {
        throw UnsupportedError(tag(e.what()));
    } catch (const DimensionError& e) {
        throw DimensionError(tag(e.what()));
    } catch (const CapacityError& e) {
        throw CapacityError(tag(e.what()));
    } catch (const Error& e) {
        throw Error(tag(e.what()));
    }
}

template <class F>
auto run_stage(const std::string& stage, const std::string& hash, F&& f) {
    try {
        return f();
    } catch (const Error&) {
        rethrow_tagged(stage, hash);
    }
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (unsigned char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    return out;
}

MeasurementEnsemble random_xyz() {
    return MeasurementEnsemble::uniform("XYZ", EnsembleMode::RandomPerShot);
}

Circuit build_sampled_basis_circuit(const PrepAngles& a, const std::string& word) {
    Circuit c(2, 2);
    c.append(Gate::ry(0, a.alpha));
    c.append(Gate::ry(1, a.beta));
    c.append(Gate::cnot(0, 1));
    c.append(Gate::ry(1, a.gamma));
    for (int q = 0; q < 2; ++q) {
        switch (word[static_cast<std::size_t>(q)]) {
            case 'Z': break;
            case 'X': c.append(Gate::h(q)); break;
            case 'Y':
                // S-dagger then H rotates the Y eigenbasis onto Z.
                c.append(Gate::z(q));
                c.append(Gate::s(q));
                c.append(Gate::h(q));
                break;
            default: throw ConfigError("sampled basis word must use X, Y or Z");
        }
    }
    c.append(Gate::measure(0, 0));
    c.append(Gate::measure(1, 1));
    c.set_label(0, "b1");
    c.set_label(1, "b2");
    return c;
}

CountsEstimator energy_estimator(const ExperimentConfig& cfg, const ObservableSum& h) {
    if (cfg.ensemble == "grid")
        return [h](const CountsTable& counts) { return estimate_energy_grid(counts, h).value; };
    MeasurementEnsemble ens = random_xyz();
    return [h, ens](const CountsTable& counts) {
        return estimate_energy_from_counts(counts, h, ens).value;
    };
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write \"" + path + "\"");
    out << text;
    if (!out) throw ConfigError("write failed for \"" + path + "\"");
}

}  // namespace

NoiseModel NoiseSpec::resolve() const {
    NoiseModel m = NoiseModel::preset(preset);
    if (p1) m.p1 = *p1;
    if (p2) m.p2 = *p2;
    if (pm) m.pm = *pm;
    if (p_prep) m.p_prep = *p_prep;
    m.validate();
    return m;
}

std::string variant_name(CircuitVariant v) {
    switch (v) {
        case CircuitVariant::Unencoded: return "unencoded";
        case CircuitVariant::Encoded: return "encoded";
        case CircuitVariant::Both: return "both";
    }
    throw ConfigError("unknown circuit variant");
}

CircuitVariant variant_from_name(const std::string& name) {
    if (name == "unencoded") return CircuitVariant::Unencoded;
    if (name == "encoded") return CircuitVariant::Encoded;
    if (name == "both") return CircuitVariant::Both;
    throw ConfigError("unknown variant \"" + name + "\" (want unencoded, encoded or both)");
}

void ExperimentConfig::validate() const {
    if (hamiltonian_path.empty()) throw ConfigError("hamiltonian path is required");
    if (hamiltonian_format != "pauli" && hamiltonian_format != "fcidump")
        throw ConfigError("hamiltonian format must be pauli or fcidump");
    if (shots < 1) throw ConfigError("shots must be at least 1");
    if (settings.empty()) throw ConfigError("at least one measurement setting is required");
    for (std::size_t i = 0; i < settings.size(); ++i)
        for (std::size_t j = i + 1; j < settings.size(); ++j)
            if (settings[i] == settings[j])
                throw ConfigError("duplicate measurement setting " + setting_name(settings[i]));
    if (ensemble != "grid" && ensemble != "random")
        throw ConfigError("ensemble must be grid or random");
    if (ensemble == "random" && variant != CircuitVariant::Unencoded)
        throw ConfigError("random per-shot bases pair only with the unencoded variant");
    if (resamples < 100) throw ConfigError("resamples must be at least 100");
    if (!(level > 0.0 && level < 1.0)) throw ConfigError("level must lie strictly in (0, 1)");
    if (sweep_increment < 0) throw ConfigError("sweep_increment cannot be negative");
    if (out_dir.empty()) throw ConfigError("output directory is required");
    if (!solve_angles &&
        !(std::isfinite(angles.alpha) && std::isfinite(angles.beta) && std::isfinite(angles.gamma)))
        throw ConfigError("explicit angles must be finite");
    noise.resolve();
}

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string section;
    std::string line;
    int line_no = 0;
    std::set<std::string> seen;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']' || t.size() < 3)
                throw ParseError("malformed section header", line_no);
            section = t.substr(1, t.size() - 2);
            static const std::set<std::string> known = {"hamiltonian", "circuit", "sampling",
                                                        "noise", "estimation", "run"};
            if (!known.count(section))
                throw ParseError("unknown section [" + section + "]", line_no);
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos) throw ParseError("expected `key = value`", line_no);
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        if (section.empty()) throw ParseError("key before any [section]", line_no);
        if (key.empty()) throw ParseError("empty key", line_no);
        if (val.empty()) throw ParseError("empty value for " + key, line_no);
        if (!seen.insert(section + "." + key).second)
            throw ParseError("duplicate key " + key + " in [" + section + "]", line_no);

        try {
            if (section == "hamiltonian") {
                if (key == "path")
                    cfg.hamiltonian_path = val;
                else if (key == "format")
                    cfg.hamiltonian_format = val;
                else
                    throw ParseError("unknown key " + key + " in [hamiltonian]", line_no);
            } else if (section == "circuit") {
                if (key == "angles") {
                    if (val == "solve") {
                        cfg.solve_angles = true;
                    } else {
                        std::istringstream vs(val);
                        std::string a, b, c, extra;
                        if (!(vs >> a >> b >> c) || (vs >> extra))
                            throw ParseError("angles must be `solve` or three numbers", line_no);
                        cfg.solve_angles = false;
                        cfg.angles = {to_double(a, line_no), to_double(b, line_no),
                                      to_double(c, line_no)};
                    }
                } else if (key == "variant") {
                    cfg.variant = variant_from_name(val);
                } else {
                    throw ParseError("unknown key " + key + " in [circuit]", line_no);
                }
            } else if (section == "sampling") {
                if (key == "shots") {
                    cfg.shots = to_int(val, line_no);
                } else if (key == "settings") {
                    cfg.settings.clear();
                    std::istringstream vs(val);
                    std::string name;
                    while (vs >> name) cfg.settings.push_back(setting_from_name(name));
                } else if (key == "ensemble") {
                    cfg.ensemble = val;
                } else {
                    throw ParseError("unknown key " + key + " in [sampling]", line_no);
                }
            } else if (section == "noise") {
                if (key == "preset")
                    cfg.noise.preset = val;
                else if (key == "p1")
                    cfg.noise.p1 = to_double(val, line_no);
                else if (key == "p2")
                    cfg.noise.p2 = to_double(val, line_no);
                else if (key == "pm")
                    cfg.noise.pm = to_double(val, line_no);
                else if (key == "p_prep")
                    cfg.noise.p_prep = to_double(val, line_no);
                else
                    throw ParseError("unknown key " + key + " in [noise]", line_no);
            } else if (section == "estimation") {
                if (key == "resamples")
                    cfg.resamples = static_cast<int>(to_int(val, line_no));
                else if (key == "level")
                    cfg.level = to_double(val, line_no);
                else if (key == "sweep_increment")
                    cfg.sweep_increment = to_int(val, line_no);
                else
                    throw ParseError("unknown key " + key + " in [estimation]", line_no);
            } else {  // run
                if (key == "seed")
                    cfg.seed = to_uint(val, line_no);
                else if (key == "out")
                    cfg.out_dir = val;
                else
                    throw ParseError("unknown key " + key + " in [run]", line_no);
            }
        } catch (const ParseError&) {
            throw;
        } catch (const ConfigError& e) {
            throw ParseError(e.what(), line_no);
        }
    }
    return cfg;
}

ExperimentConfig parse_config(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config \"" + path + "\"");
    ExperimentConfig cfg = parse_config(in);
    cfg.validate();
    return cfg;
}

std::string canonical_config_text(const ExperimentConfig& cfg) {
    NoiseModel noise = cfg.noise.resolve();
    std::ostringstream out;
    out << "format=" << cfg.hamiltonian_format << '\n';
    out << "path=" << cfg.hamiltonian_path << '\n';
    if (cfg.solve_angles)
        out << "angles=solve\n";
    else
        out << "angles=" << g12(cfg.angles.alpha) << ' ' << g12(cfg.angles.beta) << ' '
            << g12(cfg.angles.gamma) << '\n';
    out << "variant=" << variant_name(cfg.variant) << '\n';
    out << "shots=" << cfg.shots << '\n';
    out << "settings=";
    for (std::size_t i = 0; i < cfg.settings.size(); ++i)
        out << (i ? " " : "") << setting_name(cfg.settings[i]);
    out << '\n';
    out << "ensemble=" << cfg.ensemble << '\n';
    out << "p1=" << g12(noise.p1) << '\n';
    out << "p2=" << g12(noise.p2) << '\n';
    out << "pm=" << g12(noise.pm) << '\n';
    out << "p_prep=" << g12(noise.p_prep) << '\n';
    out << "resamples=" << cfg.resamples << '\n';
    out << "level=" << g12(cfg.level) << '\n';
    out << "sweep_increment=" << cfg.sweep_increment << '\n';
    out << "version=" << kArtifactVersion << '\n';
    return out.str();
}

std::string config_hash(const ExperimentConfig& cfg) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(canonical_config_text(cfg))));
    return buf;
}

ObservableSum load_hamiltonian(const std::string& path, const std::string& format) {
    if (format == "pauli") return load_pauli_hamiltonian(path);
    if (format == "fcidump") {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open \"" + path + "\"");
        FermionIntegralTable t = parse_fcidump(in);
        return jordan_wigner(to_fermion_operator(t), t.n_orbitals);
    }
    throw ConfigError("unknown Hamiltonian format \"" + format + "\"");
}

PipelineContext prepare_context(const ExperimentConfig& cfg) {
    std::string hash = config_hash(cfg);
    PipelineContext ctx;
    run_stage("load-hamiltonian", hash, [&] {
        ctx.hamiltonian = load_hamiltonian(cfg.hamiltonian_path, cfg.hamiltonian_format);
    });
    run_stage("solve", hash, [&] {
        ctx.ground = ground_state(ctx.hamiltonian);
        if (cfg.solve_angles) {
            if (ctx.hamiltonian.n_qubits == 2) ctx.angles = solve_prep_angles(ctx.ground.state);
        } else {
            ctx.angles = cfg.angles;
        }
    });
    return ctx;
}

ShotStore simulate_variant(const ExperimentConfig& cfg, const PipelineContext& ctx,
                           CircuitVariant which) {
    std::string hash = config_hash(cfg);
    return run_stage("simulate", hash, [&] {
        if (which == CircuitVariant::Both)
            throw ConfigError("simulate one variant at a time");
        if (ctx.hamiltonian.n_qubits != 2)
            throw ConfigError("the experiment circuits target a two-qubit Hamiltonian");
        NoiseModel noise = cfg.noise.resolve();
        ShotStore store;

        if (cfg.ensemble == "random") {
            MeasurementEnsemble ens = random_xyz();
            Rng basis_rng(cfg.seed, 0x5E771E);
            store.records.reserve(static_cast<std::size_t>(cfg.shots));
            for (std::int64_t i = 0; i < cfg.shots; ++i) {
                std::string word = sample_setting(ens, 2, basis_rng);
                Circuit c = build_sampled_basis_circuit(ctx.angles, word);
                std::uint64_t shot_seed =
                    mix64(cfg.seed ^ mix64(0xA110ULL + static_cast<std::uint64_t>(i)));
                ShotRecord rec = run_shots(c, noise, shot_seed, 1)[0];
                std::string bits{static_cast<char>('0' + rec.bits[0]),
                                 static_cast<char>('0' + rec.bits[1])};
                store.records.push_back({word, bits, true, "none"});
            }
            return store;
        }

        bool encoded = which == CircuitVariant::Encoded;
        std::uint64_t variant_tag = encoded ? 1 : 0;
        std::vector<std::vector<StoreRecord>> per_setting;
        per_setting.reserve(cfg.settings.size());
        for (std::size_t si = 0; si < cfg.settings.size(); ++si) {
            LogicalSetting s = cfg.settings[si];
            std::uint64_t sub_seed = mix64(cfg.seed ^ mix64(0xC0ULL + variant_tag * 16 + si));
            std::vector<StoreRecord> recs;
            recs.reserve(static_cast<std::size_t>(cfg.shots));
            if (encoded) {
                auto [c, meta] = build_encoded_circuit(ctx.angles, s);
                auto raw = run_shots(c, noise, sub_seed, static_cast<std::size_t>(cfg.shots));
                for (const auto& r : raw) {
                    DecodedShot d = decode_shot(r, meta);
                    if (d.accepted) {
                        std::string bits{static_cast<char>('0' + d.logical_bits[0]),
                                         static_cast<char>('0' + d.logical_bits[1])};
                        recs.push_back({setting_name(s), bits, true, "none"});
                    } else {
                        recs.push_back({setting_name(s), "", false, reject_reason_name(d.reason)});
                    }
                }
            } else {
                Circuit c = build_unencoded_circuit(ctx.angles, s);
                auto raw = run_shots(c, noise, sub_seed, static_cast<std::size_t>(cfg.shots));
                for (const auto& r : raw) {
                    std::string bits{static_cast<char>('0' + r.bits[0]),
                                     static_cast<char>('0' + r.bits[1])};
                    recs.push_back({setting_name(s), bits, true, "none"});
                }
            }
            per_setting.push_back(std::move(recs));
        }
        // Round-robin across settings so any prefix of the store covers the
        // whole grid.
        store.records.reserve(per_setting.size() * static_cast<std::size_t>(cfg.shots));
        for (std::int64_t i = 0; i < cfg.shots; ++i)
            for (auto& recs : per_setting)
                store.records.push_back(std::move(recs[static_cast<std::size_t>(i)]));
        return store;
    });
}

ResultRecord estimate_record(const ExperimentConfig& cfg, const PipelineContext& ctx,
                             const ShotStore& store, const std::string& variant_label,
                             BootstrapSummary* boot_out) {
    std::string hash = config_hash(cfg);
    ResultRecord rec;
    run_stage("estimate", hash, [&] {
        if (variant_label != "unencoded" && variant_label != "encoded")
            throw ConfigError("estimation runs on a single variant label");
        CountsTable counts = counts_from_store(store);
        bool grid = cfg.ensemble == "grid";
        MeasurementEnsemble ens = grid ? MeasurementEnsemble{} : random_xyz();

        Estimate energy = grid ? estimate_energy_grid(counts, ctx.hamiltonian)
                               : estimate_energy_from_counts(counts, ctx.hamiltonian, ens);
        rec.variant = variant_label;
        rec.energy = energy.value;
        rec.std_error = energy.std_error;
        for (const char* w : kLogicalWords) {
            rec.expectations[w] = grid ? estimate_pauli_grid(counts, w)
                                       : estimate_pauli_from_counts(
                                             counts, PauliString::from_word(w), ens);
        }

        rec.e_exact = ctx.ground.energy;
        rec.delta_mha = (rec.energy - rec.e_exact) * 1000.0;
        rec.chemical_accuracy = std::abs(rec.delta_mha) <= 1.6;

        for (const auto& name :
             {RejectReason::StabilizerDetect, RejectReason::FlagDisagree,
              RejectReason::RepeatedMeasureDisagree, RejectReason::AlphaFrameNontrivial})
            rec.rejections[reject_reason_name(name)] = 0;
        for (const auto& r : store.records) {
            ++rec.total;
            if (r.accepted)
                ++rec.accepted;
            else
                ++rec.rejections[r.reason];
        }

        if (grid) {
            for (LogicalSetting s : cfg.settings) {
                Circuit c = variant_label == "encoded"
                                ? build_encoded_circuit(ctx.angles, s).first
                                : build_unencoded_circuit(ctx.angles, s);
                rec.gate_counts[setting_name(s)] =
                    GateTally{c.count_1q(), c.count_2q(), c.count_measure(), c.count_2q() == 24};
            }
        }

        rec.cfg_hash = hash;
        rec.seed = cfg.seed;
        rec.version = kArtifactVersion;
        rec.resamples = cfg.resamples;
        rec.level = cfg.level;
    });
    run_stage("bootstrap", hash, [&] {
        CountsEstimator est = energy_estimator(cfg, ctx.hamiltonian);
        BootstrapSummary boot = bootstrap_summary(store, est, cfg.resamples, cfg.level,
                                                  mix64(cfg.seed ^ fnv1a(variant_label)));
        rec.ci_low = boot.ci_low;
        rec.ci_high = boot.ci_high;
        rec.iqr_low = boot.iqr_low;
        rec.iqr_high = boot.iqr_high;
        rec.boot_mean = boot.mean;
        rec.boot_median = boot.median;
        if (boot_out) *boot_out = std::move(boot);
    });
    return rec;
}

std::vector<SweepPoint> sweep_series(const ExperimentConfig& cfg, const PipelineContext& ctx,
                                     const ShotStore& store) {
    std::string hash = config_hash(cfg);
    return run_stage("sweep", hash, [&] {
        if (cfg.sweep_increment < 1)
            throw ConfigError("sweep needs a positive sweep_increment");
        CountsEstimator est = energy_estimator(cfg, ctx.hamiltonian);
        return shot_sweep(store, est, cfg.sweep_increment, cfg.resamples, cfg.level,
                          mix64(cfg.seed ^ fnv1a("sweep")));
    });
}

CompareRecord compare_stores(const ExperimentConfig& cfg, const PipelineContext& ctx,
                             const ShotStore& a, const ShotStore& b, const std::string& label_a,
                             const std::string& label_b) {
    std::string hash = config_hash(cfg);
    return run_stage("compare", hash, [&] {
        CountsEstimator est = energy_estimator(cfg, ctx.hamiltonian);
        BootstrapSummary boot_a = bootstrap_summary(a, est, cfg.resamples, cfg.level,
                                                    mix64(cfg.seed ^ fnv1a(label_a)));
        BootstrapSummary boot_b = bootstrap_summary(b, est, cfg.resamples, cfg.level,
                                                    mix64(cfg.seed ^ fnv1a(label_b)));
        CompareRecord cr;
        cr.label_a = label_a;
        cr.label_b = label_b;
        cr.truth = ctx.ground.energy;
        cr.energy_a = boot_a.point;
        cr.energy_b = boot_b.point;
        cr.prob_a_better = prob_better(boot_a, boot_b, cr.truth);
        cr.meets_97_level = cr.prob_a_better >= 0.97;
        cr.cfg_hash = hash;
        cr.seed = cfg.seed;
        return cr;
    });
}

void write_result_json(const ResultRecord& r, std::ostream& out) {
    out << "{\n";
    out << "  \"variant\": \"" << json_escape(r.variant) << "\",\n";
    out << "  \"energy\": " << g12(r.energy) << ",\n";
    out << "  \"std_error\": " << g12(r.std_error) << ",\n";
    out << "  \"ci\": [" << g12(r.ci_low) << ", " << g12(r.ci_high) << "],\n";
    out << "  \"iqr\": [" << g12(r.iqr_low) << ", " << g12(r.iqr_high) << "],\n";
    out << "  \"bootstrap\": {\"resamples\": " << r.resamples << ", \"level\": " << g12(r.level)
        << ", \"mean\": " << g12(r.boot_mean) << ", \"median\": " << g12(r.boot_median)
        << "},\n";
    out << "  \"exact_energy\": " << g12(r.e_exact) << ",\n";
    out << "  \"delta_mha\": " << g12(r.delta_mha) << ",\n";
    out << "  \"chemical_accuracy\": " << (r.chemical_accuracy ? "true" : "false") << ",\n";
    out << "  \"shots\": {\"accepted\": " << r.accepted << ", \"total\": " << r.total << "},\n";
    out << "  \"rejections\": {";
    bool first = true;
    for (const auto& [name, count] : r.rejections) {
        out << (first ? "" : ", ") << '"' << json_escape(name) << "\": " << count;
        first = false;
    }
    out << "},\n";
    out << "  \"expectations\": {\n";
    first = true;
    for (const auto& [word, est] : r.expectations) {
        if (!first) out << ",\n";
        out << "    \"" << word << "\": {\"value\": " << g12(est.value)
            << ", \"std_error\": " << g12(est.std_error) << ", \"n\": " << est.n << "}";
        first = false;
    }
    out << "\n  },\n";
    out << "  \"gate_counts\": {";
    first = true;
    for (const auto& [setting, tally] : r.gate_counts) {
        if (!first) out << ", ";
        out << '"' << setting << "\": {\"one_qubit\": " << tally.one_qubit
            << ", \"two_qubit\": " << tally.two_qubit
            << ", \"measurements\": " << tally.measurements
            << ", \"two_qubit_is_24\": " << (tally.two_qubit_is_24 ? "true" : "false") << "}";
        first = false;
    }
    out << "},\n";
    out << "  \"provenance\": {\"config\": \"" << r.cfg_hash << "\", \"seed\": " << r.seed
        << ", \"version\": \"" << json_escape(r.version) << "\"}\n";
    out << "}\n";
}

void write_compare_json(const CompareRecord& r, std::ostream& out) {
    out << "{\n";
    out << "  \"a\": {\"label\": \"" << json_escape(r.label_a)
        << "\", \"energy\": " << g12(r.energy_a) << "},\n";
    out << "  \"b\": {\"label\": \"" << json_escape(r.label_b)
        << "\", \"energy\": " << g12(r.energy_b) << "},\n";
    out << "  \"truth\": " << g12(r.truth) << ",\n";
    out << "  \"prob_a_better\": " << g12(r.prob_a_better) << ",\n";
    out << "  \"meets_97_level\": " << (r.meets_97_level ? "true" : "false") << ",\n";
    out << "  \"provenance\": {\"config\": \"" << r.cfg_hash << "\", \"seed\": " << r.seed
        << ", \"version\": \"" << kArtifactVersion << "\"}\n";
    out << "}\n";
}

PipelineResult run_pipeline(const ExperimentConfig& cfg) {
    cfg.validate();
    std::string hash = config_hash(cfg);
    namespace fs = std::filesystem;
    run_stage("write", hash, [&] {
        std::error_code ec;
        fs::create_directories(cfg.out_dir, ec);
        if (ec && !fs::is_directory(cfg.out_dir))
            throw ConfigError("cannot create output directory \"" + cfg.out_dir + "\"");
    });
    auto path_in_out = [&](const std::string& name) {
        return (fs::path(cfg.out_dir) / name).string();
    };
    std::string status_path = path_in_out("status.txt");
    write_text_file(status_path, "INCOMPLETE\n");

    PipelineResult result;
    PipelineContext ctx = prepare_context(cfg);

    std::vector<CircuitVariant> variants;
    if (cfg.variant == CircuitVariant::Both)
        variants = {CircuitVariant::Unencoded, CircuitVariant::Encoded};
    else
        variants = {cfg.variant};

    std::map<std::string, BootstrapSummary> boots;
    for (CircuitVariant v : variants) {
        std::string label = variant_name(v);
        ShotStore store = simulate_variant(cfg, ctx, v);

        std::string store_path = path_in_out("store_" + label + ".txt");
        run_stage("write", hash, [&] { store.save_file(store_path); });
        result.files.push_back(store_path);

        BootstrapSummary boot;
        ResultRecord rec = estimate_record(cfg, ctx, store, label, &boot);
        std::string result_path = path_in_out("result_" + label + ".json");
        run_stage("write", hash, [&] {
            std::ostringstream os;
            write_result_json(rec, os);
            write_text_file(result_path, os.str());
        });
        result.files.push_back(result_path);

        if (cfg.sweep_increment > 0) {
            auto points = sweep_series(cfg, ctx, store);
            std::string sweep_path = path_in_out("sweep_" + label + ".csv");
            run_stage("write", hash, [&] {
                std::ostringstream os;
                sweep_csv(points, os);
                write_text_file(sweep_path, os.str());
            });
            result.files.push_back(sweep_path);
        }

        boots[label] = std::move(boot);
        result.results.push_back(std::move(rec));
    }

    if (cfg.variant == CircuitVariant::Both) {
        CompareRecord cr;
        run_stage("compare", hash, [&] {
            cr.label_a = "encoded";
            cr.label_b = "unencoded";
            cr.truth = ctx.ground.energy;
            cr.energy_a = boots.at("encoded").point;
            cr.energy_b = boots.at("unencoded").point;
            cr.prob_a_better = prob_better(boots.at("encoded"), boots.at("unencoded"), cr.truth);
            cr.meets_97_level = cr.prob_a_better >= 0.97;
            cr.cfg_hash = hash;
            cr.seed = cfg.seed;
        });
        std::string compare_path = path_in_out("compare.json");
        run_stage("write", hash, [&] {
            std::ostringstream os;
            write_compare_json(cr, os);
            write_text_file(compare_path, os.str());
        });
        result.files.push_back(compare_path);
        result.comparison = cr;
    }

    write_text_file(status_path, "complete\n");
    result.files.push_back(status_path);
    return result;
}

}  // namespace c4s
