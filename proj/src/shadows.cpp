#include "c4shadow/shadows.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "c4shadow/util.hpp"

namespace c4s {

namespace {

using cplx = std::complex<double>;

const Eigen::Matrix2cd& sigma(char letter) {
    static const Eigen::Matrix2cd I = Eigen::Matrix2cd::Identity();
    static const Eigen::Matrix2cd X = (Eigen::Matrix2cd() << 0, 1, 1, 0).finished();
    static const Eigen::Matrix2cd Y =
        (Eigen::Matrix2cd() << 0, cplx(0, -1), cplx(0, 1), 0).finished();
    static const Eigen::Matrix2cd Z = (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();
    switch (letter) {
        case 'I': return I;
        case 'X': return X;
        case 'Y': return Y;
        case 'Z': return Z;
    }
    throw DimensionError("unknown Pauli letter");
}

int basis_slot(char letter) {
    switch (letter) {
        case 'X': return 0;
        case 'Y': return 1;
        case 'Z': return 2;
    }
    throw DimensionError("basis letter must be X, Y or Z");
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Estimate summarize(const std::vector<double>& values, const EstimatorOptions& opt) {
    auto n = static_cast<std::int64_t>(values.size());
    if (n == 0) throw EstimationError("no snapshots to estimate from");
    double mean = 0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    double var = 0;
    for (double v : values) var += (v - mean) * (v - mean);
    double se = n > 1 ? std::sqrt(var / static_cast<double>(n - 1) / static_cast<double>(n)) : 0;

    double point = mean;
    if (opt.median_of_means && n >= 2) {
        int g = std::min<std::int64_t>(opt.mom_groups, n);
        std::vector<double> group_means(g, 0.0);
        std::vector<std::int64_t> group_n(g, 0);
        for (std::int64_t i = 0; i < n; ++i) {
            int j = static_cast<int>(i * g / n);
            group_means[j] += values[i];
            ++group_n[j];
        }
        for (int j = 0; j < g; ++j) group_means[j] /= static_cast<double>(group_n[j]);
        // Robust location only; the dispersion report stays the plain-mean
        // standard error.
        point = median_of(group_means);
    }
    return {point, se, n};
}

}  // namespace

MeasurementEnsemble MeasurementEnsemble::uniform(const std::string& bases, EnsembleMode mode) {
    MeasurementEnsemble e;
    e.bases = bases;
    e.weights.assign(bases.size(), bases.empty() ? 0.0 : 1.0 / static_cast<double>(bases.size()));
    e.mode = mode;
    e.validate();
    return e;
}

void MeasurementEnsemble::validate() const {
    if (bases.empty()) throw ConfigError("measurement ensemble needs at least one basis");
    for (char c : bases) {
        if (c != 'X' && c != 'Y' && c != 'Z')
            throw ConfigError("ensemble basis letters must be X, Y or Z");
        if (std::count(bases.begin(), bases.end(), c) != 1)
            throw ConfigError("duplicate basis letter in ensemble");
    }
    if (weights.size() != bases.size())
        throw ConfigError("ensemble weights must pair with bases");
    double sum = 0;
    for (double w : weights) {
        if (!(w > 0)) throw ConfigError("ensemble weights must be positive");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw ConfigError("ensemble weights must sum to 1");
}

InverseChannel inverse_channel(const MeasurementEnsemble& ensemble) {
    ensemble.validate();
    InverseChannel ch;
    ch.bases = ensemble.bases;
    for (std::size_t i = 0; i < ensemble.bases.size(); ++i)
        ch.scale[basis_slot(ensemble.bases[i])] = 1.0 / ensemble.weights[i];
    return ch;
}

Eigen::Matrix2cd InverseChannel::apply(const Eigen::Matrix2cd& a) const {
    Eigen::Matrix2cd out = 0.5 * a.trace() * Eigen::Matrix2cd::Identity();
    for (char b : bases) {
        const Eigen::Matrix2cd& s = sigma(b);
        cplx comp = 0.5 * (s * a).trace();
        out += scale[basis_slot(b)] * comp * s;
    }
    return out;
}

SnapshotEstimator make_snapshot(const std::string& setting, const std::string& outcome,
                                const InverseChannel& ch) {
    if (setting.size() != outcome.size())
        throw DimensionError("setting and outcome lengths differ");
    SnapshotEstimator snap;
    snap.setting = setting;
    snap.outcome = outcome;
    snap.supported = ch.bases;
    snap.factors.reserve(setting.size());
    for (std::size_t q = 0; q < setting.size(); ++q) {
        char b = setting[q];
        if (ch.bases.find(b) == std::string::npos)
            throw UnsupportedError("basis letter '" + std::string(1, b) +
                                   "' is outside the measurement ensemble");
        if (outcome[q] != '0' && outcome[q] != '1')
            throw DimensionError("outcome bits must be 0 or 1");
        double sign = outcome[q] == '0' ? 1.0 : -1.0;
        Eigen::Matrix2cd proj = 0.5 * (Eigen::Matrix2cd::Identity() + sign * sigma(b));
        snap.factors.push_back(ch.apply(proj));
    }
    return snap;
}

double snapshot_pauli_value(const SnapshotEstimator& snap, const PauliString& p) {
    if (p.n_qubits() != static_cast<int>(snap.factors.size()))
        throw DimensionError("observable and snapshot qubit counts differ");
    if (p.phase_exp() != 0)
        throw UnsupportedError("observables must be un-phased Pauli words");
    double prod = 1.0;
    for (int q = 1; q <= p.n_qubits(); ++q) {
        char letter = p.letter(q);
        if (letter == 'I') {
            prod *= (snap.factors[q - 1].trace()).real();
            continue;
        }
        if (snap.supported.find(letter) == std::string::npos)
            throw UnsupportedError("letter '" + std::string(1, letter) +
                                   "' cannot be estimated under this ensemble");
        prod *= (sigma(letter) * snap.factors[q - 1]).trace().real();
    }
    return prod;
}

Estimate estimate_pauli(const std::vector<SnapshotEstimator>& snaps, const PauliString& p,
                        const EstimatorOptions& opt) {
    std::vector<double> values;
    values.reserve(snaps.size());
    for (const auto& s : snaps) values.push_back(snapshot_pauli_value(s, p));
    return summarize(values, opt);
}

Estimate estimate_energy(const std::vector<SnapshotEstimator>& snaps, const ObservableSum& h,
                         const EstimatorOptions& opt) {
    std::vector<PauliString> words;
    std::vector<double> coeffs;
    for (const auto& [word, coeff] : h.terms) {
        words.push_back(PauliString::from_word(word));
        coeffs.push_back(coeff);
    }
    std::vector<double> values;
    values.reserve(snaps.size());
    for (const auto& s : snaps) {
        double y = 0;
        for (std::size_t t = 0; t < words.size(); ++t)
            y += coeffs[t] * snapshot_pauli_value(s, words[t]);
        values.push_back(y);
    }
    return summarize(values, opt);
}

void ShotStore::save(std::ostream& out) const {
    for (const auto& r : records) {
        out << r.setting << ' ' << (r.accepted ? r.bits : std::string("--")) << ' '
            << (r.accepted ? 1 : 0) << ' ' << r.reason << '\n';
    }
}

void ShotStore::save_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write shot store \"" + path + "\"");
    save(out);
}

ShotStore ShotStore::load(std::istream& in) {
    ShotStore store;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string setting, bits, acc, reason, extra;
        if (!(ls >> setting)) continue;
        if (!(ls >> bits >> acc >> reason))
            throw ParseError("expected `<setting> <bits> <accepted> <reason>`", line_no);
        if (ls >> extra) throw ParseError("unexpected trailing text", line_no);
        StoreRecord r;
        r.setting = setting;
        r.reason = reason;
        if (acc == "1")
            r.accepted = true;
        else if (acc == "0")
            r.accepted = false;
        else
            throw ParseError("acceptance flag must be 0 or 1", line_no);
        if (r.accepted) {
            for (char c : bits)
                if (c != '0' && c != '1')
                    throw ParseError("outcome bits must be 0/1 for accepted shots", line_no);
            r.bits = bits;
        } else {
            r.bits.clear();
        }
        store.records.push_back(std::move(r));
    }
    return store;
}

ShotStore ShotStore::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open shot store \"" + path + "\"");
    return load(in);
}

CountsTable counts_from_store(const ShotStore& store) {
    CountsTable table;
    std::map<std::string, std::size_t> index;
    for (const auto& r : store.records) {
        auto [it, fresh] = index.emplace(r.setting, table.size());
        if (fresh) {
            table.emplace_back();
            table.back().setting = r.setting;
        }
        SettingCounts& sc = table[it->second];
        if (!r.accepted) {
            ++sc.rejected;
            continue;
        }
        if (r.bits.size() != 2 || (r.bits[0] != '0' && r.bits[0] != '1') ||
            (r.bits[1] != '0' && r.bits[1] != '1'))
            throw EstimationError("accepted store record needs two outcome bits, got \"" +
                                  r.bits + "\"");
        int idx = (r.bits[0] == '1' ? 2 : 0) + (r.bits[1] == '1' ? 1 : 0);
        ++sc.outcomes[idx];
    }
    return table;
}

namespace {

bool word_compatible(const std::string& word, const std::string& setting) {
    if (word.size() != setting.size()) return false;
    for (std::size_t i = 0; i < word.size(); ++i)
        if (word[i] != 'I' && word[i] != setting[i]) return false;
    return true;
}

double outcome_eigenvalue(const std::string& word, int outcome_idx) {
    double v = 1.0;
    if (word[0] != 'I' && (outcome_idx & 2)) v = -v;
    if (word[1] != 'I' && (outcome_idx & 1)) v = -v;
    return v;
}

bool is_identity_word(const std::string& word) {
    return word.find_first_not_of('I') == std::string::npos;
}

}  // namespace

Estimate estimate_pauli_grid(const CountsTable& counts, const std::string& word) {
    for (char c : word)
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
            throw Error("invalid Pauli letter in \"" + word + "\"");
    std::int64_t total_accepted = 0;
    for (const auto& sc : counts) total_accepted += sc.accepted();
    if (is_identity_word(word)) return {1.0, 0.0, total_accepted};
    if (word.size() != 2)
        throw DimensionError("the fixed grid estimates two-qubit words");

    std::int64_t n = 0;
    double sum = 0;
    bool any_setting = false;
    for (const auto& sc : counts) {
        if (!word_compatible(word, sc.setting)) continue;
        any_setting = true;
        for (int o = 0; o < 4; ++o) {
            sum += static_cast<double>(sc.outcomes[o]) * outcome_eigenvalue(word, o);
            n += sc.outcomes[o];
        }
    }
    if (!any_setting)
        throw UnsupportedError("no measurement setting is compatible with \"" + word + "\"");
    if (n == 0) throw EstimationError("no accepted shots available for \"" + word + "\"");
    double mean = sum / static_cast<double>(n);
    double se = 0;
    if (n > 1) {
        // Per-shot values are +/-1: the sample variance follows from the mean.
        double var = (static_cast<double>(n) * (1.0 - mean * mean)) / static_cast<double>(n - 1);
        se = std::sqrt(var / static_cast<double>(n));
    }
    return {mean, se, n};
}

Estimate estimate_energy_grid(const CountsTable& counts, const ObservableSum& h,
                              GridProvenance* prov) {
    double constant = 0;
    struct TermInfo {
        std::string word;
        double coeff;
        std::int64_t n_pooled = 0;
    };
    std::vector<TermInfo> terms;
    for (const auto& [word, coeff] : h.terms) {
        if (is_identity_word(word)) {
            constant += coeff;
            continue;
        }
        terms.push_back({word, coeff, 0});
    }

    std::int64_t total_accepted = 0;
    for (const auto& sc : counts) {
        total_accepted += sc.accepted();
        if (prov) prov->accepted_per_setting[sc.setting] = sc.accepted();
    }

    for (auto& t : terms) {
        bool any_setting = false;
        for (const auto& sc : counts) {
            if (!word_compatible(t.word, sc.setting)) continue;
            any_setting = true;
            t.n_pooled += sc.accepted();
            if (prov) prov->pooling[t.word].push_back(sc.setting);
        }
        if (!any_setting)
            throw UnsupportedError("no measurement setting is compatible with \"" + t.word +
                                   "\"");
        if (t.n_pooled == 0)
            throw EstimationError("no accepted shots available for \"" + t.word + "\"");
        if (prov) prov->shots_per_pauli[t.word] = t.n_pooled;
    }

    // E = c_II + sum over settings s and accepted shots i of y_s(i), with
    // y_s(i) = sum over compatible terms of coeff * eigenvalue / pooled-N.
    // Settings are independent strata, so Var(E) = sum_s n_s * Var_s(y).
    double value = constant;
    double var_total = 0;
    for (const auto& sc : counts) {
        std::int64_t n_s = sc.accepted();
        if (n_s == 0) continue;
        std::array<double, 4> y{0, 0, 0, 0};
        for (const auto& t : terms) {
            if (!word_compatible(t.word, sc.setting)) continue;
            for (int o = 0; o < 4; ++o)
                y[o] += t.coeff * outcome_eigenvalue(t.word, o) /
                        static_cast<double>(t.n_pooled);
        }
        double s1 = 0, s2 = 0;
        for (int o = 0; o < 4; ++o) {
            s1 += static_cast<double>(sc.outcomes[o]) * y[o];
            s2 += static_cast<double>(sc.outcomes[o]) * y[o] * y[o];
        }
        value += s1;
        if (n_s > 1) {
            double mean_y = s1 / static_cast<double>(n_s);
            double var_y =
                (s2 - static_cast<double>(n_s) * mean_y * mean_y) / static_cast<double>(n_s - 1);
            var_total += static_cast<double>(n_s) * std::max(0.0, var_y);
        }
    }
    return {value, std::sqrt(var_total), total_accepted};
}

namespace {

// Weighted mean and standard error of a per-(setting, outcome) statistic
// over the accepted shots of a counts table.
template <class ValueFn>
Estimate counts_mean(const CountsTable& counts, ValueFn&& value_of) {
    std::int64_t n = 0;
    double s1 = 0, s2 = 0;
    for (const auto& sc : counts) {
        for (int o = 0; o < 4; ++o) {
            if (sc.outcomes[o] == 0) continue;
            std::string bits{static_cast<char>('0' + ((o >> 1) & 1)),
                             static_cast<char>('0' + (o & 1))};
            double v = value_of(sc.setting, bits);
            auto w = static_cast<double>(sc.outcomes[o]);
            n += sc.outcomes[o];
            s1 += w * v;
            s2 += w * v * v;
        }
    }
    if (n == 0) throw EstimationError("no accepted shots in the counts table");
    double mean = s1 / static_cast<double>(n);
    double se = 0;
    if (n > 1) {
        double var = (s2 - static_cast<double>(n) * mean * mean) / static_cast<double>(n - 1);
        se = std::sqrt(std::max(0.0, var) / static_cast<double>(n));
    }
    return {mean, se, n};
}

}  // namespace

Estimate estimate_pauli_from_counts(const CountsTable& counts, const PauliString& p,
                                    const MeasurementEnsemble& ensemble) {
    InverseChannel ch = inverse_channel(ensemble);
    return counts_mean(counts, [&](const std::string& setting, const std::string& bits) {
        return snapshot_pauli_value(make_snapshot(setting, bits, ch), p);
    });
}

Estimate estimate_energy_from_counts(const CountsTable& counts, const ObservableSum& h,
                                     const MeasurementEnsemble& ensemble) {
    InverseChannel ch = inverse_channel(ensemble);
    std::vector<PauliString> words;
    std::vector<double> coeffs;
    for (const auto& [word, coeff] : h.terms) {
        words.push_back(PauliString::from_word(word));
        coeffs.push_back(coeff);
    }
    return counts_mean(counts, [&](const std::string& setting, const std::string& bits) {
        SnapshotEstimator snap = make_snapshot(setting, bits, ch);
        double y = 0;
        for (std::size_t t = 0; t < words.size(); ++t)
            y += coeffs[t] * snapshot_pauli_value(snap, words[t]);
        return y;
    });
}

std::string sample_setting(const MeasurementEnsemble& ensemble, int n_qubits, Rng& rng) {
    ensemble.validate();
    std::string out;
    out.reserve(static_cast<std::size_t>(n_qubits));
    for (int q = 0; q < n_qubits; ++q) {
        double u = rng.uniform();
        double acc = 0;
        char chosen = ensemble.bases.back();
        for (std::size_t i = 0; i < ensemble.bases.size(); ++i) {
            acc += ensemble.weights[i];
            if (u < acc) {
                chosen = ensemble.bases[i];
                break;
            }
        }
        out.push_back(chosen);
    }
    return out;
}

}  // namespace c4s
