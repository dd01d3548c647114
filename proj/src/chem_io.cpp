#include "c4shadow/chem_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "c4shadow/util.hpp"

namespace c4s {

namespace {

bool parse_double(const std::string& tok, double& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

bool parse_int(const std::string& tok, int& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    return s;
}

}  // namespace

ObservableSum parse_pauli_hamiltonian(std::istream& in) {
    std::string line;
    int line_no = 0;
    int n_qubits = 0;
    std::vector<std::pair<std::string, double>> parsed;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok_coeff, tok_word, extra;
        if (!(ls >> tok_coeff)) continue;
        if (!(ls >> tok_word))
            throw ParseError("expected `<coefficient> <word>`", line_no);
        if (ls >> extra)
            throw ParseError("unexpected trailing text \"" + extra + "\"", line_no);
        double coeff;
        if (!parse_double(tok_coeff, coeff))
            throw ParseError("malformed coefficient \"" + tok_coeff + "\"", line_no);
        for (char c : tok_word)
            if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
                throw ParseError("invalid Pauli letter '" + std::string(1, c) + "'", line_no);
        if (n_qubits == 0)
            n_qubits = static_cast<int>(tok_word.size());
        else if (static_cast<int>(tok_word.size()) != n_qubits)
            throw ParseError("word length " + std::to_string(tok_word.size()) +
                                 " differs from earlier terms of length " +
                                 std::to_string(n_qubits),
                             line_no);
        parsed.emplace_back(tok_word, coeff);
    }
    if (parsed.empty())
        throw ParseError("input contains no Hamiltonian terms", line_no ? line_no : 1);
    ObservableSum h(n_qubits);
    for (const auto& [word, coeff] : parsed) h.add(word, coeff);
    return h;
}

ObservableSum parse_pauli_hamiltonian(const std::string& text) {
    std::istringstream in(text);
    return parse_pauli_hamiltonian(in);
}

ObservableSum load_pauli_hamiltonian(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open Hamiltonian file \"" + path + "\"");
    return parse_pauli_hamiltonian(in);
}

std::string emit_pauli_hamiltonian(const ObservableSum& h) {
    std::ostringstream out;
    for (const auto& [word, coeff] : h.terms)
        out << g12(coeff) << ' ' << word << '\n';
    return out.str();
}

FermionIntegralTable parse_fcidump(std::istream& in) {
    std::string line;
    int line_no = 0;

    // Header: first non-blank content must open with &FCI; runs until a
    // `/` or `&END` terminator, possibly spanning lines.
    std::string header;
    bool header_open = false, header_done = false;
    while (!header_done && std::getline(in, line)) {
        ++line_no;
        std::string stripped = line;
        auto pos = stripped.find_first_not_of(" \t\r");
        if (pos == std::string::npos) {
            if (header_open) header += ' ';
            continue;
        }
        if (!header_open) {
            if (upper(stripped.substr(pos, 4)) != "&FCI")
                throw ParseError("missing &FCI header", line_no);
            header_open = true;
        }
        std::string up = upper(stripped);
        auto slash = up.find('/');
        auto amp_end = up.find("&END", pos);
        auto term = std::min(slash, amp_end);
        if (term != std::string::npos) {
            header += stripped.substr(0, term);
            header_done = true;
        } else {
            header += stripped + ' ';
        }
    }
    if (!header_open) throw ParseError("missing &FCI header", line_no ? line_no : 1);
    if (!header_done) throw ParseError("header never terminated by `/` or `&END`", line_no);

    FermionIntegralTable t;
    bool have_norb = false, have_nelec = false;
    {
        std::string cleaned = header;
        std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
        std::istringstream hs(cleaned);
        std::string tok;
        while (hs >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) continue;
            std::string key = upper(tok.substr(0, eq));
            std::string val = tok.substr(eq + 1);
            if (key == "NORB") {
                if (!parse_int(val, t.n_orbitals))
                    throw ParseError("bad NORB value \"" + val + "\"", line_no);
                have_norb = true;
            } else if (key == "NELEC") {
                if (!parse_int(val, t.n_electrons))
                    throw ParseError("bad NELEC value \"" + val + "\"", line_no);
                have_nelec = true;
            }
        }
    }
    if (!have_norb) throw ParseError("header does not declare NORB", line_no);
    if (!have_nelec) throw ParseError("header does not declare NELEC", line_no);
    if (t.n_orbitals < 1) throw ParseError("NORB must be positive", line_no);

    auto set_one_body = [&](int p, int q, double v, int at_line) {
        for (auto key : {std::pair{p, q}, std::pair{q, p}}) {
            auto it = t.one_body.find(key);
            if (it != t.one_body.end() && std::abs(it->second - v) > 1e-12)
                throw ParseError("one-body entry (" + std::to_string(key.first) + "," +
                                     std::to_string(key.second) +
                                     ") conflicts with an earlier value",
                                 at_line);
            t.one_body[key] = v;
        }
    };

    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string tok;
        while (ls >> tok) toks.push_back(tok);
        if (toks.empty()) continue;
        if (toks.size() != 5)
            throw ParseError("expected `value i j k l`, got " +
                                 std::to_string(toks.size()) + " fields",
                             line_no);
        double v;
        if (!parse_double(toks[0], v))
            throw ParseError("malformed value \"" + toks[0] + "\"", line_no);
        int idx[4];
        for (int k = 0; k < 4; ++k) {
            if (!parse_int(toks[k + 1], idx[k]))
                throw ParseError("malformed index \"" + toks[k + 1] + "\"", line_no);
            if (idx[k] < 0 || idx[k] > t.n_orbitals)
                throw ParseError("index " + std::to_string(idx[k]) +
                                     " outside 0.." + std::to_string(t.n_orbitals),
                                 line_no);
        }
        int nonzero = 0;
        for (int k = 0; k < 4; ++k) nonzero += idx[k] != 0;
        if (nonzero == 0) {
            t.core_energy = v;
        } else if (nonzero == 2 && idx[0] != 0 && idx[1] != 0) {
            set_one_body(idx[0], idx[1], v, line_no);
        } else if (nonzero == 4) {
            t.two_body[{idx[0], idx[1], idx[2], idx[3]}] = v;
        } else {
            throw ParseError("unsupported index pattern", line_no);
        }
    }
    return t;
}

FermionIntegralTable parse_fcidump(const std::string& text) {
    std::istringstream in(text);
    return parse_fcidump(in);
}

std::string emit_fcidump(const FermionIntegralTable& t) {
    std::ostringstream out;
    out << "&FCI NORB=" << t.n_orbitals << ",NELEC=" << t.n_electrons << ",\n/\n";
    for (const auto& [k, v] : t.two_body)
        out << ' ' << g12(v) << ' ' << k[0] << ' ' << k[1] << ' ' << k[2] << ' ' << k[3]
            << '\n';
    for (const auto& [k, v] : t.one_body) {
        if (k.first > k.second && t.one_body.count({k.second, k.first})) continue;
        out << ' ' << g12(v) << ' ' << k.first << ' ' << k.second << " 0 0\n";
    }
    out << ' ' << g12(t.core_energy) << " 0 0 0 0\n";
    return out.str();
}

void FermionOperator::add(const Term& t, std::complex<double> coeff) {
    for (const auto& [mode, _] : t)
        if (mode < 1) throw DimensionError("fermionic mode indices are 1-based");
    terms[t] += coeff;
}

FermionOperator FermionOperator::dagger() const {
    FermionOperator out;
    for (const auto& [t, c] : terms) {
        Term rev(t.rbegin(), t.rend());
        for (auto& [mode, create] : rev) create = !create;
        out.add(rev, std::conj(c));
    }
    return out;
}

FermionOperator to_fermion_operator(const FermionIntegralTable& t, TwoBodyConvention conv) {
    FermionOperator op;
    if (t.core_energy != 0) op.add({}, t.core_energy);
    for (const auto& [pq, v] : t.one_body)
        op.add({{pq.first, true}, {pq.second, false}}, v);

    // Expand the permutational symmetry of the stored unique entries, then
    // apply the 1/2 double-counting factor.
    std::map<std::array<int, 4>, double> full;
    for (const auto& [k, v] : t.two_body) {
        auto [p, q, r, s] = k;
        std::set<std::array<int, 4>> images;
        if (conv == TwoBodyConvention::Chemists) {
            images = {{p, q, r, s}, {q, p, r, s}, {p, q, s, r}, {q, p, s, r},
                      {r, s, p, q}, {s, r, p, q}, {r, s, q, p}, {s, r, q, p}};
        } else {
            images = {{p, q, r, s}, {q, p, s, r}, {r, s, p, q}, {s, r, q, p}};
        }
        for (const auto& im : images) {
            auto it = full.find(im);
            if (it != full.end() && std::abs(it->second - v) > 1e-12)
                throw Error("two-body entries conflict under index symmetry");
            full[im] = v;
        }
    }
    for (const auto& [k, v] : full) {
        auto [p, q, r, s] = k;
        if (conv == TwoBodyConvention::Chemists)
            op.add({{p, true}, {r, true}, {s, false}, {q, false}}, 0.5 * v);
        else
            op.add({{p, true}, {q, true}, {s, false}, {r, false}}, 0.5 * v);
    }
    return op;
}

ObservableSum jordan_wigner(const FermionOperator& op, int n_modes) {
    if (n_modes < 1) throw DimensionError("n_modes must be positive");
    auto ladder_parts = [&](int mode) {
        std::string wx(static_cast<std::size_t>(n_modes), 'I');
        for (int j = 1; j < mode; ++j) wx[j - 1] = 'Z';
        std::string wy = wx;
        wx[mode - 1] = 'X';
        wy[mode - 1] = 'Y';
        return std::pair{PauliString::from_word(wx), PauliString::from_word(wy)};
    };

    std::map<std::string, std::complex<double>> acc;
    for (const auto& [seq, coeff] : op.terms) {
        std::vector<std::pair<PauliString, std::complex<double>>> cur;
        cur.emplace_back(PauliString(n_modes), coeff);
        for (const auto& [mode, create] : seq) {
            if (mode > n_modes)
                throw DimensionError("mode index " + std::to_string(mode) +
                                     " exceeds n_modes = " + std::to_string(n_modes));
            auto [px, py] = ladder_parts(mode);
            std::complex<double> ysign = create ? std::complex<double>(0, -0.5)
                                                : std::complex<double>(0, 0.5);
            std::vector<std::pair<PauliString, std::complex<double>>> next;
            next.reserve(cur.size() * 2);
            for (const auto& [P, c] : cur) {
                next.emplace_back(pauli_mul(P, px), 0.5 * c);
                next.emplace_back(pauli_mul(P, py), ysign * c);
            }
            cur = std::move(next);
        }
        for (const auto& [P, c] : cur) {
            // Fold the tracked i^k into the coefficient, leaving a plain word.
            PauliString unphased(P.n_qubits(), P.x_mask(), P.z_mask(), 0);
            acc[unphased.word()] += c * P.phase();
        }
    }

    ObservableSum out(n_modes);
    for (const auto& [word, c] : acc) {
        if (std::abs(c.imag()) > 1e-12)
            throw UnsupportedError("mapped operator has complex coefficient on " + word +
                                   "; the input is not Hermitian");
        if (std::abs(c.real()) > 1e-14) out.add(word, c.real());
    }
    return out;
}

}  // namespace c4s
