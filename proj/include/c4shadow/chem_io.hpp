#pragma once

#include <array>
#include <complex>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "c4shadow/pauli.hpp"

namespace c4s {

struct FermionIntegralTable {
    int n_orbitals = 0;
    int n_electrons = 0;
    double core_energy = 0;
    std::map<std::pair<int, int>, double> one_body;        // 1-based (p,q)
    std::map<std::array<int, 4>, double> two_body;         // 1-based (p,q,r,s)

    bool operator==(const FermionIntegralTable&) const = default;
};

// Product of ladder operators with a complex weight. A term is the ordered
// sequence of (mode index, is_creation); the empty sequence is a constant.
struct FermionOperator {
    using Term = std::vector<std::pair<int, bool>>;
    std::map<Term, std::complex<double>> terms;

    void add(const Term& t, std::complex<double> coeff);
    FermionOperator dagger() const;
};

// Pauli-term file: lines `<coefficient> <word>`, `#` comments, blanks ignored.
ObservableSum parse_pauli_hamiltonian(std::istream& in);
ObservableSum parse_pauli_hamiltonian(const std::string& text);
ObservableSum load_pauli_hamiltonian(const std::string& path);
std::string emit_pauli_hamiltonian(const ObservableSum& h);

// FCIDUMP subset: `&FCI NORB=..,NELEC=..,` header closed by `/` or `&END`,
// then `value i j k l` lines. All-zero indices carry the core energy,
// (i,j,0,0) the one-body part (completed symmetrically), four nonzero
// indices the two-body part. Point-group labels are read and ignored.
FermionIntegralTable parse_fcidump(std::istream& in);
FermionIntegralTable parse_fcidump(const std::string& text);
std::string emit_fcidump(const FermionIntegralTable& t);

// Two-body index reading: chemists' (pq|rs) pairs (p,q) and (r,s) on the
// same electron; physicists' <pq|rs> pairs (p,r) and (q,s).
enum class TwoBodyConvention { Chemists, Physicists };

// Diagnostic interpretation with one spinless mode per orbital index.
FermionOperator to_fermion_operator(const FermionIntegralTable& t,
                                    TwoBodyConvention conv = TwoBodyConvention::Chemists);

// a_p -> (X_p + iY_p)/2 times Z on every mode below p; mode p is qubit p.
ObservableSum jordan_wigner(const FermionOperator& op, int n_modes);

}  // namespace c4s
