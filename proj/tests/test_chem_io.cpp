#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <fstream>
#include <map>
#include <string>

#include "c4shadow/chem_io.hpp"
#include "c4shadow/eigen_solver.hpp"
#include "c4shadow/errors.hpp"
#include "c4shadow/sim.hpp"
#include "oracles.hpp"

using namespace c4s;
using oracle::Cx;

namespace {

// Dense ladder operator on the full occupation-number space, with the sign
// carried by the parity of earlier modes. Mode 1 occupies the most
// significant index bit, matching the qubit convention.
Eigen::MatrixXcd fock_ladder(int n_modes, int mode, bool create) {
    Eigen::Index dim = Eigen::Index{1} << n_modes;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    int bit = n_modes - mode;
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
        bool occupied = (idx >> bit) & 1;
        if (create == occupied) continue;
        int parity = 0;
        for (int j = 1; j < mode; ++j) parity ^= static_cast<int>(idx >> (n_modes - j)) & 1;
        Eigen::Index out = idx ^ (Eigen::Index{1} << bit);
        m(out, idx) = parity ? -1.0 : 1.0;
    }
    return m;
}

Eigen::MatrixXcd fock_matrix(const FermionOperator& op, int n_modes) {
    Eigen::Index dim = Eigen::Index{1} << n_modes;
    Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& [seq, coeff] : op.terms) {
        Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(dim, dim);
        for (const auto& [mode, create] : seq) term = term * fock_ladder(n_modes, mode, create);
        total += coeff * term;
    }
    return total;
}

}  // namespace

TEST_CASE("the bundled two-qubit Hamiltonian parses term by term") {
    ObservableSum h = parse_pauli_hamiltonian(oracle::kHamiltonianText);
    CHECK(h.n_qubits == 2);
    CHECK(h.terms.size() == 9);
    CHECK(h.terms.at("II") == doctest::Approx(-1.99134).epsilon(1e-12));
    CHECK(h.terms.at("XI") == doctest::Approx(-0.02882925).epsilon(1e-12));
    CHECK(h.terms.at("IX") == doctest::Approx(-0.02882925).epsilon(1e-12));
    CHECK(h.terms.at("ZI") == doctest::Approx(0.0541175).epsilon(1e-12));
    CHECK(h.terms.at("IZ") == doctest::Approx(0.0541175).epsilon(1e-12));
    CHECK(h.terms.at("XX") == doctest::Approx(0.01495595).epsilon(1e-12));
    CHECK(h.terms.at("XZ") == doctest::Approx(0.000151287).epsilon(1e-12));
    CHECK(h.terms.at("ZX") == doctest::Approx(0.000151287).epsilon(1e-12));
    CHECK(h.terms.at("ZZ") == doctest::Approx(0.05900925).epsilon(1e-12));
}

TEST_CASE("the data file and the embedded text describe the same operator") {
    ObservableSum from_file =
        load_pauli_hamiltonian(std::string(TEST_DATA_DIR) + "/active_space_2q.txt");
    ObservableSum embedded = parse_pauli_hamiltonian(oracle::kHamiltonianText);
    REQUIRE(from_file.terms.size() == embedded.terms.size());
    for (const auto& [w, c] : embedded.terms)
        CHECK(from_file.terms.at(w) == doctest::Approx(c).epsilon(1e-12));
}

TEST_CASE("minimal and merged term lists parse") {
    ObservableSum one = parse_pauli_hamiltonian("1.0 Z\n");
    CHECK(one.n_qubits == 1);
    CHECK(one.terms.at("Z") == doctest::Approx(1.0));

    ObservableSum merged = parse_pauli_hamiltonian("0.5 ZZ\n# comment\n\n0.25 ZZ\n");
    CHECK(merged.terms.size() == 1);
    CHECK(merged.terms.at("ZZ") == doctest::Approx(0.75));
}

TEST_CASE("term parsing rejects malformed lines with their line number") {
    auto line_of = [](auto fn) {
        try {
            fn();
        } catch (const ParseError& e) {
            return e.line;
        }
        return -1;
    };
    CHECK(line_of([] { parse_pauli_hamiltonian("1.0 ZZ\n2.0 ZQ\n"); }) == 2);
    CHECK(line_of([] { parse_pauli_hamiltonian("abc ZZ\n"); }) == 1);
    CHECK(line_of([] { parse_pauli_hamiltonian("1.0 ZZ extra\n"); }) == 1);
    CHECK(line_of([] { parse_pauli_hamiltonian("1.0 ZZ\n1.0 Z\n"); }) == 2);
    CHECK_THROWS_AS(parse_pauli_hamiltonian("# nothing here\n"), ParseError);
}

TEST_CASE("emitting and re-parsing a random operator is lossless") {
    Rng rng(31, 0);
    for (int trial = 0; trial < 20; ++trial) {
        ObservableSum h(3);
        const char* letters = "IXYZ";
        for (int t = 0; t < 10; ++t) {
            std::string w;
            for (int q = 0; q < 3; ++q) w.push_back(letters[rng.below(4)]);
            h.add(w, (2 * rng.uniform() - 1) * std::pow(10.0, double(rng.below(7)) - 3));
        }
        ObservableSum back = parse_pauli_hamiltonian(emit_pauli_hamiltonian(h));
        REQUIRE(back.terms.size() == h.terms.size());
        for (const auto& [w, c] : h.terms)
            CHECK(back.terms.at(w) == doctest::Approx(c).epsilon(1e-11));
    }
}

TEST_CASE("integral files parse headers, cores, and symmetric completion") {
    const char* text =
        "&FCI NORB=2,NELEC=2,\n"
        "/\n"
        " 0.303 1 1 1 1\n"
        " 0.175 1 1 2 2\n"
        "-0.031 1 2 0 0\n"
        "-1.172 1 1 0 0\n"
        "-1.054 2 2 0 0\n"
        " 0.5 0 0 0 0\n";
    FermionIntegralTable t = parse_fcidump(text);
    CHECK(t.n_orbitals == 2);
    CHECK(t.n_electrons == 2);
    CHECK(t.core_energy == doctest::Approx(0.5));
    CHECK(t.one_body.at({1, 1}) == doctest::Approx(-1.172));
    CHECK(t.one_body.at({2, 2}) == doctest::Approx(-1.054));
    CHECK(t.one_body.at({1, 2}) == doctest::Approx(-0.031));
    CHECK(t.one_body.at({2, 1}) == doctest::Approx(-0.031));
    CHECK(t.two_body.at({1, 1, 1, 1}) == doctest::Approx(0.303));
    CHECK(t.two_body.at({1, 1, 2, 2}) == doctest::Approx(0.175));
}

TEST_CASE("the bundled integral file loads") {
    std::ifstream in(std::string(TEST_DATA_DIR) + "/active_space_2orb.fcidump");
    REQUIRE(in.good());
    FermionIntegralTable t = parse_fcidump(in);
    CHECK(t.n_orbitals == 2);
    CHECK(t.one_body.at({1, 1}) == doctest::Approx(-1.172));
    CHECK(t.core_energy == doctest::Approx(0.0));
}

TEST_CASE("a core-only integral file is a constant operator") {
    FermionIntegralTable t = parse_fcidump("&FCI NORB=1,NELEC=0,\n&END\n 2.5 0 0 0 0\n");
    CHECK(t.core_energy == doctest::Approx(2.5));
    CHECK(t.one_body.empty());
    CHECK(t.two_body.empty());

    ObservableSum h = jordan_wigner(to_fermion_operator(t), 1);
    CHECK(h.terms.size() == 1);
    CHECK(h.terms.at("I") == doctest::Approx(2.5));
}

TEST_CASE("integral parsing rejects malformed input with line numbers") {
    CHECK_THROWS_AS(parse_fcidump("no header\n"), ParseError);
    CHECK_THROWS_AS(parse_fcidump("&FCI NELEC=2,\n/\n"), ParseError);
    CHECK_THROWS_AS(parse_fcidump("&FCI NORB=2,NELEC=2,\n"), ParseError);
    CHECK_THROWS_AS(parse_fcidump("&FCI NORB=2,NELEC=2,\n/\n1.0 3 1 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_fcidump("&FCI NORB=2,NELEC=2,\n/\n1.0 1 0 1 0\n"), ParseError);
    try {
        parse_fcidump("&FCI NORB=2,NELEC=2,\n/\n1.0 1 1 0 0\n2.0 1 1 0 0\n");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 4);
    }
}

TEST_CASE("emitting and re-parsing an integral table is lossless") {
    FermionIntegralTable t;
    t.n_orbitals = 2;
    t.n_electrons = 2;
    t.core_energy = 0.25;
    t.one_body[{1, 1}] = -1.5;
    t.one_body[{1, 2}] = t.one_body[{2, 1}] = 0.125;
    t.two_body[{1, 1, 2, 2}] = 0.0625;
    FermionIntegralTable back = parse_fcidump(emit_fcidump(t));
    CHECK(back.n_orbitals == t.n_orbitals);
    CHECK(back.n_electrons == t.n_electrons);
    CHECK(back.core_energy == doctest::Approx(t.core_energy));
    CHECK(back.one_body.at({1, 2}) == doctest::Approx(0.125));
    CHECK(back.two_body.at({1, 1, 2, 2}) == doctest::Approx(0.0625));
}

TEST_CASE("number, hopping, and constant operators map to their known words") {
    FermionOperator number;
    number.add({{1, true}, {1, false}}, 1.0);
    ObservableSum n1 = jordan_wigner(number, 2);
    CHECK(n1.terms.size() == 2);
    CHECK(n1.terms.at("II") == doctest::Approx(0.5));
    CHECK(n1.terms.at("ZI") == doctest::Approx(-0.5));

    FermionOperator hop;
    hop.add({{1, true}, {2, false}}, 1.0);
    hop.add({{2, true}, {1, false}}, 1.0);
    ObservableSum h = jordan_wigner(hop, 2);
    CHECK(h.terms.size() == 2);
    CHECK(h.terms.at("XX") == doctest::Approx(0.5));
    CHECK(h.terms.at("YY") == doctest::Approx(0.5));

    FermionOperator constant;
    constant.add({}, 2.5);
    ObservableSum c = jordan_wigner(constant, 2);
    CHECK(c.terms.size() == 1);
    CHECK(c.terms.at("II") == doctest::Approx(2.5));
}

TEST_CASE("the qubit image of random Hermitian operators matches the ladder matrices") {
    Rng rng(77, 1);
    for (int n_modes = 1; n_modes <= 4; ++n_modes) {
        for (int trial = 0; trial < 6; ++trial) {
            FermionOperator op;
            for (int p = 1; p <= n_modes; ++p)
                for (int q = 1; q <= n_modes; ++q) {
                    Cx v(2 * rng.uniform() - 1, p == q ? 0.0 : 2 * rng.uniform() - 1);
                    op.add({{p, true}, {q, false}}, v);
                    if (p != q) op.add({{q, true}, {p, false}}, std::conj(v));
                }
            if (n_modes >= 2) {
                double u = 2 * rng.uniform() - 1;
                op.add({{1, true}, {1, false}, {2, true}, {2, false}}, u);
            }

            ObservableSum h = jordan_wigner(op, n_modes);
            Eigen::MatrixXcd got = oracle::observable_matrix(h);
            Eigen::MatrixXcd want = fock_matrix(op, n_modes);
            CHECK((got - want).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("non-Hermitian operators are refused at mapping time") {
    FermionOperator op;
    op.add({{1, true}}, 1.0);
    CHECK_THROWS_AS(jordan_wigner(op, 2), UnsupportedError);

    FermionOperator lopsided;
    lopsided.add({{1, true}, {2, false}}, 1.0);  // missing the conjugate partner
    CHECK_THROWS_AS(jordan_wigner(lopsided, 2), UnsupportedError);
}

TEST_CASE("the adjoint reverses ladder order and conjugates coefficients") {
    FermionOperator op;
    op.add({{1, true}, {2, false}}, Cx(0.5, -0.25));
    op.add({{2, true}, {1, true}, {1, false}}, Cx(-0.125, 1.0));
    Eigen::MatrixXcd m = fock_matrix(op, 2);
    Eigen::MatrixXcd md = fock_matrix(op.dagger(), 2);
    CHECK((md - m.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("analytic spectra of tiny integral tables are reproduced end to end") {
    // Single mode with energy e: occupation spectrum {0, e}.
    FermionIntegralTable single;
    single.n_orbitals = 1;
    single.n_electrons = 1;
    single.one_body[{1, 1}] = -0.7;
    GroundSolution g1 = ground_state(jordan_wigner(to_fermion_operator(single), 1));
    CHECK(g1.energy == doctest::Approx(-0.7).epsilon(1e-12));

    // Pure hopping of strength t: single-particle levels +-t, ground -|t|.
    FermionIntegralTable hop;
    hop.n_orbitals = 2;
    hop.n_electrons = 1;
    hop.one_body[{1, 2}] = hop.one_body[{2, 1}] = -0.3;
    GroundSolution g2 = ground_state(jordan_wigner(to_fermion_operator(hop), 2));
    CHECK(g2.energy == doctest::Approx(-0.3).epsilon(1e-12));

    // Two levels with a density-density coupling: min over the four fillings
    // of {0, e1, e2, e1 + e2 + U}.
    FermionIntegralTable pair;
    pair.n_orbitals = 2;
    pair.n_electrons = 2;
    pair.one_body[{1, 1}] = -1.172;
    pair.one_body[{2, 2}] = -1.054;
    pair.two_body[{1, 1, 2, 2}] = 0.175;
    GroundSolution g3 = ground_state(jordan_wigner(to_fermion_operator(pair), 2));
    CHECK(g3.energy == doctest::Approx(-1.172 - 1.054 + 0.175).epsilon(1e-12));
}
