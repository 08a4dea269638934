#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ontocell/automaton.hpp"
#include "ontocell/kernels.hpp"
#include "ontocell/linalg.hpp"

#include <cmath>
#include <random>
#include <set>

using namespace ontocell;

TEST_CASE("lattice encode/decode round trip, cell 0 fastest") {
    const LatticeSpec lat({4, 3, 2}, 1.0);
    CHECK(lat.dimension() == 24);
    CHECK(lat.encode({1, 0, 0}) == 1);
    CHECK(lat.encode({0, 1, 0}) == 4);
    CHECK(lat.encode({0, 0, 1}) == 12);
    for (int i = 0; i < 24; ++i) CHECK(lat.encode(lat.decode(i)) == i);
    CHECK_THROWS_AS(LatticeSpec({64, 64, 64}, 1.0), std::invalid_argument);
}

TEST_CASE("H0: single cell degenerates to the cell hamiltonian") {
    const LatticeSpec lat({5}, 0.7);
    const ComplexMatrix h0 = build_H0(lat);
    CHECK(kern::max_abs_diff(h0, hamiltonian(CellSpec(5, 0.7), Basis::ontological)) < 1e-14);
}

TEST_CASE("H0: exp is the simultaneous shift of all cells") {
    const LatticeSpec lat({2, 3}, 1.0);
    const ComplexMatrix u = mat_exp(build_H0(lat), cplx(0.0, -1.0));
    const PermutationCheck pc = is_permutation(u, 1e-9);
    CHECK(pc.is_permutation);
    for (int idx = 0; idx < 6; ++idx) {
        auto ks = lat.decode(idx);
        const int expect = lat.encode({(ks[0] + 1) % 2, (ks[1] + 1) % 3});
        CHECK(pc.map[static_cast<size_t>(idx)] == expect);
    }
}

TEST_CASE("H0 spectrum: Kronecker-sum oracle n1 w1 + n2 w2") {
    const LatticeSpec lat({2, 3}, 1.0);
    const EigenSystem es = hermitian_eigensystem(build_H0(lat));
    const double w1 = lat.cells[0].omega(), w2 = lat.cells[1].omega();
    std::vector<double> expect;
    for (int n1 = 0; n1 < 2; ++n1)
        for (int n2 = 0; n2 < 3; ++n2) expect.push_back(n1 * w1 + n2 * w2);
    std::sort(expect.begin(), expect.end());
    for (size_t i = 0; i < expect.size(); ++i)
        CHECK(es.values[i] == doctest::Approx(expect[i]).epsilon(1e-10));
}

TEST_CASE("exchange hamiltonian: pi swap on a single cell") {
    const LatticeSpec lat({2}, 1.0);
    ExchangeTerm term;
    term.target_cell = 0; term.k1 = 0; term.k2 = 1; term.strength = kPi;
    const ComplexMatrix h = exchange_hamiltonian(lat, term);
    const ComplexMatrix u = mat_exp(h, cplx(0.0, -1.0));
    ComplexMatrix swap(2);
    swap.at(0, 1) = 1.0; swap.at(1, 0) = 1.0;
    CHECK(kern::max_abs_diff(u, swap) < 1e-12);

    // |phi> = (|k1> + |k2>)/sqrt(2) has eigenvalue 0
    ComplexVector phi(2);
    phi[0] = 1.0 / std::sqrt(2.0);
    phi[1] = 1.0 / std::sqrt(2.0);
    const ComplexVector hphi = kern::apply(h, phi);
    CHECK(std::abs(hphi[0]) < 1e-15);
    CHECK(std::abs(hphi[1]) < 1e-15);
}

TEST_CASE("exchange hamiltonian: exact hermiticity, sieve projector support") {
    const LatticeSpec lat({4, 3}, 1.0);
    ExchangeTerm term;
    term.target_cell = 0; term.k1 = 1; term.k2 = 3;
    term.condition = SieveCondition{1, {2}};
    const ComplexMatrix h = exchange_hamiltonian(lat, term);
    CHECK(kern::max_abs_diff(h, kern::adjoint(h)) == 0.0);

    // rows whose sieve value is not 2 vanish identically
    for (int idx = 0; idx < lat.dimension(); ++idx) {
        const auto ks = lat.decode(idx);
        if (ks[1] == 2) continue;
        for (int j = 0; j < lat.dimension(); ++j) CHECK(h.at(idx, j) == cplx(0.0, 0.0));
    }

    ExchangeTerm bad = term;
    bad.condition = SieveCondition{0, {1}};
    CHECK_THROWS_AS(exchange_hamiltonian(lat, bad), std::invalid_argument);
}

TEST_CASE("classical step: no terms, single swap, conditioned two-cell example") {
    const LatticeSpec one({4}, 1.0);
    CHECK(classical_step(one, {}, ClassicalConfig{{2}}).k[0] == 3);

    ExchangeTerm term;
    term.target_cell = 0; term.k1 = 1; term.k2 = 3;
    CHECK(classical_step(one, {term}, ClassicalConfig{{1}}).k[0] == 0);  // swap to 3, advance to 0

    const LatticeSpec two({4, 3}, 1.0);
    ExchangeTerm cond;
    cond.target_cell = 0; cond.k1 = 0; cond.k2 = 2;
    cond.condition = SieveCondition{1, {1}};
    const auto a = classical_step(two, {cond}, ClassicalConfig{{0, 1}});
    CHECK(a.k == std::vector<int>{3, 2});
    const auto b = classical_step(two, {cond}, ClassicalConfig{{0, 0}});
    CHECK(b.k == std::vector<int>{1, 1});

    // bijectivity over all 12 configurations
    std::set<int> images;
    for (int idx = 0; idx < 12; ++idx)
        images.insert(two.encode(classical_step(two, {cond}, ClassicalConfig{two.decode(idx)}).k));
    CHECK(images.size() == 12);

    ExchangeTerm weak = term;
    weak.strength = kPi / 2;
    CHECK_THROWS_AS(classical_step(one, {weak}, ClassicalConfig{{0}}), std::invalid_argument);
}

TEST_CASE("classical step inverse returns every configuration") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 30; ++trial) {
        const RandomLattice rl = random_lattice(rng);
        const int dim = rl.lattice.dimension();
        for (int idx = 0; idx < dim; ++idx) {
            const ClassicalConfig cfg{rl.lattice.decode(idx)};
            const ClassicalConfig fwd = classical_step(rl.lattice, rl.terms, cfg);
            const ClassicalConfig back = classical_step_inverse(rl.lattice, rl.terms, fwd);
            CHECK(back.k == cfg.k);
        }
    }
}

TEST_CASE("one step unitary: no terms gives the shift permutation") {
    const LatticeSpec lat({3, 2}, 1.0);
    const ComplexMatrix u = one_step_unitary(lat, {}, StepMode::equivalence);
    const PermutationCheck pc = is_permutation(u, 1e-12);
    CHECK(pc.is_permutation);
    for (int idx = 0; idx < 6; ++idx) {
        auto ks = lat.decode(idx);
        CHECK(pc.map[static_cast<size_t>(idx)] == lat.encode({(ks[0] + 1) % 3, (ks[1] + 1) % 2}));
    }
}

TEST_CASE("one step unitary: equivalence matches classical on the worked example") {
    const LatticeSpec two({4, 3}, 1.0);
    ExchangeTerm cond;
    cond.target_cell = 0; cond.k1 = 0; cond.k2 = 2;
    cond.condition = SieveCondition{1, {1}};
    const EquivalenceReport rep = verify_equivalence(two, {cond});
    CHECK(rep.permutation_ok);
    CHECK(rep.matches_classical);
    CHECK(rep.max_residual < 1e-12);
}

TEST_CASE("one step unitary: fractional strength leaves genuine superpositions") {
    const LatticeSpec one({2}, 1.0);
    ExchangeTerm term;
    term.target_cell = 0; term.k1 = 0; term.k2 = 1; term.strength = kPi / 2;
    const ComplexMatrix u = one_step_unitary(one, {term}, StepMode::equivalence);
    CHECK_FALSE(is_permutation(u, 1e-10).is_permutation);
    // still unitary
    CHECK(kern::max_abs_diff(kern::multiply(kern::adjoint(u), u), ComplexMatrix::identity(2)) <
          1e-12);
}

TEST_CASE("effective mode converges to the equivalence permutation at N=2") {
    // single cell N=2: H0 is itself proportional to the same projector, so
    // the single-exponential route is exact at strength pi and continuous in
    // the strength.
    const LatticeSpec one({2}, 1.0);
    ExchangeTerm term;
    term.target_cell = 0; term.k1 = 0; term.k2 = 1;
    const ComplexMatrix target = one_step_unitary(one, {term}, StepMode::equivalence);
    double prev = 1e9;
    for (double s : {0.25 * kPi, 0.5 * kPi, 0.9 * kPi, 0.99 * kPi, kPi}) {
        ExchangeTerm t = term;
        t.strength = s;
        const ComplexMatrix u = one_step_unitary(one, {t}, StepMode::effective);
        const double d = kern::max_abs_diff(u, target);
        CHECK(d <= prev + 1e-12);
        prev = d;
    }
    CHECK(prev < 1e-10);
}

TEST_CASE("ordering matters when the projector fails to commute with H0") {
    // the same construction at N=4 shows why the equivalence product keeps
    // the exchanges at a well-defined order
    const LatticeSpec one({4}, 1.0);
    ExchangeTerm term;
    term.target_cell = 0; term.k1 = 0; term.k2 = 2;
    const ComplexMatrix eq = one_step_unitary(one, {term}, StepMode::equivalence);
    const ComplexMatrix eff = one_step_unitary(one, {term}, StepMode::effective);
    CHECK(is_permutation(eq, 1e-10).is_permutation);
    CHECK_FALSE(is_permutation(eff, 1e-10).is_permutation);
}

TEST_CASE("exchange sign never affects the classical equivalence") {
    const LatticeSpec lat({5, 2}, 1.0);
    for (int sign : {+1, -1}) {
        ExchangeTerm term;
        term.target_cell = 0; term.k1 = 1; term.k2 = 4; term.sign = sign;
        term.condition = SieveCondition{1, {0}};
        const EquivalenceReport rep = verify_equivalence(lat, {term});
        CHECK(rep.passed());
    }
}

TEST_CASE("randomized equivalence suite (unit-scale sample)") {
    std::mt19937_64 rng(6283185);
    for (int trial = 0; trial < 25; ++trial) {
        const RandomLattice rl = random_lattice(rng);
        const EquivalenceReport rep = verify_equivalence(rl.lattice, rl.terms, 1e-10);
        CHECK(rep.passed());
    }
}

TEST_CASE("locality report: disjoint exact zero, shared-cell witness, identical terms") {
    const LatticeSpec lat({3, 3, 3, 3}, 1.0);
    ExchangeTerm t0, t1;
    t0.target_cell = 0; t0.k1 = 0; t0.k2 = 1; t0.condition = SieveCondition{1, {0}};
    t1.target_cell = 2; t1.k1 = 0; t1.k2 = 2; t1.condition = SieveCondition{3, {1, 2}};
    const auto rep = locality_report(lat, {t0, t1, t0});
    REQUIRE(rep.size() == 3);
    CHECK(rep[0].disjoint_support);
    CHECK(rep[0].commutator == 0.0);
    CHECK(rep[2].commutator == 0.0);  // identical terms commute

    // two unconditioned terms on one cell sharing k2: nonzero by direct oracle
    const LatticeSpec one({4}, 1.0);
    ExchangeTerm a, b;
    a.target_cell = 0; a.k1 = 0; a.k2 = 2;
    b.target_cell = 0; b.k1 = 1; b.k2 = 2;
    const auto rep2 = locality_report(one, {a, b});
    REQUIRE(rep2.size() == 1);
    CHECK_FALSE(rep2[0].disjoint_support);
    // [pi Q1, pi Q2] with <psi1|psi2> = 1/2: Frobenius norm pi^2/2 * sqrt(3/2)
    const double expect = 0.5 * kPi * kPi * std::sqrt(1.5);
    CHECK(rep2[0].commutator == doctest::Approx(expect).epsilon(1e-12));
    CHECK(rep2[0].commutator > 0.1);
}

TEST_CASE("low energy matrix element: unsuppressed reference and monotone suppression") {
    const LatticeSpec lat({2, 32}, 1.0);
    ExchangeTerm term;
    term.target_cell = 0; term.k1 = 0; term.k2 = 1;
    term.condition = SieveCondition{1, {7}};

    const CellSpec& sieve = lat.cells[1];
    const double band = (sieve.n_states - 1) * sieve.omega();

    const double full = low_energy_matrix_element(lat, term, band + 1.0);
    CHECK(full == doctest::Approx(0.5 * kPi).epsilon(1e-12));

    double prev = full;
    for (double frac : {0.75, 0.5, 0.25}) {
        const double v = low_energy_matrix_element(lat, term, frac * band);
        CHECK(v < prev);
        prev = v;
    }

    CHECK_THROWS_AS(low_energy_matrix_element(lat, term, -1.0), std::invalid_argument);
    ExchangeTerm uncond = term;
    uncond.condition.reset();
    CHECK_THROWS_AS(low_energy_matrix_element(lat, uncond, band), std::invalid_argument);
}
