#pragma once

#include "ontocell/cell.hpp"
#include "ontocell/types.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace ontocell {

/// Multi-cell lattice. Basis ordering is mixed-radix with cell 0 the
/// fastest-varying digit; all cells share delta_t.
struct LatticeSpec {
    std::vector<CellSpec> cells;
    double delta_t = 1.0;
    std::vector<std::pair<int, int>> neighbor_pairs;  // adjacency, reporting only

    LatticeSpec() = default;
    LatticeSpec(std::vector<int> state_counts, double dt);

    int dimension() const;  // product of cell sizes, validated <= 4096
    int encode(const std::vector<int>& ks) const;
    std::vector<int> decode(int index) const;
};

struct SieveCondition {
    int sieve_cell = 0;
    std::vector<int> values;  // nonempty set of sieve-cell states
};

/// Exchange of the target cell's states k1 <-> k2, optionally gated by a
/// sieve condition on another cell. strength in (0, pi], pi = ontological;
/// the +- sign of the projector term rides separately.
struct ExchangeTerm {
    int target_cell = 0;
    int k1 = 0, k2 = 1;  // k2 > k1
    double strength = kPi;
    int sign = +1;
    std::optional<SieveCondition> condition;
};

struct ClassicalConfig {
    std::vector<int> k;
};

/// Places a single-cell operator on one tensor factor, identity elsewhere,
/// respecting the mixed-radix basis order.
ComplexMatrix embed_on_cell(const LatticeSpec& lattice, int cell, const ComplexMatrix& op);

/// H0 = sum over cells of the cell Hamiltonian acting on its factor, in the
/// product ontological basis.
ComplexMatrix build_H0(const LatticeSpec& lattice);

/// strength * sign * P_r (sieve cell) x |psi><psi| (target cell) x identity,
/// with |psi> = (|k1> - |k2>)/sqrt(2). Hermitian by construction.
ComplexMatrix exchange_hamiltonian(const LatticeSpec& lattice, const ExchangeTerm& term);

void validate_term(const LatticeSpec& lattice, const ExchangeTerm& term);

/// Deterministic update: conditional swaps in declared term order, then every
/// cell advances k -> k+1 mod N. Bijective. All strengths must equal pi.
ClassicalConfig classical_step(const LatticeSpec& lattice, const std::vector<ExchangeTerm>& terms,
                               const ClassicalConfig& cfg);

/// Inverse of classical_step: un-advance, then swaps in reverse order.
ClassicalConfig classical_step_inverse(const LatticeSpec& lattice,
                                       const std::vector<ExchangeTerm>& terms,
                                       const ClassicalConfig& cfg);

enum class StepMode {
    equivalence,  // shift * ordered product of exp(-i term); matches classical_step
    effective     // exp(-i (H0 + sum of terms) delta_t), for small-strength studies
};

ComplexMatrix one_step_unitary(const LatticeSpec& lattice, const std::vector<ExchangeTerm>& terms,
                               StepMode mode);

struct LocalityEntry {
    int term_a = 0, term_b = 0;
    double commutator = 0.0;
    bool disjoint_support = false;
};

/// Commutator norms for every pair of terms; disjoint cell support implies
/// exact commutation.
std::vector<LocalityEntry> locality_report(const LatticeSpec& lattice,
                                           const std::vector<ExchangeTerm>& terms);

/// |<low| H_int |low'>| with the sieve-cell components truncated to energies
/// <= e_max. The conditioned term must carry a sieve condition.
double low_energy_matrix_element(const LatticeSpec& lattice, const ExchangeTerm& term,
                                 double e_max);

struct EquivalenceReport {
    bool permutation_ok = false;
    bool matches_classical = false;
    double max_residual = 0.0;

    bool passed() const { return permutation_ok && matches_classical; }
};

/// Runs one_step_unitary in equivalence mode, checks it is a permutation at
/// the given tolerance and that the permutation equals classical_step on
/// every basis configuration.
EquivalenceReport verify_equivalence(const LatticeSpec& lattice,
                                     const std::vector<ExchangeTerm>& terms, double tol = 1e-10);

struct RandomLatticeParams {
    int max_cells = 4;
    int max_states = 6;
    int max_terms = 5;
};

struct RandomLattice {
    LatticeSpec lattice;
    std::vector<ExchangeTerm> terms;
};

/// Seeded lattice + strength-pi term generator for the randomized
/// equivalence suite.
RandomLattice random_lattice(std::mt19937_64& rng, const RandomLatticeParams& params = {});

}  // namespace ontocell
