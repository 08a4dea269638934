#pragma once

#include "ontocell/types.hpp"

#include <vector>

namespace ontocell {

/// One periodic ontological cell: N states advancing one step per delta_t,
/// returning after the period T = N*delta_t. omega is always derived.
struct CellSpec {
    int n_states = 1;      // N
    double delta_t = 1.0;

    CellSpec() = default;
    CellSpec(int n, double dt);

    double omega() const { return kTwoPi / (n_states * delta_t); }
    double period() const { return n_states * delta_t; }
    HalfInt ell() const { return HalfInt(n_states - 1); }  // (N-1)/2 exact
};

struct CellState {
    int k = 0;
};

struct BoxState {
    int k_tilde = 0;
    int sigma = +1;  // momentum sign
};

/// N x N one-step permutation: entry 1 at (k+1 mod N, k).
ComplexMatrix shift_operator(const CellSpec& spec);

/// F[n][k] = exp(+2*pi*i*n*k/N)/sqrt(N); symmetric and unitary. Column n is
/// the energy eigenstate |n> written in the ontological basis, so
/// adjoint(F) * U * F = diag(exp(-2*pi*i*n/N)).
ComplexMatrix fourier_matrix(const CellSpec& spec);

/// diag(n*omega) in the energy basis; F diag F^dagger in the ontological
/// basis. Ground state energy 0; half_quantum_offset adds omega/2 for
/// comparisons with the conventional oscillator normalisation.
ComplexMatrix hamiltonian(const CellSpec& spec, Basis basis = Basis::ontological,
                          bool half_quantum_offset = false);

/// Beable S_sign: diagonal in the ontological basis with entries
/// exp(sign*2*pi*i*k/N); in the energy basis |n> -> |n+sign mod N>.
ComplexMatrix beable_S(const CellSpec& spec, int sign);

struct AngularOperators {
    ComplexMatrix l1, l2, l3, lplus, lminus;  // energy basis, ascending n
};

/// su(2) generators at ell=(N-1)/2: L3 = diag(n-ell), L+ with entries
/// sqrt((n+1)(2 ell - n)) raising n by one (no cyclic wrap; the band-edge
/// factors vanish). Requires N >= 2.
AngularOperators angular_operators(const CellSpec& spec);

struct XPOperators {
    ComplexMatrix x, p;  // energy basis
};

/// x = L2/sqrt(ell), p = L1/sqrt(ell). Requires N >= 2.
XPOperators xp_operators(const CellSpec& spec);

struct OntPhaseOperator {
    ComplexMatrix exact;        // the S_sign realisation (ontological basis)
    ComplexMatrix approximant;  // (H/omega)^(-1/2)-laddered form (energy basis)
};

OntPhaseOperator ont_phase_operator(const CellSpec& spec, int sign);

/// Folding between the bouncing box coordinate (k_tilde, sigma) and the
/// periodic cell coordinate k = ell + sigma*(k_tilde - ell), integer ell.
CellState box_fold(int ell, const BoxState& state);
BoxState box_unfold(int ell, const CellState& state);

/// Expansion of the energy eigenstate |n> in the monomial basis of the
/// unimodular cell variable; exactly one nonzero coefficient, at power n.
std::vector<cplx> energy_wavefunction_powers(const CellSpec& spec, int n);

/// Basis changes for single-cell operators: energy <-> ontological.
ComplexMatrix to_ontological(const ComplexMatrix& energy_op, const CellSpec& spec);
ComplexMatrix to_energy(const ComplexMatrix& ont_op, const CellSpec& spec);

}  // namespace ontocell
