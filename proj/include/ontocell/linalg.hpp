#pragma once

#include "ontocell/types.hpp"

#include <vector>

namespace ontocell {

struct EigenSystem {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // columns are the eigenvectors
};

struct JacobiOptions {
    int max_sweeps = 64;
    double tol = 1e-13;  // relative off-diagonal Frobenius target
};

/// Cyclic Jacobi for complex Hermitian matrices. Throws on non-convergence.
EigenSystem hermitian_eigensystem(const ComplexMatrix& m, JacobiOptions opts = {});

bool is_hermitian(const ComplexMatrix& m, double tol = 1e-12);

/// exp(scale*m). Spectral route for Hermitian m, Pade 13 scaling-and-squaring
/// otherwise.
ComplexMatrix mat_exp(const ComplexMatrix& m, cplx scale);

struct PermutationCheck {
    bool is_permutation = false;
    std::vector<int> map;     // column k maps to row map[k]
    double max_residual = 0;  // worst deviation from the exact 0/1 pattern
    std::vector<cplx> phases; // phase of the near-unit entry, per column
};

/// True iff every column holds exactly one entry of modulus within tol of 1
/// and the rest below tol, with the resulting map a bijection. Phases of the
/// near-unit entries are reported separately; they do not affect the verdict.
PermutationCheck is_permutation(const ComplexMatrix& m, double tol = 1e-10);

double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b);

/// Gaussian elimination with partial pivoting; solves a*x = b for dense b.
ComplexMatrix solve_linear(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace ontocell
