#include "ontocell/cell.hpp"
#include "ontocell/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace ontocell {

CellSpec::CellSpec(int n, double dt) : n_states(n), delta_t(dt) {
    if (n < 1) throw std::invalid_argument("CellSpec: N must be >= 1");
    if (!(dt > 0.0)) throw std::invalid_argument("CellSpec: delta_t must be > 0");
}

ComplexMatrix shift_operator(const CellSpec& spec) {
    const int n = spec.n_states;
    ComplexMatrix u(n, Basis::ontological);
    for (int k = 0; k < n; ++k) u.at((k + 1) % n, k) = cplx(1.0, 0.0);
    u.flag_unitary = u.flag_permutation = true;
    return u;
}

ComplexMatrix fourier_matrix(const CellSpec& spec) {
    const int n = spec.n_states;
    ComplexMatrix f(n, Basis::ontological);
    const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(n));
    for (int row = 0; row < n; ++row)
        for (int k = 0; k < n; ++k) {
            // exponent reduced mod N so conjugate-symmetric entries are exact
            const int e = static_cast<int>((static_cast<long long>(row) * k) % n);
            const double arg = kTwoPi * e / n;
            f.at(row, k) = inv_sqrt * cplx(std::cos(arg), std::sin(arg));
        }
    f.flag_unitary = true;
    return f;
}

ComplexMatrix hamiltonian(const CellSpec& spec, Basis basis, bool half_quantum_offset) {
    const int n = spec.n_states;
    const double w = spec.omega();
    const double offset = half_quantum_offset ? 0.5 * w : 0.0;
    ComplexMatrix d(n, Basis::energy);
    for (int i = 0; i < n; ++i) d.at(i, i) = i * w + offset;
    d.flag_hermitian = true;
    if (basis == Basis::energy) return d;
    if (basis != Basis::ontological)
        throw std::invalid_argument("hamiltonian: basis must be ontological or energy");
    ComplexMatrix h = to_ontological(d, spec);
    h.flag_hermitian = true;
    return h;
}

ComplexMatrix beable_S(const CellSpec& spec, int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("beable_S: sign must be +1 or -1");
    const int n = spec.n_states;
    ComplexMatrix s(n, Basis::ontological);
    for (int k = 0; k < n; ++k) {
        const double arg = sign * kTwoPi * k / n;
        s.at(k, k) = cplx(std::cos(arg), std::sin(arg));
    }
    s.flag_unitary = true;
    return s;
}

AngularOperators angular_operators(const CellSpec& spec) {
    const int n = spec.n_states;
    if (n < 2) throw std::invalid_argument("angular_operators: N=1 has no ladder");
    const int two_ell = n - 1;
    AngularOperators ops{ComplexMatrix(n, Basis::energy), ComplexMatrix(n, Basis::energy),
                         ComplexMatrix(n, Basis::energy), ComplexMatrix(n, Basis::energy),
                         ComplexMatrix(n, Basis::energy)};
    for (int m = 0; m < n; ++m) ops.l3.at(m, m) = m - 0.5 * two_ell;
    // (n+1)(2 ell - n) is an exact integer; the band edges vanish exactly.
    for (int m = 0; m + 1 < n; ++m) {
        const double f = std::sqrt(static_cast<double>((m + 1) * (two_ell - m)));
        ops.lplus.at(m + 1, m) = f;
        ops.lminus.at(m, m + 1) = f;
    }
    ops.l1 = kern::scale(kern::add(ops.lplus, ops.lminus), 0.5);
    ops.l2 = kern::scale(kern::subtract(ops.lplus, ops.lminus), cplx(0.0, -0.5));
    ops.l1.flag_hermitian = ops.l2.flag_hermitian = ops.l3.flag_hermitian = true;
    return ops;
}

XPOperators xp_operators(const CellSpec& spec) {
    if (spec.n_states < 2) throw std::invalid_argument("xp_operators: N=1 rejected");
    const AngularOperators ops = angular_operators(spec);
    const double inv_sqrt_ell = 1.0 / std::sqrt(spec.ell().value());
    XPOperators xp;
    xp.x = kern::scale(ops.l2, inv_sqrt_ell);
    xp.p = kern::scale(ops.l1, inv_sqrt_ell);
    xp.x.flag_hermitian = xp.p.flag_hermitian = true;
    return xp;
}

OntPhaseOperator ont_phase_operator(const CellSpec& spec, int sign) {
    if (spec.n_states < 2) throw std::invalid_argument("ont_phase_operator: N >= 2 required");
    OntPhaseOperator op;
    op.exact = beable_S(spec, sign);
    const int n = spec.n_states;
    const int two_ell = n - 1;
    // Finite-N approximant of exp(+-i*phi) built from the ladder operators:
    //   exp(+i phi) ~ (H/w)^(-1/2) L+ / sqrt(2 ell), entries sqrt((2l-m)/(2l))
    //   exp(-i phi) ~ (H/w+1)^(-1/2) L- / sqrt(2 ell), entries sqrt((2l+1-m)/(2l))
    // with the inverse square root taken on the image (always n >= 1 there).
    ComplexMatrix ap(n, Basis::energy);
    if (sign == +1) {
        for (int m = 0; m + 1 < n; ++m)
            ap.at(m + 1, m) = std::sqrt(static_cast<double>(two_ell - m) / two_ell);
    } else {
        for (int m = 1; m < n; ++m)
            ap.at(m - 1, m) = std::sqrt(static_cast<double>(two_ell + 1 - m) / two_ell);
    }
    op.approximant = ap;
    return op;
}

CellState box_fold(int ell, const BoxState& state) {
    if (ell < 1) throw std::invalid_argument("box_fold: ell must be a positive integer");
    if (state.k_tilde < 0 || state.k_tilde > ell)
        throw std::out_of_range("box_fold: k_tilde outside [0, ell]");
    if (state.sigma != 1 && state.sigma != -1)
        throw std::invalid_argument("box_fold: sigma must be +-1");
    return CellState{ell + state.sigma * (state.k_tilde - ell)};
}

BoxState box_unfold(int ell, const CellState& state) {
    if (ell < 1) throw std::invalid_argument("box_unfold: ell must be a positive integer");
    if (state.k < 0 || state.k > 2 * ell)
        throw std::out_of_range("box_unfold: k outside [0, 2*ell]");
    if (state.k <= ell) return BoxState{state.k, +1};
    return BoxState{2 * ell - state.k, -1};
}

std::vector<cplx> energy_wavefunction_powers(const CellSpec& spec, int n) {
    const int nn = spec.n_states;
    if (n < 0 || n >= nn) throw std::out_of_range("energy_wavefunction_powers: n out of range");
    const ComplexMatrix f = fourier_matrix(spec);
    // Coefficients <m_p|n> with monomial vectors m_p[k] = z_k^p / sqrt(N),
    // z_k the unimodular cell variable. The monomial vectors are exactly the
    // Fourier columns, so this is the analysis of column n.
    std::vector<cplx> coeff(static_cast<size_t>(nn), cplx(0.0, 0.0));
    for (int p = 0; p < nn; ++p) {
        cplx s(0.0, 0.0);
        for (int k = 0; k < nn; ++k) s += std::conj(f.at(k, p)) * f.at(k, n);
        coeff[static_cast<size_t>(p)] = s;
    }
    return coeff;
}

ComplexMatrix to_ontological(const ComplexMatrix& energy_op, const CellSpec& spec) {
    const ComplexMatrix f = fourier_matrix(spec);
    ComplexMatrix r = kern::multiply(kern::multiply(f, energy_op), kern::adjoint(f));
    r.basis = Basis::ontological;
    return r;
}

ComplexMatrix to_energy(const ComplexMatrix& ont_op, const CellSpec& spec) {
    const ComplexMatrix f = fourier_matrix(spec);
    ComplexMatrix r = kern::multiply(kern::multiply(kern::adjoint(f), ont_op), f);
    r.basis = Basis::energy;
    return r;
}

}  // namespace ontocell
