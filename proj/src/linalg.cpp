#include "ontocell/linalg.hpp"
#include "ontocell/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ontocell {

bool is_hermitian(const ComplexMatrix& m, double tol) {
    const int n = m.dim;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            if (std::abs(m.at(i, j) - std::conj(m.at(j, i))) > tol) return false;
    return true;
}

namespace {

double offdiag_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j)
            if (i != j) s += std::norm(a.at(i, j));
    return std::sqrt(s);
}

}  // namespace

EigenSystem hermitian_eigensystem(const ComplexMatrix& m, JacobiOptions opts) {
    if (!is_hermitian(m, 1e-10 * std::max(1.0, kern::max_abs(m))))
        throw std::invalid_argument("hermitian_eigensystem: input is not Hermitian");
    const int n = m.dim;
    ComplexMatrix a = m;
    ComplexMatrix v = ComplexMatrix::identity(n, m.basis);

    const double scale = std::max(kern::frobenius_norm(a), 1e-300);
    bool converged = offdiag_norm(a) <= opts.tol * scale;
    for (int sweep = 0; sweep < opts.max_sweeps && !converged; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = a.at(p, q);
                const double b = std::abs(apq);
                if (b <= 1e-300) continue;
                const cplx phase = apq / b;
                const double app = a.at(p, p).real();
                const double aqq = a.at(q, q).real();
                // tan(2*theta) = 2b/(app-aqq); stable smaller-root form
                const double tau = (app - aqq) / (2.0 * b);
                double t;
                if (std::abs(tau) > 1e150) {
                    t = 1.0 / (2.0 * tau);
                } else {
                    t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx sp = s * phase;             // enters column p
                const cplx spc = s * std::conj(phase); // enters column q

                // A <- U' A U with U = [[c, -s*phase],[s*conj(phase), c]]
                for (int i = 0; i < n; ++i) {
                    const cplx aip = a.at(i, p), aiq = a.at(i, q);
                    a.at(i, p) = c * aip + spc * aiq;
                    a.at(i, q) = -sp * aip + c * aiq;
                }
                for (int j = 0; j < n; ++j) {
                    const cplx apj = a.at(p, j), aqj = a.at(q, j);
                    a.at(p, j) = c * apj + sp * aqj;
                    a.at(q, j) = -spc * apj + c * aqj;
                }
                for (int i = 0; i < n; ++i) {
                    const cplx vip = v.at(i, p), viq = v.at(i, q);
                    v.at(i, p) = c * vip + spc * viq;
                    v.at(i, q) = -sp * vip + c * viq;
                }
            }
        }
        converged = offdiag_norm(a) <= opts.tol * scale;
    }
    if (!converged)
        throw std::runtime_error("hermitian_eigensystem: Jacobi iteration did not converge");

    EigenSystem es;
    es.values.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) es.values[static_cast<size_t>(i)] = a.at(i, i).real();

    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return es.values[static_cast<size_t>(i)] < es.values[static_cast<size_t>(j)]; });

    EigenSystem sorted;
    sorted.values.resize(static_cast<size_t>(n));
    sorted.vectors = ComplexMatrix(n, m.basis);
    for (int j = 0; j < n; ++j) {
        sorted.values[static_cast<size_t>(j)] = es.values[static_cast<size_t>(order[static_cast<size_t>(j)])];
        for (int i = 0; i < n; ++i) sorted.vectors.at(i, j) = v.at(i, order[static_cast<size_t>(j)]);
    }
    sorted.vectors.flag_unitary = true;
    return sorted;
}

ComplexMatrix solve_linear(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim != b.dim) throw std::invalid_argument("solve_linear: dimension mismatch");
    const int n = a.dim;
    ComplexMatrix lu = a;
    ComplexMatrix x = b;
    std::vector<int> piv(static_cast<size_t>(n));
    std::iota(piv.begin(), piv.end(), 0);
    for (int k = 0; k < n; ++k) {
        int pr = k;
        double best = std::abs(lu.at(k, k));
        for (int i = k + 1; i < n; ++i)
            if (std::abs(lu.at(i, k)) > best) { best = std::abs(lu.at(i, k)); pr = i; }
        if (best == 0.0) throw std::runtime_error("solve_linear: singular matrix");
        if (pr != k) {
            for (int j = 0; j < n; ++j) { std::swap(lu.at(k, j), lu.at(pr, j)); std::swap(x.at(k, j), x.at(pr, j)); }
        }
        const cplx pivval = lu.at(k, k);
        for (int i = k + 1; i < n; ++i) {
            const cplx f = lu.at(i, k) / pivval;
            if (f == cplx(0.0, 0.0)) continue;
            lu.at(i, k) = f;
            for (int j = k + 1; j < n; ++j) lu.at(i, j) -= f * lu.at(k, j);
            for (int j = 0; j < n; ++j) x.at(i, j) -= f * x.at(k, j);
        }
    }
    for (int k = n - 1; k >= 0; --k) {
        const cplx pivval = lu.at(k, k);
        for (int j = 0; j < n; ++j) {
            cplx s = x.at(k, j);
            for (int i = k + 1; i < n; ++i) s -= lu.at(k, i) * x.at(i, j);
            x.at(k, j) = s / pivval;
        }
    }
    return x;
}

namespace {

// Pade 13 scaling-and-squaring (Higham 2005 coefficients).
ComplexMatrix pade_exp(const ComplexMatrix& a) {
    static const double b[] = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
        1187353796428800.0,  129060195264000.0,   10559470521600.0,
        670442572800.0,      33522128640.0,       1323241920.0,
        40840800.0,          960960.0,            16380.0,
        182.0,               1.0};
    const int n = a.dim;
    double norm1 = 0.0;
    for (int j = 0; j < n; ++j) {
        double col = 0.0;
        for (int i = 0; i < n; ++i) col += std::abs(a.at(i, j));
        norm1 = std::max(norm1, col);
    }
    int squarings = 0;
    ComplexMatrix as = a;
    const double theta13 = 5.371920351148152;
    if (norm1 > theta13) {
        squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
        as = kern::scale(a, cplx(std::ldexp(1.0, -squarings), 0.0));
    }
    const ComplexMatrix id = ComplexMatrix::identity(n, a.basis);
    const ComplexMatrix a2 = kern::multiply(as, as);
    const ComplexMatrix a4 = kern::multiply(a2, a2);
    const ComplexMatrix a6 = kern::multiply(a2, a4);

    // U = A*(A6*(b13 A6 + b11 A4 + b9 A2) + b7 A6 + b5 A4 + b3 A2 + b1 I)
    ComplexMatrix w1 = kern::add(kern::scale(a6, b[13]), kern::add(kern::scale(a4, b[11]), kern::scale(a2, b[9])));
    ComplexMatrix w2 = kern::add(kern::scale(a6, b[7]),
                                 kern::add(kern::scale(a4, b[5]),
                                           kern::add(kern::scale(a2, b[3]), kern::scale(id, b[1]))));
    ComplexMatrix u = kern::multiply(as, kern::add(kern::multiply(a6, w1), w2));
    // V = A6*(b12 A6 + b10 A4 + b8 A2) + b6 A6 + b4 A4 + b2 A2 + b0 I
    ComplexMatrix z1 = kern::add(kern::scale(a6, b[12]), kern::add(kern::scale(a4, b[10]), kern::scale(a2, b[8])));
    ComplexMatrix v = kern::add(kern::multiply(a6, z1),
                                kern::add(kern::scale(a6, b[6]),
                                          kern::add(kern::scale(a4, b[4]),
                                                    kern::add(kern::scale(a2, b[2]), kern::scale(id, b[0])))));

    ComplexMatrix num = kern::add(v, u);
    ComplexMatrix den = kern::subtract(v, u);
    ComplexMatrix r = solve_linear(den, num);
    for (int s = 0; s < squarings; ++s) r = kern::multiply(r, r);
    return r;
}

}  // namespace

ComplexMatrix mat_exp(const ComplexMatrix& m, cplx scale) {
    if (m.dim < 1) throw std::invalid_argument("mat_exp: empty matrix");
    if (is_hermitian(m, 1e-12 * std::max(1.0, kern::max_abs(m)))) {
        const EigenSystem es = hermitian_eigensystem(m);
        const int n = m.dim;
        ComplexMatrix d(n, m.basis);
        for (int i = 0; i < n; ++i) d.at(i, i) = std::exp(scale * es.values[static_cast<size_t>(i)]);
        ComplexMatrix r = kern::multiply(kern::multiply(es.vectors, d), kern::adjoint(es.vectors));
        r.basis = m.basis;
        return r;
    }
    return pade_exp(kern::scale(m, scale));
}

PermutationCheck is_permutation(const ComplexMatrix& m, double tol) {
    if (tol <= 0) throw std::invalid_argument("is_permutation: tol must be > 0");
    const int n = m.dim;
    PermutationCheck res;
    res.map.assign(static_cast<size_t>(n), -1);
    res.phases.assign(static_cast<size_t>(n), cplx(0.0, 0.0));
    res.is_permutation = true;
    std::vector<char> hit(static_cast<size_t>(n), 0);
    for (int col = 0; col < n; ++col) {
        int unit_row = -1;
        double worst = 0.0;
        for (int row = 0; row < n; ++row) {
            const double mag = std::abs(m.at(row, col));
            if (std::abs(mag - 1.0) <= tol) {
                if (unit_row >= 0) { res.is_permutation = false; }
                unit_row = row;
                worst = std::max(worst, std::abs(mag - 1.0));
            } else if (mag > tol) {
                res.is_permutation = false;
                worst = std::max(worst, mag);
            } else {
                worst = std::max(worst, mag);
            }
        }
        if (unit_row < 0) { res.is_permutation = false; }
        else {
            res.map[static_cast<size_t>(col)] = unit_row;
            const cplx e = m.at(unit_row, col);
            res.phases[static_cast<size_t>(col)] = e / std::abs(e);
            if (hit[static_cast<size_t>(unit_row)]) res.is_permutation = false;
            hit[static_cast<size_t>(unit_row)] = 1;
            // residual: distance of this column from the exact pattern
            worst = std::max(worst, std::abs(std::abs(e) - 1.0));
        }
        res.max_residual = std::max(res.max_residual, worst);
    }
    return res;
}

double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim != b.dim) throw std::invalid_argument("commutator_norm: dimension mismatch");
    return kern::frobenius_norm(kern::subtract(kern::multiply(a, b), kern::multiply(b, a)));
}

}  // namespace ontocell
