#include "ontocell/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ontocell::kern {

namespace {

void check_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
    if (a.dim != b.dim)
        throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

// Below this dimension the OpenMP fork/join overhead dominates.
constexpr int kParallelCutoff = 48;

}  // namespace

ComplexMatrix ref::multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_same_dim(a, b, "multiply");
    const int n = a.dim;
    ComplexMatrix c(n, a.basis);
    for (int i = 0; i < n; ++i) {
        const cplx* arow = &a.a[static_cast<size_t>(i) * n];
        cplx* crow = &c.a[static_cast<size_t>(i) * n];
        for (int k = 0; k < n; ++k) {
            const cplx aik = arow[k];
            if (aik == cplx(0.0, 0.0)) continue;
            const cplx* brow = &b.a[static_cast<size_t>(k) * n];
            for (int j = 0; j < n; ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_same_dim(a, b, "multiply");
    const int n = a.dim;
    if (n < kParallelCutoff) return ref::multiply(a, b);
    ComplexMatrix c(n, a.basis);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        const cplx* arow = &a.a[static_cast<size_t>(i) * n];
        cplx* crow = &c.a[static_cast<size_t>(i) * n];
        for (int k = 0; k < n; ++k) {
            const cplx aik = arow[k];
            if (aik == cplx(0.0, 0.0)) continue;
            const cplx* brow = &b.a[static_cast<size_t>(k) * n];
            for (int j = 0; j < n; ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

ComplexMatrix ref::kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int na = a.dim, nb = b.dim;
    ComplexMatrix c(na * nb, Basis::product);
    for (int ia = 0; ia < na; ++ia)
        for (int ib = 0; ib < nb; ++ib) {
            cplx* crow = &c.a[static_cast<size_t>(ia * nb + ib) * c.dim];
            for (int ja = 0; ja < na; ++ja) {
                const cplx aij = a.at(ia, ja);
                for (int jb = 0; jb < nb; ++jb) crow[ja * nb + jb] = aij * b.at(ib, jb);
            }
        }
    return c;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int na = a.dim, nb = b.dim;
    if (na * nb < kParallelCutoff) return ref::kron(a, b);
    ComplexMatrix c(na * nb, Basis::product);
#pragma omp parallel for schedule(static)
    for (int ia = 0; ia < na; ++ia)
        for (int ib = 0; ib < nb; ++ib) {
            cplx* crow = &c.a[static_cast<size_t>(ia * nb + ib) * c.dim];
            for (int ja = 0; ja < na; ++ja) {
                const cplx aij = a.at(ia, ja);
                for (int jb = 0; jb < nb; ++jb) crow[ja * nb + jb] = aij * b.at(ib, jb);
            }
        }
    return c;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
    const int n = a.dim;
    ComplexMatrix c(n, a.basis);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c.at(i, j) = std::conj(a.at(j, i));
    return c;
}

ComplexMatrix transpose(const ComplexMatrix& a) {
    const int n = a.dim;
    ComplexMatrix c(n, a.basis);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c.at(i, j) = a.at(j, i);
    return c;
}

ComplexMatrix conjugate(const ComplexMatrix& a) {
    ComplexMatrix c = a;
    for (auto& z : c.a) z = std::conj(z);
    return c;
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_same_dim(a, b, "add");
    ComplexMatrix c = a;
    for (size_t i = 0; i < c.a.size(); ++i) c.a[i] += b.a[i];
    return c;
}

ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_same_dim(a, b, "subtract");
    ComplexMatrix c = a;
    for (size_t i = 0; i < c.a.size(); ++i) c.a[i] -= b.a[i];
    return c;
}

ComplexMatrix scale(const ComplexMatrix& a, cplx s) {
    ComplexMatrix c = a;
    for (auto& z : c.a) z *= s;
    return c;
}

ComplexVector apply(const ComplexMatrix& a, const ComplexVector& v) {
    if (a.dim != v.dim) throw std::invalid_argument("apply: dimension mismatch");
    ComplexVector w(v.dim, v.basis);
    for (int i = 0; i < a.dim; ++i) {
        cplx s(0.0, 0.0);
        const cplx* arow = &a.a[static_cast<size_t>(i) * a.dim];
        for (int j = 0; j < a.dim; ++j) s += arow[j] * v.amp[static_cast<size_t>(j)];
        w[i] = s;
    }
    return w;
}

double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const auto& z : a.a) s += std::norm(z);
    return std::sqrt(s);
}

double max_abs(const ComplexMatrix& a) {
    double s = 0.0;
    for (const auto& z : a.a) s = std::max(s, std::abs(z));
    return s;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_same_dim(a, b, "max_abs_diff");
    double s = 0.0;
    for (size_t i = 0; i < a.a.size(); ++i) s = std::max(s, std::abs(a.a[i] - b.a[i]));
    return s;
}

cplx trace(const ComplexMatrix& a) {
    cplx s(0.0, 0.0);
    for (int i = 0; i < a.dim; ++i) s += a.at(i, i);
    return s;
}

}  // namespace ontocell::kern
