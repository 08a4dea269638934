#include "ontocell/su2_bridge.hpp"
#include "ontocell/cell.hpp"
#include "ontocell/io.hpp"
#include "ontocell/kernels.hpp"
#include "ontocell/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace ontocell {

namespace {

// Off-diagonal band of the recursion matrix: t[s] couples s and s+1,
// t[i] = sqrt((ell+1+s)(ell-s)) at s = i - ell. With u = 2s = 2i - 2ell,
// (2ell+2+u)(2ell-u)/4 is an exact quarter-integer product.
std::vector<double> recursion_band(HalfInt ell) {
    const int dim = ell.dim();
    std::vector<double> t(static_cast<size_t>(dim > 0 ? dim - 1 : 0));
    for (int i = 0; i + 1 < dim; ++i) {
        const int u = 2 * i - ell.twice;  // 2s
        const double prod = 0.25 * static_cast<double>(ell.twice + 2 + u) *
                            static_cast<double>(ell.twice - u);
        t[static_cast<size_t>(i)] = std::sqrt(prod);
    }
    return t;
}

// Solve (T - lambda I) x = b for symmetric tridiagonal T given by band t,
// zero diagonal. LU with partial pivoting over the three bands; tiny pivots
// are replaced by eps*scale so inverse iteration can ride the singularity.
void shifted_tridiag_solve(const std::vector<double>& t, double lambda, double scale,
                           std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    std::vector<double> d(static_cast<size_t>(n), -lambda);
    std::vector<double> e(static_cast<size_t>(n), 0.0);   // superdiag
    std::vector<double> f(static_cast<size_t>(n), 0.0);   // second superdiag (fill-in)
    std::vector<double> sub(static_cast<size_t>(n), 0.0); // subdiag
    for (int i = 0; i + 1 < n; ++i) { e[static_cast<size_t>(i)] = t[static_cast<size_t>(i)]; sub[static_cast<size_t>(i + 1)] = t[static_cast<size_t>(i)]; }

    const double tiny = 1e-300 + 1e-14 * scale;
    for (int k = 0; k + 1 < n; ++k) {
        double dk = d[static_cast<size_t>(k)];
        double sk = sub[static_cast<size_t>(k + 1)];
        if (std::abs(sk) > std::abs(dk)) {
            // swap row k and k+1
            std::swap(d[static_cast<size_t>(k)], sub[static_cast<size_t>(k + 1)]);
            std::swap(e[static_cast<size_t>(k)], d[static_cast<size_t>(k + 1)]);
            if (k + 2 < n) std::swap(f[static_cast<size_t>(k)], e[static_cast<size_t>(k + 1)]);
            std::swap(x[static_cast<size_t>(k)], x[static_cast<size_t>(k + 1)]);
        }
        dk = d[static_cast<size_t>(k)];
        if (std::abs(dk) < tiny) dk = d[static_cast<size_t>(k)] = (dk >= 0 ? tiny : -tiny);
        const double m = sub[static_cast<size_t>(k + 1)] / dk;
        d[static_cast<size_t>(k + 1)] -= m * e[static_cast<size_t>(k)];
        if (k + 2 < n) e[static_cast<size_t>(k + 1)] -= m * f[static_cast<size_t>(k)];
        x[static_cast<size_t>(k + 1)] -= m * x[static_cast<size_t>(k)];
    }
    if (std::abs(d[static_cast<size_t>(n - 1)]) < tiny)
        d[static_cast<size_t>(n - 1)] = (d[static_cast<size_t>(n - 1)] >= 0 ? tiny : -tiny);
    for (int k = n - 1; k >= 0; --k) {
        double s = x[static_cast<size_t>(k)];
        if (k + 1 < n) s -= e[static_cast<size_t>(k)] * x[static_cast<size_t>(k + 1)];
        if (k + 2 < n) s -= f[static_cast<size_t>(k)] * x[static_cast<size_t>(k + 2)];
        x[static_cast<size_t>(k)] = s / d[static_cast<size_t>(k)];
    }
}

uint64_t splitmix64(uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

void normalize(std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    s = std::sqrt(s);
    if (s == 0.0) throw std::runtime_error("bridge row: degenerate all-zero candidate");
    for (double& v : x) v /= s;
}

// Sign convention: entry at s = +ell strictly positive; fall back to the
// largest-magnitude entry when that one is numerically zero.
void fix_row_sign(std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    double pilot = x[static_cast<size_t>(n - 1)];
    if (std::abs(pilot) < 1e-14) {
        int best = 0;
        for (int i = 1; i < n; ++i)
            if (std::abs(x[static_cast<size_t>(i)]) > std::abs(x[static_cast<size_t>(best)])) best = i;
        pilot = x[static_cast<size_t>(best)];
    }
    if (pilot < 0)
        for (double& v : x) v = -v;
}

}  // namespace

BridgeMatrix bridge_by_recursion(HalfInt ell) {
    const int dim = ell.dim();
    if (dim > 4096) throw std::invalid_argument("bridge_by_recursion: 2*ell+1 must be <= 4096");
    BridgeMatrix b(ell);
    const std::vector<double> band = recursion_band(ell);
    double scale = 1.0;
    for (double t : band) scale = std::max(scale, 2.0 * t);

#pragma omp parallel for schedule(dynamic)
    for (int row = 0; row < dim; ++row) {
        const double lambda = static_cast<double>(2 * row - ell.twice);  // 2r, exact integer
        std::vector<double> x(static_cast<size_t>(dim));
        uint64_t seed = 0x5eedu + static_cast<uint64_t>(row) * 0x10001u + static_cast<uint64_t>(ell.twice);
        for (double& v : x) v = (static_cast<double>(splitmix64(seed) >> 11) * 0x1.0p-53) - 0.5;
        normalize(x);
        for (int it = 0; it < 3; ++it) {
            shifted_tridiag_solve(band, lambda, scale, x);
            normalize(x);
        }
        // one residual check; a further iteration if the start was unlucky
        double res = 0.0;
        for (int i = 0; i < dim; ++i) {
            double ti = -lambda * x[static_cast<size_t>(i)];
            if (i > 0) ti += band[static_cast<size_t>(i - 1)] * x[static_cast<size_t>(i - 1)];
            if (i + 1 < dim) ti += band[static_cast<size_t>(i)] * x[static_cast<size_t>(i + 1)];
            res = std::max(res, std::abs(ti));
        }
        if (res > 1e-10 * scale) {
            shifted_tridiag_solve(band, lambda, scale, x);
            normalize(x);
        }
        fix_row_sign(x);
        for (int j = 0; j < dim; ++j) b.at(row, j) = x[static_cast<size_t>(j)];
    }
    return b;
}

ComplexMatrix rotation_exponential(HalfInt ell) {
    const int dim = ell.dim();
    if (dim > 4096) throw std::invalid_argument("rotation_exponential: 2*ell+1 must be <= 4096");
    if (dim < 2) throw std::invalid_argument("rotation_exponential: need ell >= 1/2");
    const CellSpec spec(dim, 1.0);
    const AngularOperators ops = angular_operators(spec);
    return mat_exp(ops.l1, cplx(0.0, 0.5 * kPi));
}

BridgeMatrix bridge_by_rotation(HalfInt ell) {
    const ComplexMatrix x = rotation_exponential(ell);
    const int dim = ell.dim();
    // exp(i pi L1/2) = diag(e^{-i pi m/2}) d(pi/2) diag(e^{+i pi m'/2}) with
    // real d; undo the diagonal phases, transpose so row r pairs with
    // eigenvalue 2r of the recursion matrix, then apply the row sign rule.
    BridgeMatrix b(ell);
    double worst_imag = 0.0;
    for (int i = 0; i < dim; ++i) {
        const double mi = 0.5 * (2 * i - ell.twice);
        for (int j = 0; j < dim; ++j) {
            const double mj = 0.5 * (2 * j - ell.twice);
            const double arg = 0.5 * kPi * (mi - mj);
            const cplx val = cplx(std::cos(arg), std::sin(arg)) * x.at(i, j);
            worst_imag = std::max(worst_imag, std::abs(val.imag()));
            b.at(j, i) = val.real();  // transposed store
        }
    }
    if (worst_imag > 1e-8)
        throw std::runtime_error("bridge_by_rotation: phase conjugation left imaginary residue");
    for (int row = 0; row < dim; ++row) {
        std::vector<double> r(static_cast<size_t>(dim));
        for (int j = 0; j < dim; ++j) r[static_cast<size_t>(j)] = b.at(row, j);
        normalize(r);
        fix_row_sign(r);
        for (int j = 0; j < dim; ++j) b.at(row, j) = r[static_cast<size_t>(j)];
    }
    return b;
}

double support_profile(const BridgeMatrix& b, double radius_factor) {
    if (radius_factor < 1.0)
        throw std::invalid_argument("support_profile: radius_factor must be >= 1");
    const double r2 = radius_factor * b.ell.value();
    const double cutoff = r2 * r2;
    double best = 0.0;
    for (int i = 0; i < b.dim; ++i) {
        const double ri = b.label(i).value();
        for (int j = 0; j < b.dim; ++j) {
            const double sj = b.label(j).value();
            if (ri * ri + sj * sj > cutoff) best = std::max(best, std::abs(b.at(i, j)));
        }
    }
    return best;
}

std::vector<unsigned char> render_bridge_pixels(const BridgeMatrix& b) {
    double lo = b.a.empty() ? 0.0 : b.a[0], hi = lo;
    for (double v : b.a) { lo = std::min(lo, v); hi = std::max(hi, v); }
    std::vector<unsigned char> px(b.a.size(), 128);
    if (hi > lo) {
        for (size_t i = 0; i < b.a.size(); ++i) {
            const double t = (b.a[i] - lo) / (hi - lo);  // 0 at min, 1 at max
            px[i] = static_cast<unsigned char>(std::lround(255.0 * (1.0 - t)));
        }
    }
    return px;
}

void render_bridge(const BridgeMatrix& b, const std::string& path) {
    write_pgm(path, b.dim, b.dim, render_bridge_pixels(b));
}

double max_bridge_diff(const BridgeMatrix& a, const BridgeMatrix& b) {
    if (a.dim != b.dim) throw std::invalid_argument("max_bridge_diff: dimension mismatch");
    double s = 0.0;
    for (size_t i = 0; i < a.a.size(); ++i) s = std::max(s, std::abs(a.a[i] - b.a[i]));
    return s;
}

}  // namespace ontocell
