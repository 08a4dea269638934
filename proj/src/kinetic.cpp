#include "ontocell/kinetic.hpp"
#include "ontocell/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ontocell {

KineticSpec::KineticSpec(std::vector<double> p, std::vector<double> T, std::vector<double> v)
    : p_grid(std::move(p)), T_values(std::move(T)), v_values(std::move(v)) {
    const size_t m = p_grid.size();
    if (m < 2) throw std::invalid_argument("KineticSpec: need at least 2 momentum samples");
    if (T_values.size() != m || v_values.size() != m)
        throw std::invalid_argument("KineticSpec: T and v must match the grid");
    const double step = p_grid[1] - p_grid[0];
    if (!(step > 0.0)) throw std::invalid_argument("KineticSpec: grid must be increasing");
    for (size_t i = 1; i < m; ++i)
        if (std::abs((p_grid[i] - p_grid[i - 1]) - step) > 1e-9 * std::abs(step))
            throw std::invalid_argument("KineticSpec: grid must be uniform");
    v_sign = (v_values[0] > 0.0) ? +1 : -1;
    for (double v : v_values) {
        if (v == 0.0 || (v > 0.0) != (v_sign > 0))
            throw std::invalid_argument("KineticSpec: v(p) must keep a constant nonzero sign");
    }
    invertible_T = true;
    for (size_t i = 1; i < m; ++i) {
        const double d = T_values[i] - T_values[i - 1];
        if (d == 0.0 || (d > 0.0) != (T_values[1] > T_values[0])) invertible_T = false;
    }
}

KineticSpec KineticSpec::linear(double c, double p_min, double p_max, int samples) {
    if (c == 0.0) throw std::invalid_argument("KineticSpec::linear: c must be nonzero");
    std::vector<double> p(static_cast<size_t>(samples)), T(static_cast<size_t>(samples)),
        v(static_cast<size_t>(samples));
    const double dp = (p_max - p_min) / (samples - 1);
    for (int i = 0; i < samples; ++i) {
        p[static_cast<size_t>(i)] = p_min + i * dp;
        T[static_cast<size_t>(i)] = c * p[static_cast<size_t>(i)];
        v[static_cast<size_t>(i)] = c;
    }
    return KineticSpec(std::move(p), std::move(T), std::move(v));
}

KineticSpec KineticSpec::quadratic_positive(double p_min, double p_max, int samples) {
    if (!(p_min > 0.0)) throw std::invalid_argument("quadratic_positive: needs p_min > 0");
    std::vector<double> p(static_cast<size_t>(samples)), T(static_cast<size_t>(samples)),
        v(static_cast<size_t>(samples));
    const double dp = (p_max - p_min) / (samples - 1);
    for (int i = 0; i < samples; ++i) {
        p[static_cast<size_t>(i)] = p_min + i * dp;
        T[static_cast<size_t>(i)] = 0.5 * p[static_cast<size_t>(i)] * p[static_cast<size_t>(i)];
        v[static_cast<size_t>(i)] = p[static_cast<size_t>(i)];
    }
    return KineticSpec(std::move(p), std::move(T), std::move(v));
}

ComplexMatrix beable_kernel(const KineticSpec& spec, const std::vector<double>& x_grid,
                            const std::vector<double>& y_grid) {
    if (x_grid.size() != y_grid.size() || x_grid.size() < 2)
        throw std::invalid_argument("beable_kernel: need equal x and y grids with >= 2 points");
    const int m = static_cast<int>(x_grid.size());
    const int mp = spec.samples();
    const double dx = x_grid[1] - x_grid[0];
    const double dy = y_grid[1] - y_grid[0];
    const double dp = spec.dp();
    const double measure = std::sqrt(std::abs(dx * dy)) * dp / kTwoPi;

    std::vector<double> root_v(static_cast<size_t>(mp));
    for (int k = 0; k < mp; ++k)
        root_v[static_cast<size_t>(k)] = std::sqrt(std::abs(spec.v_values[static_cast<size_t>(k)]));

    ComplexMatrix kmat(m, Basis::position);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            cplx acc(0.0, 0.0);
            for (int k = 0; k < mp; ++k) {
                const double w = (k == 0 || k == mp - 1) ? 0.5 : 1.0;
                const double phase = x_grid[static_cast<size_t>(i)] * spec.p_grid[static_cast<size_t>(k)] -
                                     y_grid[static_cast<size_t>(j)] * spec.T_values[static_cast<size_t>(k)];
                acc += w * root_v[static_cast<size_t>(k)] * cplx(std::cos(phase), std::sin(phase));
            }
            kmat.at(i, j) = measure * acc;
        }
    }
    return kmat;
}

namespace {

// Phase-modulated DFT: W[j][k] = e^{i p_k x_j} / sqrt(M); columns are the
// orthonormal plane waves of the wrapped momentum branch.
ComplexMatrix plane_wave_basis(const KineticSpec& spec) {
    const int m = spec.samples();
    const double dp = spec.dp();
    const double dx = kTwoPi / (m * dp);
    ComplexMatrix w(m, Basis::position);
    const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(m));
    for (int j = 0; j < m; ++j) {
        const double x = j * dx;
        for (int k = 0; k < m; ++k) {
            const double arg = spec.p_grid[static_cast<size_t>(k)] * x;
            w.at(j, k) = inv_sqrt * cplx(std::cos(arg), std::sin(arg));
        }
    }
    return w;
}

}  // namespace

ComplexMatrix position_operator(const KineticSpec& spec) {
    const int m = spec.samples();
    const double dx = kTwoPi / (m * spec.dp());
    ComplexMatrix x(m, Basis::position);
    for (int j = 0; j < m; ++j) x.at(j, j) = j * dx;
    x.flag_hermitian = true;
    return x;
}

ComplexMatrix momentum_function_operator(const KineticSpec& spec, const std::vector<double>& f) {
    if (f.size() != static_cast<size_t>(spec.samples()))
        throw std::invalid_argument("momentum_function_operator: wrong sample count");
    const ComplexMatrix w = plane_wave_basis(spec);
    const int m = spec.samples();
    ComplexMatrix d(m, Basis::momentum);
    for (int k = 0; k < m; ++k) d.at(k, k) = f[static_cast<size_t>(k)];
    ComplexMatrix r = kern::multiply(kern::multiply(w, d), kern::adjoint(w));
    r.basis = Basis::position;
    r.flag_hermitian = true;
    return r;
}

ComplexMatrix beable_operator(const KineticSpec& spec) {
    std::vector<double> inv_v(static_cast<size_t>(spec.samples()));
    for (int k = 0; k < spec.samples(); ++k)
        inv_v[static_cast<size_t>(k)] = 1.0 / spec.v_values[static_cast<size_t>(k)];
    const ComplexMatrix invv = momentum_function_operator(spec, inv_v);
    const ComplexMatrix x = position_operator(spec);
    ComplexMatrix y = kern::scale(
        kern::add(kern::multiply(x, invv), kern::multiply(invv, x)), 0.5);
    y.basis = Basis::position;
    y.flag_hermitian = true;
    return y;
}

double drift_check(const KineticSpec& spec) {
    const int m = spec.samples();
    const double dx = kTwoPi / (m * spec.dp());
    const double length = m * dx;

    const ComplexMatrix t_op = momentum_function_operator(spec, spec.T_values);
    const ComplexMatrix y_op = beable_operator(spec);
    // D = i [T, y]
    const ComplexMatrix d = kern::scale(
        kern::subtract(kern::multiply(t_op, y_op), kern::multiply(y_op, t_op)), cplx(0.0, 1.0));

    // Fixed family of interior Gaussian packets: centre mid-domain, width
    // length/20, carrier momenta at interior fractions of the branch.
    const double x0 = 0.5 * length;
    const double sigma = length / 20.0;
    const double p_lo = spec.p_grid.front();
    const double p_span = spec.p_grid.back() - spec.p_grid.front();
    const double fractions[3] = {0.3, 0.5, 0.7};

    double worst = 0.0;
    for (double frac : fractions) {
        const double carrier = p_lo + frac * p_span;
        ComplexVector wpk(m, Basis::position);
        double norm2 = 0.0;
        for (int j = 0; j < m; ++j) {
            double u = j * dx - x0;
            u -= length * std::round(u / length);  // periodic distance
            const double env = std::exp(-u * u / (4.0 * sigma * sigma));
            wpk[j] = env * cplx(std::cos(carrier * j * dx), std::sin(carrier * j * dx));
            norm2 += std::norm(wpk[j]);
        }
        const double inv_norm = 1.0 / std::sqrt(norm2);
        for (int j = 0; j < m; ++j) wpk[j] *= inv_norm;

        const ComplexVector dw = kern::apply(d, wpk);
        for (int j = m / 4; j < 3 * m / 4; ++j)
            worst = std::max(worst, std::abs(dw[j] - wpk[j]));
    }
    return worst;
}

std::vector<double> kernel_row_participation(const ComplexMatrix& kernel) {
    std::vector<double> pr(static_cast<size_t>(kernel.dim), 0.0);
    for (int i = 0; i < kernel.dim; ++i) {
        double s2 = 0.0, s4 = 0.0;
        for (int j = 0; j < kernel.dim; ++j) {
            const double a2 = std::norm(kernel.at(i, j));
            s2 += a2;
            s4 += a2 * a2;
        }
        pr[static_cast<size_t>(i)] = (s4 > 0.0) ? (s2 * s2 / s4) : 0.0;
    }
    return pr;
}

}  // namespace ontocell
