#include "ontocell/sieve.hpp"
#include "ontocell/special.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ontocell {

SieveModelConfig::SieveModelConfig(double L_, double A_, double alpha_, int n_max_)
    : L(L_), A(A_), alpha(alpha_), n_max(n_max_) {
    if (!(L > 0.0)) throw std::invalid_argument("SieveModelConfig: L must be > 0");
    if (!(A > 0.0 && A < L)) throw std::invalid_argument("SieveModelConfig: need 0 < A < L");
    if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("SieveModelConfig: alpha in [0,1]");
    if (n_max < 1) throw std::invalid_argument("SieveModelConfig: n_max must be >= 1");
}

namespace {

double wrap(double v, double period) {
    double r = std::fmod(v, period);
    if (r < 0.0) r += period;
    return r;
}

}  // namespace

OrbitResult classical_orbit(const SieveModelConfig& cfg, ClassicalPoint start, double t_end,
                            int direction, bool record_events) {
    if (t_end < 0.0) throw std::invalid_argument("classical_orbit: t_end must be >= 0");
    if (direction != 1 && direction != -1)
        throw std::invalid_argument("classical_orbit: direction must be +-1");
    double x = wrap(start.x, cfg.L);
    double y = wrap(start.y, 1.0);
    if ((x == 0.0 || x == cfg.A) && y == cfg.alpha)
        throw std::invalid_argument(
            "classical_orbit: start lies on a wall with y exactly at alpha (ambiguous)");

    const double walls[2] = {0.0, cfg.A};
    OrbitResult out;
    double t = 0.0;
    double remaining = t_end;
    while (true) {
        double dmin = cfg.L;
        int wall = -1;
        for (int w = 0; w < 2; ++w) {
            double d = (direction > 0) ? wrap(walls[w] - x, cfg.L) : wrap(x - walls[w], cfg.L);
            if (d == 0.0) d = cfg.L;  // sitting on a wall means it was just left
            if (d < dmin) { dmin = d; wall = w; }
        }
        if (dmin >= remaining) {
            x = wrap(x + direction * remaining, cfg.L);
            y = wrap(y + direction * remaining, 1.0);
            t += remaining;
            break;
        }
        t += dmin;
        remaining -= dmin;
        y = wrap(y + direction * dmin, 1.0);
        x = walls[wall];
        const bool exch = (y < cfg.alpha);
        if (exch) x = walls[1 - wall];
        if (record_events) out.events.push_back(OrbitEvent{t, wall, y, exch});
    }
    out.end = ClassicalPoint{x, y};
    return out;
}

namespace {

long long lcm_ll(long long a, long long b) {
    return a / std::gcd(a, b) * b;
}

}  // namespace

ExactOrbitResult classical_orbit_exact(const RationalSieve& cfg, RationalPoint start,
                                       Rational t_end, int direction) {
    if (direction != 1 && direction != -1)
        throw std::invalid_argument("classical_orbit_exact: direction must be +-1");
    if (t_end.num < 0) throw std::invalid_argument("classical_orbit_exact: t_end must be >= 0");
    long long den = 1;
    const Rational* parts[] = {&cfg.L, &cfg.A, &cfg.alpha, &start.x, &start.y, &t_end};
    for (const Rational* r : parts) den = lcm_ll(den, r->den);
    if (den > 100000000LL)
        throw std::invalid_argument("classical_orbit_exact: common denominator too large");

    const long long period_x = cfg.L.num * (den / cfg.L.den);
    const long long period_y = den;
    const long long wall_a = cfg.A.num * (den / cfg.A.den);
    const long long alpha_s = cfg.alpha.num * (den / cfg.alpha.den);
    auto modp = [](long long v, long long p) { long long r = v % p; return r < 0 ? r + p : r; };

    long long x = modp(start.x.num * (den / start.x.den), period_x);
    long long y = modp(start.y.num * (den / start.y.den), period_y);
    long long remaining = t_end.num * (den / t_end.den);
    if ((x == 0 || x == wall_a) && y == alpha_s)
        throw std::invalid_argument(
            "classical_orbit_exact: start lies on a wall with y exactly at alpha (ambiguous)");

    ExactOrbitResult out;
    const long long walls[2] = {0, wall_a};
    while (true) {
        long long dmin = period_x;
        int wall = -1;
        for (int w = 0; w < 2; ++w) {
            long long d = (direction > 0) ? modp(walls[w] - x, period_x) : modp(x - walls[w], period_x);
            if (d == 0) d = period_x;
            if (d < dmin) { dmin = d; wall = w; }
        }
        if (dmin >= remaining) {
            x = modp(x + direction * remaining, period_x);
            y = modp(y + direction * remaining, period_y);
            break;
        }
        remaining -= dmin;
        y = modp(y + direction * dmin, period_y);
        x = walls[wall];
        ++out.event_count;
        if (y < alpha_s) {
            x = walls[1 - wall];
            ++out.exchange_count;
        }
    }
    out.end = RationalPoint{Rational(x, den), Rational(y, den)};
    return out;
}

cplx sign_integral(int l, double alpha) {
    if (l == 0) return cplx(1.0 - 2.0 * alpha, 0.0);
    const double arg = kTwoPi * l * alpha;
    const cplx one_minus = cplx(1.0, 0.0) - cplx(std::cos(arg), std::sin(arg));
    return cplx(0.0, -1.0 / (kPi * l)) * one_minus;
}

ComplexMatrix scattering_map(const SieveModelConfig& cfg) {
    const int nm = cfg.n_max + 1;
    const int dim = 2 * nm;
    ComplexMatrix m(dim, Basis::product);
    for (int n = 0; n <= cfg.n_max; ++n) {
        m.at(n, n) += 1.0 - cfg.alpha;
        m.at(n, nm + n) += cfg.alpha;
        m.at(nm + n, nm + n) += 1.0 - cfg.alpha;
        m.at(nm + n, n) += cfg.alpha;
        for (int np = 0; np <= cfg.n_max; ++np) {
            const int l = np - n;
            if (l == 0) continue;
            const cplx c = 0.5 * sign_integral(l, cfg.alpha);
            m.at(n, np) += c;
            m.at(n, nm + np) -= c;
            m.at(nm + n, nm + np) += c;
            m.at(nm + n, np) -= c;
        }
    }
    return m;
}

namespace {

// Outgoing boundary traces for a single incoming mode (block b, mode n'):
//   psi2+(y) = s(y) psi2-(y), psi1 passes through; in the 0/A basis the
//   outgoing trace at wall w is  e^{2 pi i n' y} * (1 + s(y) * sgn) / 2
//   with sgn = +1 when w == b and -1 otherwise.
struct WallRuleQuadrature {
    double alpha;
    int panels;
    Quadrature gl;

    // integral of e^{2 pi i (np - n) y} * (1 + s(y)*sgn)/2 over [0, 1)
    cplx project(int n, int np, int sgn) const {
        const double freq = kTwoPi * (np - n);
        cplx acc(0.0, 0.0);
        for (int j = 0; j < panels; ++j) {
            double lo = static_cast<double>(j) / panels;
            double hi = static_cast<double>(j + 1) / panels;
            // split a panel containing the wall height
            for (int part = 0; part < 2; ++part) {
                double a = lo, b = hi;
                if (alpha > lo && alpha < hi) {
                    if (part == 0) b = alpha;
                    else a = alpha;
                } else if (part == 1) {
                    break;
                }
                const double s = (0.5 * (a + b) < alpha) ? -1.0 : 1.0;
                const double factor = 0.5 * (1.0 + s * sgn);
                if (factor == 0.0) continue;
                const double half = 0.5 * (b - a);
                const double mid = 0.5 * (a + b);
                for (size_t g = 0; g < gl.nodes.size(); ++g) {
                    const double yy = mid + half * gl.nodes[g];
                    acc += factor * half * gl.weights[g] *
                           cplx(std::cos(freq * yy), std::sin(freq * yy));
                }
            }
        }
        return acc;
    }
};

}  // namespace

ComplexMatrix brute_force_scattering(const SieveModelConfig& cfg, int y_samples) {
    if (y_samples < 4 * cfg.n_max || (y_samples & (y_samples - 1)) != 0)
        throw std::invalid_argument(
            "brute_force_scattering: y_samples must be a power of two >= 4*n_max");
    const int nm = cfg.n_max + 1;
    const int dim = 2 * nm;
    WallRuleQuadrature q{cfg.alpha, y_samples, gauss_legendre(8)};
    ComplexMatrix m(dim, Basis::product);
#pragma omp parallel for schedule(dynamic)
    for (int col = 0; col < dim; ++col) {
        const int b = col / nm;
        const int np = col % nm;
        for (int w = 0; w < 2; ++w) {
            const int sgn = (w == b) ? +1 : -1;
            for (int n = 0; n <= cfg.n_max; ++n)
                m.at(w * nm + n, col) = q.project(n, np, sgn);
        }
    }
    return m;
}

std::vector<double> brute_force_window_column_norms(const SieveModelConfig& cfg, int y_samples) {
    if (y_samples < 4 * cfg.n_max || (y_samples & (y_samples - 1)) != 0)
        throw std::invalid_argument(
            "brute_force_window_column_norms: y_samples must be a power of two >= 4*n_max");
    const int nm = cfg.n_max + 1;
    WallRuleQuadrature q{cfg.alpha, y_samples, gauss_legendre(8)};
    const int half_window = y_samples / 2;
    std::vector<double> norms(static_cast<size_t>(2 * nm), 0.0);
#pragma omp parallel for schedule(dynamic)
    for (int col = 0; col < 2 * nm; ++col) {
        const int b = col / nm;
        const int np = col % nm;
        double total = 0.0;
        for (int w = 0; w < 2; ++w) {
            const int sgn = (w == b) ? +1 : -1;
            for (int n = -half_window; n < half_window; ++n)
                total += std::norm(q.project(n, np, sgn));
        }
        norms[static_cast<size_t>(col)] = std::sqrt(total);
    }
    return norms;
}

std::vector<double> norm_deficit(const SieveModelConfig& cfg) {
    const ComplexMatrix m = scattering_map(cfg);
    const int nm = cfg.n_max + 1;
    std::vector<double> deficits(static_cast<size_t>(nm), 0.0);
    for (int n = 0; n <= cfg.n_max; ++n) {
        double colnorm2 = 0.0;
        for (int row = 0; row < m.dim; ++row) colnorm2 += std::norm(m.at(row, n));
        deficits[static_cast<size_t>(n)] = 1.0 - colnorm2;
    }
    return deficits;
}

ModeField::ModeField(double L_, int x_samples_, int n_max)
    : L(L_), x_samples(x_samples_),
      amplitudes(static_cast<size_t>(n_max + 1),
                 std::vector<cplx>(static_cast<size_t>(x_samples_), cplx(0.0, 0.0))) {
    if (x_samples_ < 2) throw std::invalid_argument("ModeField: need at least 2 x samples");
    if (n_max < 0) throw std::invalid_argument("ModeField: n_max must be >= 0");
    if (!(L_ > 0.0)) throw std::invalid_argument("ModeField: L must be > 0");
}

cplx ModeField::trace_at(int n, double x) const {
    if (n < 0 || n > n_max()) throw std::out_of_range("ModeField: mode out of range");
    const double xx = wrap(x, L);
    const int j = static_cast<int>(std::lround(xx / L * x_samples)) % x_samples;
    return amplitudes[static_cast<size_t>(n)][static_cast<size_t>(j)];
}

}  // namespace ontocell
