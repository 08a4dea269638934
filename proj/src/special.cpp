#include "ontocell/special.hpp"

#include <cmath>
#include <stdexcept>

namespace ontocell {

Quadrature gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    Quadrature q;
    q.nodes.resize(static_cast<size_t>(n));
    q.weights.resize(static_cast<size_t>(n));
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        q.nodes[static_cast<size_t>(i)] = -x;
        q.nodes[static_cast<size_t>(n - 1 - i)] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        q.weights[static_cast<size_t>(i)] = w;
        q.weights[static_cast<size_t>(n - 1 - i)] = w;
    }
    return q;
}

namespace {

// Series and continued-fraction pieces of the incomplete gamma function.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < 500; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_contfrac(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_q(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gamma_q: need a > 0, x >= 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_contfrac(a, x);
}

double chi_square_pvalue(double chi2, int dof) {
    if (dof < 1) throw std::invalid_argument("chi_square_pvalue: dof must be >= 1");
    return gamma_q(0.5 * dof, 0.5 * chi2);
}

}  // namespace ontocell
