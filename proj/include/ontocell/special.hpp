#pragma once

#include <cstddef>
#include <vector>

namespace ontocell {

struct Quadrature {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

/// Gauss-Legendre nodes and weights, computed by Newton iteration.
Quadrature gauss_legendre(int n);

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a,x)/Gamma(a).
double gamma_q(double a, double x);

/// Upper-tail p-value of the chi-square distribution.
double chi_square_pvalue(double chi2, int dof);

}  // namespace ontocell
