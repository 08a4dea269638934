#pragma once

#include "ontocell/types.hpp"

#include <vector>

namespace ontocell {

/// Sampled kinetic function T(p) with velocity v(p) = dT/dp on a uniform
/// momentum grid. v must keep one sign over the grid; T monotonicity is
/// tracked as a flag (unitarity claims are suppressed when it fails).
struct KineticSpec {
    std::vector<double> p_grid;
    std::vector<double> T_values;
    std::vector<double> v_values;
    bool invertible_T = true;
    int v_sign = +1;  // recorded global sign; v_values are kept as given

    KineticSpec(std::vector<double> p, std::vector<double> T, std::vector<double> v);

    static KineticSpec linear(double c, double p_min, double p_max, int samples);
    static KineticSpec quadratic_positive(double p_min, double p_max, int samples);

    int samples() const { return static_cast<int>(p_grid.size()); }
    double dp() const { return p_grid[1] - p_grid[0]; }
};

/// K[x][y] ~ (1/2pi) * integral dp sqrt(v(p)) e^{i (x p - y T(p))}, trapezoid
/// rule with half endpoint weights, scaled by sqrt(dx*dy) so the T(p)=p case
/// is the discrete delta. x_grid and y_grid must be uniform and equal length.
ComplexMatrix beable_kernel(const KineticSpec& spec, const std::vector<double>& x_grid,
                            const std::vector<double>& y_grid);

/// y = (x 1/v(p) + 1/v(p) x)/2 on the periodic dual grid: x_j = j * dx with
/// dx = 2 pi / (M dp), v(p) diagonal in the DFT-conjugate momentum basis.
ComplexMatrix beable_operator(const KineticSpec& spec);

/// Diagonal position operator on the dual grid of the spec.
ComplexMatrix position_operator(const KineticSpec& spec);

/// W diag(f(p_k)) W^dagger with W the phase-modulated DFT mapping momentum
/// coefficients to position samples.
ComplexMatrix momentum_function_operator(const KineticSpec& spec, const std::vector<double>& f);

/// Max deviation of (i[T(p_hat), y] w)_j from w_j over a fixed family of
/// interior Gaussian wave packets, rows restricted to the central half of the
/// grid. Small values certify dy/dt = 1 at grid resolution.
double drift_check(const KineticSpec& spec);

/// Participation ratio (sum|k|^2)^2 / sum|k|^4 per kernel row; a spread
/// diagnostic, no threshold attached.
std::vector<double> kernel_row_participation(const ComplexMatrix& kernel);

}  // namespace ontocell
