#pragma once

#include "ontocell/io.hpp"
#include "ontocell/types.hpp"

#include <vector>

namespace ontocell {

/// The two-variable continuum model: x on a circle of size L with partial
/// exchange walls at x=0 and x=A (height alpha in y), y on a unit circle,
/// joint velocity (1,1).
struct SieveModelConfig {
    double L = 2.0;
    double A = 1.0;
    double alpha = 0.5;
    int n_max = 8;  // mode cutoff

    SieveModelConfig() = default;
    SieveModelConfig(double L_, double A_, double alpha_, int n_max_);
};

struct ClassicalPoint {
    double x = 0.0;
    double y = 0.0;
};

struct OrbitEvent {
    double time = 0.0;
    int wall = 0;  // 0: the x=0 wall, 1: the x=A wall
    double y = 0.0;
    bool exchanged = false;
};

struct OrbitResult {
    ClassicalPoint end;
    std::vector<OrbitEvent> events;
};

/// Event-driven flow; between events x and y advance at unit speed, at each
/// wall crossing with y mod 1 in [0, alpha) the point jumps to the other
/// wall. direction=-1 runs the time-reversed dynamics. A start exactly on a
/// wall with y exactly alpha is rejected (measure-zero ambiguity).
OrbitResult classical_orbit(const SieveModelConfig& cfg, ClassicalPoint start, double t_end,
                            int direction = +1, bool record_events = true);

/// Exact engine for rational data; positions are integers over a common
/// denominator, so event bookkeeping is drift-free.
struct RationalSieve {
    Rational L, A, alpha;
};

struct RationalPoint {
    Rational x, y;
};

struct ExactOrbitResult {
    RationalPoint end;
    long long event_count = 0;
    long long exchange_count = 0;
};

ExactOrbitResult classical_orbit_exact(const RationalSieve& cfg, RationalPoint start,
                                       Rational t_end, int direction = +1);

/// The displayed wall integral: (-i/(pi l)) (1 - e^{2 pi i l alpha}) for
/// l != 0, and 1 - 2 alpha at l = 0.
cplx sign_integral(int l, double alpha);

/// Linear map on the boundary-trace modes (psi0_n, psiA_n), n = 0..n_max,
/// block layout [wall 0 | wall A]. Diagonal blocks (1-alpha), cross blocks
/// alpha, and off-mode couplings sign_integral(l)/2 on the (psi0 - psiA)
/// combinations; couplings leaving [0, n_max] are truncated.
ComplexMatrix scattering_map(const SieveModelConfig& cfg);

/// Independent oracle: reconstructs the boundary traces in y space, applies
/// the pointwise wall rule (psi1 unchanged, psi2 negated on [0, alpha)), and
/// projects back onto modes by panel quadrature split at the wall height.
/// y_samples (power of two >= 4*n_max) is the panel count.
ComplexMatrix brute_force_scattering(const SieveModelConfig& cfg, int y_samples);

/// Column norms of the oracle over the full frequency window (not just the
/// retained modes); quantifies that the pointwise rule itself leaks nothing.
std::vector<double> brute_force_window_column_norms(const SieveModelConfig& cfg, int y_samples);

/// Per incoming mode n: 1 minus the squared column norm of the truncated
/// scattering_map (leakage into the discarded high modes).
std::vector<double> norm_deficit(const SieveModelConfig& cfg);

/// Mode decomposition of a torus wave function: amplitudes[n][j] is
/// psi_n(x_j) on M equally spaced x samples.
struct ModeField {
    double L = 1.0;
    int x_samples = 2;
    std::vector<std::vector<cplx>> amplitudes;  // (n_max+1) rows

    ModeField(double L_, int x_samples_, int n_max);
    int n_max() const { return static_cast<int>(amplitudes.size()) - 1; }
    /// Trace of mode n at the grid point nearest to x.
    cplx trace_at(int n, double x) const;
};

}  // namespace ontocell
