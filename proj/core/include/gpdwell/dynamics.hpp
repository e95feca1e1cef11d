#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "gpdwell/grid.hpp"

namespace gpdwell {

using Complex = std::complex<double>;

/// Complex wavefunction on a grid, zero at both walls.
struct WavePacket {
    Grid grid{1.0, 8};
    std::vector<Complex> values;  // D + 1 samples

    double norm() const;  // integrate |psi|^2
};

/// Position and momentum moments; momentum uses the forward and three-point
/// difference stencils: <p> = Re(-i <psi|D+ psi>), <p^2> = -<psi|D2 psi>.
struct Moments {
    double mean_x = 0.0;
    double var_x = 0.0;
    double mean_p = 0.0;
    double var_p = 0.0;
};

Moments moments(const WavePacket& packet);

/**
 * Gaussian packet centred at (x0, p0),
 *   psi(x) = (2 pi s)^{-1/4} exp(-(x - x0)^2 / (4 s)) exp(i p0 (x - x0)),
 * with position variance s (default 1/2, minimal uncertainty at unit
 * frequency), renormalized on the grid.
 * Throws ValidationError if |x0| >= L or the analytic packet exceeds 1e-3 at a wall.
 */
WavePacket coherent_state(const Grid& grid, double x0, double p0, double position_variance = 0.5);

struct Propagation {
    std::vector<double> times;
    std::vector<WavePacket> snapshots;  // snapshots[0] is the initial packet
};

/**
 * Crank-Nicolson evolution under the linear (beta = 0) Hamiltonian
 * -(1/2) d^2/dx^2 + V(x), storing every `stride` steps plus the final one.
 * Keep dt * max|V| well below one for accuracy.
 * Throws ConvergenceError if a tridiagonal pivot vanishes.
 */
Propagation propagate(const Grid& grid, double a, const WavePacket& initial, double dt, int steps,
                      int stride = 1);

/// <psi|H|psi> for the beta = 0 Hamiltonian.
double expected_energy(const WavePacket& packet, double a);

struct FitWindow {
    double t_lo = 0.0;
    double t_hi = 0.0;
};

struct FotocSeries {
    std::vector<double> times;
    std::vector<double> F;      // var_x + var_p
    std::vector<double> var_x;
    std::vector<double> var_p;
    std::vector<double> norm;
    double fit_rate = 0.0;
    FitWindow fit_window;
    double fit_r2 = 0.0;
};

/// Throws ValidationError for fewer than 10 snapshots.
FotocSeries fotoc(const Propagation& run);

/// Least-squares slope of log F over the window; stores fit_rate, fit_window
/// and fit_r2 in the series. Throws ValidationError if fewer than 4 samples fall
/// inside the window.
double growth_rate(FotocSeries& series, FitWindow window);

}  // namespace gpdwell
