#pragma once

#include <span>
#include <utility>
#include <vector>

#include "gpdwell/grid.hpp"
#include "gpdwell/state.hpp"

namespace gpdwell {

/// Turning points bracketing the central barrier, x1 <= 0 <= x2.
/// x1 == x2 == 0 means the barrier is submerged (no forbidden region).
struct TurningPair {
    double x1 = 0.0;
    double x2 = 0.0;

    bool degenerate() const { return x1 == x2; }
};

/// V(x_i) + beta psi(x_i)^2 on every node.
std::vector<double> effective_potential(const Grid& grid, const TrapConfig& trap,
                                        std::span<const double> psi);

/**
 * Sign changes of veff - mu nearest to the origin on either side, located by
 * linear interpolation between bracketing nodes. Returns the degenerate pair
 * when veff(0) <= mu. Throws ValidationError when mu lies below min(veff).
 */
TurningPair turning_points(const Grid& grid, std::span<const double> veff, double mu);

/// Barrier action gamma = int_{x1}^{x2} sqrt(2 (veff - mu)) dx.
double barrier_action(const Grid& grid, std::span<const double> veff, double mu,
                      const TurningPair& turning);

/// WKB transmission exp(-2 gamma) through the self-consistent barrier of a state.
double transmission(const Grid& grid, const StationaryState& state, const TrapConfig& trap);

/// Classical phase-space path under H = p^2/2 - a x^2 + x^4.
struct ClassicalTrajectory {
    std::vector<double> times;
    std::vector<std::pair<double, double>> points;  // (x, p)
    double energy = 0.0;
    double a = 0.0;

    double max_energy_drift() const;
};

double classical_energy(double a, double x, double p);

/**
 * Fourth-order Runge-Kutta for x' = p, p' = 2 a x - 4 x^3, stored every
 * `stride` steps (the end point is always stored).
 * Throws ValidationError for dt <= 0, t_max < 0 or more than 1e8 steps.
 */
ClassicalTrajectory classical_trajectory(double a, double x0, double p0, double dt, double t_max,
                                         int stride = 1);

/// Positive Lyapunov exponent sqrt(2a) of the hyperbolic point at the origin.
double lyapunov_exponent(double a);

/// Upper branch p >= 0 of the separatrix H = 0 at x (zero outside the lobes).
double separatrix_momentum(double a, double x);

}  // namespace gpdwell
