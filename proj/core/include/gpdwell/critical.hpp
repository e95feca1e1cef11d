#pragma once

#include <span>
#include <utility>
#include <vector>

#include "gpdwell/grid.hpp"
#include "gpdwell/scf.hpp"

namespace gpdwell {

struct CriticalResult {
    double beta = 0.0;
    double a_c = 0.0;
    double E_c = 0.0;
    double curvature_at_ac = 0.0;
    std::pair<double, double> bracket;  // final (a_lo, a_hi)
    double tolerance = 0.0;
    int skipped_probes = 0;  // probes where the SCF failed and a neighbour was used
    int damped_probes = 0;   // probes that needed reduced mixing to converge
    int probes = 0;
};

struct QuadraticFit {
    double c0 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double residual_rms = 0.0;

    double operator()(double x) const { return c0 + x * (c1 + x * c2); }
};

/**
 * psi_0''(0) of the self-consistent ground state, using the three-point
 * stencil at the centre node, with psi_0(0) > 0. Negative below the critical
 * depth (single peak), positive above (minimum at the origin).
 */
double curvature_sign(const TrapConfig& trap, const Grid& grid, const ScfConfig& cfg = {});

/**
 * Bisection on a for the sign change of curvature_sign at fixed beta, down to
 * a bracket narrower than tol. E_c is the energy functional of the ground
 * state at the returned a_c. A probe whose iteration does not converge is
 * retried with the mixing halved (up to four times).
 *
 * Throws ValidationError when the bracket ends share a sign, and ScfError when
 * a probe and its fallback both fail.
 */
CriticalResult find_critical_a(double beta, std::pair<double, double> bracket, double tol,
                               const Grid& grid, const ScfConfig& cfg = {});

/// Ordinary least squares for value = c0 + c1 x + c2 x^2. Needs >= 4 points
/// and at least three distinct abscissae (ValidationError otherwise).
QuadraticFit fit_quadratic(std::span<const std::pair<double, double>> points);

}  // namespace gpdwell
