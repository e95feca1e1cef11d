#pragma once

#include <span>
#include <vector>

#include "gpdwell/grid.hpp"

namespace gpdwell {

/// W(x_i, p_j) sampled on the spatial grid times a uniform momentum grid.
struct WignerField {
    std::vector<double> x_nodes;
    std::vector<double> p_nodes;  // P + 1 points on [-p_max, p_max]
    std::vector<double> values;   // row-major, x index major: values[i * (P+1) + j]
    double cell = 0.0;            // delta * delta_p

    std::size_t x_count() const { return x_nodes.size(); }
    std::size_t p_count() const { return p_nodes.size(); }
    double at(std::size_t i, std::size_t j) const { return values[i * p_nodes.size() + j]; }
};

/// Largest momentum the grid resolves, pi / delta.
double max_resolvable_momentum(const Grid& grid);

inline constexpr double kDefaultMomentumCap = 12.0;
inline constexpr double kDefaultMomentumStep = 0.05;

/// Default momentum extent: pi / (2 delta), capped at kDefaultMomentumCap.
double default_momentum_extent(const Grid& grid);

/// Smallest even P giving a momentum step of at most kDefaultMomentumStep on [-p_max, p_max].
int default_momentum_points(double p_max);

/**
 * Discrete Wigner transform of a real state,
 *   W(x, p) = (1/pi) delta sum_m psi(x - m delta) psi(x + m delta) cos(2 p m delta),
 * with psi taken as zero outside [-L, L]. The 1/pi factor makes the
 * phase-space integral one.
 *
 * Throws ValidationError for odd or non-positive P, p_max outside (0, pi/delta],
 * or psi of the wrong length.
 */
WignerField wigner_transform(const Grid& grid, std::span<const double> psi, double p_max, int P);

/// sum W * cell.
double phase_space_integral(const WignerField& field);

/// sum_j W(x_i, p_j) * delta_p for every x node.
std::vector<double> position_marginal(const WignerField& field);

/// Negative volume: sum |W| cell - sum W cell (never below zero).
double negativity(const WignerField& field);

}  // namespace gpdwell
