#pragma once

#include <span>
#include <vector>

#include "gpdwell/grid.hpp"
#include "gpdwell/state.hpp"

namespace gpdwell {

/// C_ij = |<psi_i|psi_j>|^2 for a set of states on a common grid.
struct OverlapMatrix {
    int k = 0;
    std::vector<double> entries;  // row-major k x k

    double operator()(int i, int j) const {
        return entries[static_cast<std::size_t>(i * k + j)];
    }
};

/// <u|v> with the right-endpoint Riemann rule.
double inner_product(const Grid& grid, std::span<const double> u, std::span<const double> v);

/**
 * Per-particle energy
 *   E = int (1/2)|psi'|^2 + V |psi|^2 + (beta/2)|psi|^4 dx,
 * with psi' the forward difference on nodes 0..D-1. Also stores the value in
 * state.energy.
 */
double energy(const Grid& grid, StationaryState& state, const TrapConfig& trap);

/// Same functional for bare samples.
double energy_functional(const Grid& grid, std::span<const double> psi, const TrapConfig& trap);

/// (beta/2) int psi^4, the gap mu - E for a GP eigenstate.
double interaction_energy(const Grid& grid, std::span<const double> psi, double beta);

/// Consecutive energy gaps E_{n+1} - E_n. Throws ValidationError for fewer
/// than two states or states without an energy.
std::vector<double> splitting(std::span<const StationaryState> states);

/// Throws ValidationError when the states do not share one grid.
OverlapMatrix overlap_matrix(const Grid& grid, std::span<const StationaryState> states);

/// Even/odd within 1e-6 relative to max|psi| under x -> -x, otherwise None.
Parity parity_of(const Grid& grid, std::span<const double> psi);

}  // namespace gpdwell
