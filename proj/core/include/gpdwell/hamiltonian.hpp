#pragma once

#include <span>
#include <vector>

#include "gpdwell/grid.hpp"

namespace gpdwell {

/**
 * Real symmetric tridiagonal matrix acting on the D - 1 interior nodes.
 *
 * Hard walls at x = -L and x = L are imposed by dropping the boundary nodes,
 * so psi(+-L) = 0 for every vector this operator produces.
 */
struct TridiagonalOperator {
    std::vector<double> diag;
    std::vector<double> offdiag;  // size() - 1 entries, (i, i+1) == (i+1, i)

    std::size_t size() const { return diag.size(); }

    /// out = T * in. Both spans have size().
    void apply(std::span<const double> in, std::span<double> out) const;
    std::vector<double> apply(std::span<const double> in) const;

    /// Row-major dense copy; intended for small sizes in tests.
    std::vector<double> dense() const;
};

/// -(1/2) d^2/dx^2 via the three-point stencil: diag 1/delta^2, offdiag -1/(2 delta^2).
TridiagonalOperator kinetic_operator(const Grid& grid);

/**
 * Gross-Pitaevskii operator for a frozen density:
 * kinetic + diag(V(x_i)) + beta * diag(density_i).
 *
 * `density` holds |psi|^2 at the interior nodes; entries must be >= 0.
 */
TridiagonalOperator assemble(const Grid& grid, const TrapConfig& trap,
                             std::span<const double> density);

/// (psi[i+1] - 2 psi[i] + psi[i-1]) / delta^2 for 1 <= i <= D-1.
double second_derivative_at(const Grid& grid, std::span<const double> psi, int index);

/// Forward difference (psi[i+1] - psi[i]) / delta for 0 <= i <= D-1.
double forward_derivative_at(const Grid& grid, std::span<const double> psi, int index);

}  // namespace gpdwell
