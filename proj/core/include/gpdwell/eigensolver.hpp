#pragma once

#include <vector>

#include "gpdwell/grid.hpp"
#include "gpdwell/hamiltonian.hpp"

namespace gpdwell {

struct Eigenpair {
    double value = 0.0;
    /// Interior-node samples with delta * sum v^2 == 1. The entry of largest
    /// magnitude is positive (near-ties go to the lowest index).
    std::vector<double> vector;
};

/**
 * The k lowest eigenpairs of a symmetric tridiagonal operator, ascending.
 *
 * Eigenvalues come from Sturm-sequence bisection, eigenvectors from inverse
 * iteration with re-orthogonalization against the lower vectors. Pairs closer
 * than 1e-12 (relative) are rotated into parity eigenvectors, even first.
 *
 * Throws ValidationError for k outside [1, size] and ConvergenceError (naming
 * the eigenvalue index) when inverse iteration cannot meet the residual bound
 * |T v - lambda v| <= 1e-10 (1 + |lambda|).
 */
std::vector<Eigenpair> lowest_eigenpairs(const TridiagonalOperator& op, int k, const Grid& grid);

/// Number of eigenvalues of `op` strictly below `x`.
int count_eigenvalues_below(const TridiagonalOperator& op, double x);

}  // namespace gpdwell
