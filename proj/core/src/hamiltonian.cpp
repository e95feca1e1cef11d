#include "gpdwell/hamiltonian.hpp"

#include <string>

#include "gpdwell/error.hpp"

namespace gpdwell {

void TridiagonalOperator::apply(std::span<const double> in, std::span<double> out) const {
    const std::size_t n = size();
    if (in.size() != n || out.size() != n) {
        throw ValidationError("TridiagonalOperator::apply: size mismatch");
    }
    if (n == 0) return;
    if (n == 1) {
        out[0] = diag[0] * in[0];
        return;
    }
    out[0] = diag[0] * in[0] + offdiag[0] * in[1];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        out[i] = offdiag[i - 1] * in[i - 1] + diag[i] * in[i] + offdiag[i] * in[i + 1];
    }
    out[n - 1] = offdiag[n - 2] * in[n - 2] + diag[n - 1] * in[n - 1];
}

std::vector<double> TridiagonalOperator::apply(std::span<const double> in) const {
    std::vector<double> out(size());
    apply(in, out);
    return out;
}

std::vector<double> TridiagonalOperator::dense() const {
    const std::size_t n = size();
    std::vector<double> m(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        m[i * n + i] = diag[i];
        if (i + 1 < n) {
            m[i * n + i + 1] = offdiag[i];
            m[(i + 1) * n + i] = offdiag[i];
        }
    }
    return m;
}

TridiagonalOperator kinetic_operator(const Grid& grid) {
    const double inv_h2 = 1.0 / (grid.spacing() * grid.spacing());
    const std::size_t n = grid.interior_size();
    return {std::vector<double>(n, inv_h2), std::vector<double>(n - 1, -0.5 * inv_h2)};
}

TridiagonalOperator assemble(const Grid& grid, const TrapConfig& trap,
                             std::span<const double> density) {
    trap.validate();
    const std::size_t n = grid.interior_size();
    if (density.size() != n) {
        throw ValidationError("assemble: density must have " + std::to_string(n) +
                              " interior entries, got " + std::to_string(density.size()));
    }
    TridiagonalOperator op = kinetic_operator(grid);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(density[i] >= 0.0)) {
            throw ValidationError("assemble: negative density at interior node " +
                                  std::to_string(i));
        }
        op.diag[i] += potential(grid.node(i + 1), trap.a) + trap.beta * density[i];
    }
    return op;
}

double second_derivative_at(const Grid& grid, std::span<const double> psi, int index) {
    if (psi.size() != grid.size()) {
        throw ValidationError("second_derivative_at: psi must have D + 1 samples");
    }
    if (index < 1 || index > grid.intervals() - 1) {
        throw ValidationError("second_derivative_at: index " + std::to_string(index) +
                              " is not an interior node");
    }
    const auto i = static_cast<std::size_t>(index);
    const double h = grid.spacing();
    return (psi[i + 1] - 2.0 * psi[i] + psi[i - 1]) / (h * h);
}

double forward_derivative_at(const Grid& grid, std::span<const double> psi, int index) {
    if (psi.size() != grid.size()) {
        throw ValidationError("forward_derivative_at: psi must have D + 1 samples");
    }
    if (index < 0 || index > grid.intervals() - 1) {
        throw ValidationError("forward_derivative_at: index " + std::to_string(index) +
                              " out of range");
    }
    const auto i = static_cast<std::size_t>(index);
    return (psi[i + 1] - psi[i]) / grid.spacing();
}

}  // namespace gpdwell
