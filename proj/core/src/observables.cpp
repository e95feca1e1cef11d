#include "gpdwell/observables.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gpdwell/error.hpp"

namespace gpdwell {

std::string_view to_string(Parity parity) {
    switch (parity) {
        case Parity::Even: return "even";
        case Parity::Odd: return "odd";
        case Parity::None: break;
    }
    return "none";
}

double inner_product(const Grid& grid, std::span<const double> u, std::span<const double> v) {
    if (u.size() != grid.size() || v.size() != grid.size()) {
        throw ValidationError("inner_product: samples must have D + 1 entries");
    }
    double s = 0.0;
    for (std::size_t i = 1; i < u.size(); ++i) s += u[i] * v[i];
    return grid.spacing() * s;
}

double interaction_energy(const Grid& grid, std::span<const double> psi, double beta) {
    if (psi.size() != grid.size()) {
        throw ValidationError("interaction_energy: psi must have D + 1 samples");
    }
    double s = 0.0;
    for (std::size_t i = 1; i < psi.size(); ++i) {
        const double p2 = psi[i] * psi[i];
        s += p2 * p2;
    }
    return 0.5 * beta * grid.spacing() * s;
}

double energy_functional(const Grid& grid, std::span<const double> psi, const TrapConfig& trap) {
    if (psi.size() != grid.size()) {
        throw ValidationError("energy: psi must have D + 1 samples");
    }
    const double h = grid.spacing();
    double kinetic = 0.0;
    for (std::size_t i = 0; i + 1 < psi.size(); ++i) {
        const double d = (psi[i + 1] - psi[i]) / h;
        kinetic += d * d;
    }
    kinetic *= 0.5 * h;

    double trap_part = 0.0;
    double contact = 0.0;
    for (std::size_t i = 1; i < psi.size(); ++i) {
        const double p2 = psi[i] * psi[i];
        trap_part += potential(grid.node(i), trap.a) * p2;
        contact += p2 * p2;
    }
    return kinetic + h * trap_part + 0.5 * trap.beta * h * contact;
}

double energy(const Grid& grid, StationaryState& state, const TrapConfig& trap) {
    state.energy = energy_functional(grid, state.psi, trap);
    return state.energy;
}

std::vector<double> splitting(std::span<const StationaryState> states) {
    if (states.size() < 2) {
        throw ValidationError("splitting: need at least two states");
    }
    std::vector<double> gaps;
    gaps.reserve(states.size() - 1);
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (!states[i].has_energy()) {
            throw ValidationError("splitting: state " + std::to_string(i) + " has no energy");
        }
        if (i > 0) gaps.push_back(states[i].energy - states[i - 1].energy);
    }
    return gaps;
}

OverlapMatrix overlap_matrix(const Grid& grid, std::span<const StationaryState> states) {
    OverlapMatrix m;
    m.k = static_cast<int>(states.size());
    m.entries.assign(states.size() * states.size(), 0.0);
    for (const auto& s : states) {
        if (!(s.grid == grid)) {
            throw ValidationError("overlap_matrix: states live on different grids");
        }
    }
    for (std::size_t i = 0; i < states.size(); ++i) {
        for (std::size_t j = i; j < states.size(); ++j) {
            const double c = inner_product(grid, states[i].psi, states[j].psi);
            m.entries[i * states.size() + j] = c * c;
            m.entries[j * states.size() + i] = c * c;
        }
    }
    return m;
}

Parity parity_of(const Grid& grid, std::span<const double> psi) {
    if (psi.size() != grid.size()) {
        throw ValidationError("parity_of: psi must have D + 1 samples");
    }
    double peak = 0.0;
    for (double v : psi) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return Parity::None;
    double even_dev = 0.0;
    double odd_dev = 0.0;
    const std::size_t n = psi.size();
    for (std::size_t i = 0; i < n; ++i) {
        even_dev = std::max(even_dev, std::abs(psi[i] - psi[n - 1 - i]));
        odd_dev = std::max(odd_dev, std::abs(psi[i] + psi[n - 1 - i]));
    }
    const double tol = 1e-6 * peak;
    if (even_dev <= tol) return Parity::Even;
    if (odd_dev <= tol) return Parity::Odd;
    return Parity::None;
}

}  // namespace gpdwell
