#include "gpdwell/semiclassics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gpdwell/error.hpp"

namespace gpdwell {

std::vector<double> effective_potential(const Grid& grid, const TrapConfig& trap,
                                        std::span<const double> psi) {
    if (psi.size() != grid.size()) {
        throw ValidationError("effective_potential: psi must have D + 1 samples");
    }
    std::vector<double> veff(grid.size());
    for (std::size_t i = 0; i < veff.size(); ++i) {
        veff[i] = potential(grid.node(i), trap.a) + trap.beta * psi[i] * psi[i];
    }
    return veff;
}

TurningPair turning_points(const Grid& grid, std::span<const double> veff, double mu) {
    if (veff.size() != grid.size()) {
        throw ValidationError("turning_points: veff must have D + 1 samples");
    }
    const double lowest = *std::min_element(veff.begin(), veff.end());
    if (mu < lowest) {
        throw ValidationError("turning_points: mu = " + std::to_string(mu) +
                              " lies below the effective potential minimum " +
                              std::to_string(lowest));
    }
    const auto c = static_cast<std::size_t>(grid.center_index());
    if (veff[c] - mu <= 0.0) return {};

    auto crossing = [&](std::size_t inside, std::size_t outside) {
        const double g_in = veff[inside] - mu;
        const double g_out = veff[outside] - mu;
        const double t = g_in / (g_in - g_out);
        return grid.node(inside) + t * (grid.node(outside) - grid.node(inside));
    };

    TurningPair pair;
    std::size_t i = c;
    while (i > 0 && veff[i - 1] - mu > 0.0) --i;
    if (i == 0) throw ValidationError("turning_points: no left turning point inside the domain");
    pair.x1 = crossing(i, i - 1);

    std::size_t j = c;
    while (j + 1 < veff.size() && veff[j + 1] - mu > 0.0) ++j;
    if (j + 1 == veff.size()) {
        throw ValidationError("turning_points: no right turning point inside the domain");
    }
    pair.x2 = crossing(j, j + 1);
    return pair;
}

double barrier_action(const Grid& grid, std::span<const double> veff, double mu,
                      const TurningPair& turning) {
    if (turning.degenerate()) return 0.0;
    auto integrand = [&](std::size_t i) { return std::sqrt(2.0 * std::max(0.0, veff[i] - mu)); };
    // Right-endpoint rule on [x1, x_first], [x_first, x_first+1], ..., [x_last, x2];
    // the last cell ends on a turning point where the integrand vanishes.
    double gamma = 0.0;
    double left = turning.x1;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid.node(i);
        if (x <= turning.x1) continue;
        if (x >= turning.x2) break;
        gamma += (x - left) * integrand(i);
        left = x;
    }
    return gamma;
}

double transmission(const Grid& grid, const StationaryState& state, const TrapConfig& trap) {
    const auto veff = effective_potential(grid, trap, state.psi);
    const auto pair = turning_points(grid, veff, state.mu);
    return std::exp(-2.0 * barrier_action(grid, veff, state.mu, pair));
}

double classical_energy(double a, double x, double p) { return 0.5 * p * p + potential(x, a); }

double ClassicalTrajectory::max_energy_drift() const {
    double drift = 0.0;
    for (const auto& [x, p] : points) {
        drift = std::max(drift, std::abs(classical_energy(a, x, p) - energy));
    }
    return drift;
}

ClassicalTrajectory classical_trajectory(double a, double x0, double p0, double dt, double t_max,
                                         int stride) {
    if (!(dt > 0.0)) throw ValidationError("classical_trajectory: dt must be positive");
    if (!(t_max >= 0.0)) throw ValidationError("classical_trajectory: t_max must be >= 0");
    if (stride < 1) throw ValidationError("classical_trajectory: stride must be >= 1");
    const double steps_real = std::ceil(t_max / dt - 1e-9);
    if (steps_real > 1e8) {
        throw ValidationError("classical_trajectory: more than 1e8 steps requested");
    }
    const auto steps = static_cast<long>(steps_real);

    auto force = [a](double x) { return 2.0 * a * x - 4.0 * x * x * x; };

    ClassicalTrajectory traj;
    traj.a = a;
    traj.energy = classical_energy(a, x0, p0);
    traj.times.push_back(0.0);
    traj.points.emplace_back(x0, p0);
    double x = x0;
    double p = p0;
    for (long s = 1; s <= steps; ++s) {
        const double k1x = p;
        const double k1p = force(x);
        const double k2x = p + 0.5 * dt * k1p;
        const double k2p = force(x + 0.5 * dt * k1x);
        const double k3x = p + 0.5 * dt * k2p;
        const double k3p = force(x + 0.5 * dt * k2x);
        const double k4x = p + dt * k3p;
        const double k4p = force(x + dt * k3x);
        x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        p += dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        if (s % stride == 0 || s == steps) {
            traj.times.push_back(static_cast<double>(s) * dt);
            traj.points.emplace_back(x, p);
        }
    }
    return traj;
}

double lyapunov_exponent(double a) {
    if (!(a > 0.0)) throw ValidationError("lyapunov_exponent: a must be positive");
    return std::sqrt(2.0 * a);
}

double separatrix_momentum(double a, double x) {
    const double v = -potential(x, a);
    return v > 0.0 ? std::sqrt(2.0 * v) : 0.0;
}

}  // namespace gpdwell
