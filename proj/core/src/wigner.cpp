#include "gpdwell/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gpdwell/error.hpp"

namespace gpdwell {

double max_resolvable_momentum(const Grid& grid) { return std::numbers::pi / grid.spacing(); }

double default_momentum_extent(const Grid& grid) {
    return std::min(0.5 * max_resolvable_momentum(grid), kDefaultMomentumCap);
}

int default_momentum_points(double p_max) {
    if (!(p_max > 0.0)) throw ValidationError("default_momentum_points: p_max must be positive");
    return 2 * static_cast<int>(std::ceil(p_max / kDefaultMomentumStep));
}

WignerField wigner_transform(const Grid& grid, std::span<const double> psi, double p_max, int P) {
    if (psi.size() != grid.size()) {
        throw ValidationError("wigner_transform: psi must have D + 1 samples");
    }
    if (P < 2 || P % 2 != 0) {
        throw ValidationError("wigner_transform: momentum count P must be even and >= 2, got " +
                              std::to_string(P));
    }
    const double p_limit = max_resolvable_momentum(grid);
    if (!(p_max > 0.0) || p_max > p_limit * (1.0 + 1e-12)) {
        throw ValidationError("wigner_transform: p_max = " + std::to_string(p_max) +
                              " outside (0, pi/delta = " + std::to_string(p_limit) + "]");
    }

    const double h = grid.spacing();
    const std::size_t nx = grid.size();
    const auto np = static_cast<std::size_t>(P) + 1;

    WignerField field;
    field.x_nodes.assign(grid.nodes().begin(), grid.nodes().end());
    field.p_nodes.resize(np);
    const double dp_unit = p_max / P;
    for (std::size_t j = 0; j < np; ++j) {
        field.p_nodes[j] = static_cast<double>(2 * static_cast<long>(j) - P) * dp_unit;
    }
    field.cell = h * 2.0 * dp_unit;
    field.values.assign(nx * np, 0.0);

    // Support of psi; products involving samples outside it vanish.
    double peak = 0.0;
    for (double v : psi) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return field;
    const double cutoff = 1e-14 * peak;
    std::size_t lo = 0;
    std::size_t hi = nx - 1;
    while (lo < hi && std::abs(psi[lo]) <= cutoff) ++lo;
    while (hi > lo && std::abs(psi[hi]) <= cutoff) --hi;
    const std::size_t max_lag = (hi - lo) / 2;

    // cos(2 p_j m h) for the non-positive half of the momentum grid (W is even in p).
    const std::size_t half = static_cast<std::size_t>(P) / 2 + 1;
    std::vector<double> kernel(half * (max_lag + 1));
    for (std::size_t j = 0; j < half; ++j) {
        const double phase = 2.0 * field.p_nodes[j] * h;
        for (std::size_t m = 0; m <= max_lag; ++m) {
            kernel[j * (max_lag + 1) + m] = std::cos(phase * static_cast<double>(m));
        }
    }

    const double prefactor = h / std::numbers::pi;
    std::vector<double> lagged(max_lag + 1);
    for (std::size_t i = lo; i <= hi; ++i) {
        const std::size_t lags = std::min(i - lo, hi - i);
        lagged[0] = psi[i] * psi[i];
        for (std::size_t m = 1; m <= lags; ++m) lagged[m] = 2.0 * psi[i - m] * psi[i + m];
        double* row = &field.values[i * np];
        for (std::size_t j = 0; j < half; ++j) {
            const double* c = &kernel[j * (max_lag + 1)];
            double s = 0.0;
            for (std::size_t m = 0; m <= lags; ++m) s += lagged[m] * c[m];
            row[j] = prefactor * s;
            row[np - 1 - j] = prefactor * s;
        }
    }
    return field;
}

double phase_space_integral(const WignerField& field) {
    double s = 0.0;
    for (double w : field.values) s += w;
    return s * field.cell;
}

std::vector<double> position_marginal(const WignerField& field) {
    const double dp = field.p_nodes.size() > 1 ? field.p_nodes[1] - field.p_nodes[0] : 0.0;
    std::vector<double> marginal(field.x_count(), 0.0);
    for (std::size_t i = 0; i < field.x_count(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < field.p_count(); ++j) s += field.at(i, j);
        marginal[i] = s * dp;
    }
    return marginal;
}

double negativity(const WignerField& field) {
    // sum |W| - sum W == -2 sum_{W<0} W, which is exactly zero for W >= 0.
    double negative = 0.0;
    for (double w : field.values) {
        if (w < 0.0) negative -= w;
    }
    return 2.0 * negative * field.cell;
}

}  // namespace gpdwell
