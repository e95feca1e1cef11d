#include "gpdwell/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gpdwell/error.hpp"

namespace gpdwell {

Grid::Grid(double half_width, int intervals)
    : half_width_(half_width), intervals_(intervals) {
    if (!(half_width > 0.0) || !std::isfinite(half_width)) {
        throw ValidationError("grid half-width must be positive and finite, got " +
                              std::to_string(half_width));
    }
    if (intervals < 8) {
        throw ValidationError("grid needs at least 8 subintervals, got " +
                              std::to_string(intervals));
    }
    if (intervals % 2 != 0) {
        throw ValidationError("grid subinterval count must be even so x = 0 is a node, got " +
                              std::to_string(intervals));
    }
    spacing_ = 2.0 * half_width / intervals;
    nodes_.resize(static_cast<std::size_t>(intervals) + 1);
    // (2i - D) is an exact integer, so x_{D-i} == -x_i bit for bit.
    const double unit = half_width / intervals;
    for (int i = 0; i <= intervals; ++i) {
        nodes_[static_cast<std::size_t>(i)] = static_cast<double>(2 * i - intervals) * unit;
    }
}

Grid make_grid(double half_width, int intervals) { return Grid(half_width, intervals); }

void TrapConfig::validate() const {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw ValidationError("trap parameter a must be positive, got " + std::to_string(a));
    }
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw ValidationError("interaction beta must be non-negative, got " +
                              std::to_string(beta));
    }
}

std::vector<double> potential_samples(const Grid& grid, double a) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = potential(grid.node(i), a);
    return v;
}

RescaledParameters szymanzik_rescale(double a, double b, double beta, double mu) {
    if (!(b > 0.0)) {
        throw ValidationError("rescaling needs a positive quartic coefficient b, got " +
                              std::to_string(b));
    }
    const double cbrt_b = std::cbrt(b);
    return {a / (cbrt_b * cbrt_b), beta / cbrt_b, mu / cbrt_b, std::pow(b, 1.0 / 6.0)};
}

double integrate(const Grid& grid, std::span<const double> samples, Quadrature rule) {
    if (samples.size() != grid.size()) {
        throw ValidationError("integrate: expected " + std::to_string(grid.size()) +
                              " samples, got " + std::to_string(samples.size()));
    }
    double sum = 0.0;
    for (std::size_t i = 1; i < samples.size(); ++i) sum += samples[i];
    if (rule == Quadrature::Trapezoid) {
        sum += 0.5 * (samples.front() - samples.back());
    }
    return grid.spacing() * sum;
}

double integrate_interior(const Grid& grid, std::span<const double> interior) {
    if (interior.size() != grid.interior_size()) {
        throw ValidationError("integrate_interior: expected " +
                              std::to_string(grid.interior_size()) + " samples, got " +
                              std::to_string(interior.size()));
    }
    double sum = 0.0;
    for (double v : interior) sum += v;
    return grid.spacing() * sum;
}

std::vector<double> with_boundary(std::span<const double> interior) {
    std::vector<double> full(interior.size() + 2, 0.0);
    std::copy(interior.begin(), interior.end(), full.begin() + 1);
    return full;
}

}  // namespace gpdwell
