#pragma once

#include <span>
#include <vector>

namespace gpdwell {

/**
 * Uniform discretization of [-L, L] into D subintervals.
 *
 * Nodes are x_i = -L + i * delta for i = 0..D. D is even so that the origin
 * is the node with index D/2, and node positions are exactly antisymmetric
 * about that index.
 */
class Grid {
public:
    /// Throws ValidationError unless L > 0, D even and D >= 8.
    Grid(double half_width, int intervals);

    double half_width() const { return half_width_; }
    int intervals() const { return intervals_; }
    double spacing() const { return spacing_; }

    /// Number of nodes, D + 1.
    std::size_t size() const { return nodes_.size(); }
    /// Number of interior nodes, D - 1.
    std::size_t interior_size() const { return nodes_.size() - 2; }
    int center_index() const { return intervals_ / 2; }

    std::span<const double> nodes() const { return nodes_; }
    double node(std::size_t i) const { return nodes_[i]; }

    bool operator==(const Grid& other) const {
        return half_width_ == other.half_width_ && intervals_ == other.intervals_;
    }

private:
    double half_width_;
    int intervals_;
    double spacing_;
    std::vector<double> nodes_;
};

Grid make_grid(double half_width, int intervals);

/// Trap and interaction parameters in rescaled units (b = m = hbar = 1).
struct TrapConfig {
    double a = 1.0;     // well depth, > 0
    double beta = 0.0;  // contact interaction, >= 0

    void validate() const;
};

/// Quartic double well V(x) = -a x^2 + x^4.
inline double potential(double x, double a) {
    const double x2 = x * x;
    return x2 * (x2 - a);
}

std::vector<double> potential_samples(const Grid& grid, double a);

/// Parameters after absorbing the quartic coefficient b into the others.
struct RescaledParameters {
    double a;
    double beta;
    double mu;
    double length_scale;  // x_scaled = length_scale * x
};

/// Maps (a, b, beta, mu) to units with b = 1. Throws ValidationError for b <= 0.
RescaledParameters szymanzik_rescale(double a, double b, double beta, double mu);

enum class Quadrature {
    RightRiemann,  // delta * sum_{i=1..D} f_i
    Trapezoid,
};

/// Quadrature of nodal samples (length D + 1). Defaults to the right-endpoint
/// Riemann sum used throughout the library.
double integrate(const Grid& grid, std::span<const double> samples,
                 Quadrature rule = Quadrature::RightRiemann);

/// Riemann sum over the interior slice (length D - 1); equal to integrate()
/// of the same samples padded with Dirichlet zeros.
double integrate_interior(const Grid& grid, std::span<const double> interior);

/// Pads an interior slice with zero boundary values.
std::vector<double> with_boundary(std::span<const double> interior);

}  // namespace gpdwell
