#pragma once

#include <limits>
#include <string_view>
#include <vector>

#include "gpdwell/grid.hpp"

namespace gpdwell {

enum class Parity { Even, Odd, None };

std::string_view to_string(Parity parity);

/// A converged stationary solution of the Gross-Pitaevskii equation.
struct StationaryState {
    int n = 0;                  // 0-based quantum index
    Grid grid{1.0, 8};          // grid the samples live on
    std::vector<double> psi;    // D + 1 samples, zero at both walls, integrate(psi^2) == 1
    double mu = 0.0;            // chemical potential per particle
    double energy = std::numeric_limits<double>::quiet_NaN();  // per-particle energy
    Parity parity = Parity::None;
    double a = 0.0;
    double beta = 0.0;

    bool has_energy() const { return energy == energy; }
};

}  // namespace gpdwell
