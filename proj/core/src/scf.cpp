#include "gpdwell/scf.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gpdwell/eigensolver.hpp"
#include "gpdwell/hamiltonian.hpp"
#include "gpdwell/observables.hpp"

namespace gpdwell {
namespace {

double interior_dot(const Grid& grid, const std::vector<double>& u, const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return grid.spacing() * s;
}

ScfResult iterate(const Grid& grid, const TrapConfig& trap, int n, const ScfConfig& cfg) {
    const std::size_t m = grid.interior_size();
    const double flat = 1.0 / (grid.spacing() * static_cast<double>(m));
    std::vector<double> density(m, flat);
    std::vector<double> previous(m, std::sqrt(flat));
    double previous_mu = 0.0;

    ScfResult result;
    result.state.n = n;
    result.state.grid = grid;
    result.state.a = trap.a;
    result.state.beta = trap.beta;

    std::vector<double> current;
    double mu = 0.0;
    for (int k = 1; k <= cfg.max_iter; ++k) {
        const auto op = assemble(grid, trap, density);
        std::vector<Eigenpair> pairs;
        try {
            pairs = lowest_eigenpairs(op, n + 1, grid);
        } catch (const ConvergenceError& e) {
            result.failure = ScfFailure::Eigensolver;
            result.message = e.what();
            result.iterations = k;
            const std::string what = result.message;
            throw ScfError(what, std::move(result));
        }
        current = std::move(pairs[static_cast<std::size_t>(n)].vector);
        mu = pairs[static_cast<std::size_t>(n)].value;

        const double overlap = std::abs(interior_dot(grid, current, previous));
        result.mu_history.push_back(mu);
        result.overlap_history.push_back(overlap);
        result.iterations = k;

        if (k >= 2 && std::abs(mu - previous_mu) < cfg.tol_mu &&
            1.0 - overlap < cfg.tol_state) {
            result.converged = true;
            break;
        }

        const double eta = cfg.mixing;
        for (std::size_t i = 0; i < m; ++i) {
            density[i] = (1.0 - eta) * density[i] + eta * current[i] * current[i];
        }
        const double total = integrate_interior(grid, density);
        for (auto& d : density) d /= total;

        previous = current;
        previous_mu = mu;
    }

    result.state.psi = with_boundary(current);
    result.state.mu = mu;
    result.state.parity = parity_of(grid, result.state.psi);
    energy(grid, result.state, trap);

    if (!result.converged) {
        result.failure = ScfFailure::MaxIterationsExceeded;
        result.oscillation_detected = detect_two_cycle(result.mu_history, cfg.tol_mu);
        result.message = "self-consistent iteration for state " + std::to_string(n) +
                         " did not converge in " + std::to_string(cfg.max_iter) + " iterations" +
                         (result.oscillation_detected ? " (two-cycle detected)" : "");
        const std::string what = result.message;
        throw ScfError(what, std::move(result));
    }
    return result;
}

Grid enlarged(const Grid& grid) {
    // Keep the spacing; D' even and about 1.5 D.
    const int intervals = 2 * static_cast<int>(std::lround(0.75 * grid.intervals()));
    return Grid(grid.spacing() * intervals / 2.0, intervals);
}

}  // namespace

std::string_view to_string(ScfFailure failure) {
    switch (failure) {
        case ScfFailure::None: return "none";
        case ScfFailure::MaxIterationsExceeded: return "max_iterations_exceeded";
        case ScfFailure::DomainTooSmall: return "domain_too_small";
        case ScfFailure::Eigensolver: return "eigensolver";
    }
    return "unknown";
}

void ScfConfig::validate() const {
    if (!(tol_mu > 0.0) || !(tol_state > 0.0)) {
        throw ValidationError("SCF tolerances must be positive");
    }
    if (max_iter < 2) {
        throw ValidationError("SCF max_iter must be at least 2");
    }
    if (!(mixing > 0.0 && mixing <= 1.0)) {
        throw ValidationError("SCF mixing must lie in (0, 1], got " + std::to_string(mixing));
    }
    if (!(edge_tolerance > 0.0) || max_domain_enlargements < 0) {
        throw ValidationError("SCF domain-adequacy settings are invalid");
    }
}

double edge_amplitude(const Grid& grid, const std::vector<double>& psi) {
    const double edge = 0.9 * grid.half_width();
    double amp = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        if (std::abs(grid.node(i)) >= edge) amp = std::max(amp, std::abs(psi[i]));
    }
    return amp;
}

bool detect_two_cycle(const std::vector<double>& mu_history, double tol_mu) {
    const std::size_t len = mu_history.size();
    if (len < 6) return false;
    for (std::size_t i = len - 4; i < len; ++i) {
        const double step = std::abs(mu_history[i] - mu_history[i - 1]);
        const double period = std::abs(mu_history[i] - mu_history[i - 2]);
        if (period > std::max(tol_mu, 1e-2 * step)) return false;
    }
    return true;
}

double gp_residual(const StationaryState& state) {
    const Grid& grid = state.grid;
    const std::size_t m = grid.interior_size();
    std::vector<double> v(state.psi.begin() + 1, state.psi.end() - 1);
    std::vector<double> density(m);
    for (std::size_t i = 0; i < m; ++i) density[i] = v[i] * v[i];
    const auto op = assemble(grid, TrapConfig{state.a, state.beta}, density);
    const auto av = op.apply(v);
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = av[i] - state.mu * v[i];
        s += r * r;
    }
    return std::sqrt(grid.spacing() * s);
}

ScfResult solve_state(const Grid& grid, const TrapConfig& trap, int n, const ScfConfig& cfg) {
    trap.validate();
    cfg.validate();
    if (n < 0 || static_cast<std::size_t>(n) + 1 > grid.interior_size()) {
        throw ValidationError("solve_state: state index " + std::to_string(n) +
                              " not representable on this grid");
    }
    Grid current = grid;
    for (int attempt = 0;; ++attempt) {
        ScfResult result = iterate(current, trap, n, cfg);
        result.domain_enlargements = attempt;
        if (edge_amplitude(current, result.state.psi) <= cfg.edge_tolerance) return result;
        if (attempt == cfg.max_domain_enlargements) {
            result.converged = false;
            result.failure = ScfFailure::DomainTooSmall;
            result.message = "state " + std::to_string(n) + " still reaches the walls at L = " +
                             std::to_string(current.half_width()) + " after " +
                             std::to_string(attempt) + " enlargements";
            const std::string what = result.message;
            throw ScfError(what, std::move(result));
        }
        current = enlarged(current);
    }
}

std::vector<ScfResult> solve_spectrum(const Grid& grid, const TrapConfig& trap, int k,
                                      const ScfConfig& cfg) {
    if (k < 1) throw ValidationError("solve_spectrum: k must be >= 1");
    std::vector<ScfResult> results;
    results.reserve(static_cast<std::size_t>(k));
    for (int n = 0; n < k; ++n) {
        try {
            results.push_back(solve_state(grid, trap, n, cfg));
        } catch (const ScfError& e) {
            results.push_back(e.result());
        }
    }
    return results;
}

}  // namespace gpdwell
