#pragma once

#include <string>
#include <vector>

#include "gpdwell/error.hpp"
#include "gpdwell/grid.hpp"
#include "gpdwell/state.hpp"

namespace gpdwell {

struct ScfConfig {
    double tol_mu = 1e-9;     // |mu_k - mu_{k-1}|
    double tol_state = 1e-4;  // 1 - |<psi_k|psi_{k-1}>|
    int max_iter = 500;
    double mixing = 1.0;      // density_new = (1 - mixing) density_old + mixing |psi|^2

    /// Largest |psi| tolerated on nodes with |x| >= 0.9 L.
    double edge_tolerance = 1e-3;
    /// Times the domain may be widened by 1.5x (spacing kept) when the edge test fails.
    int max_domain_enlargements = 3;

    void validate() const;
};

enum class ScfFailure { None, MaxIterationsExceeded, DomainTooSmall, Eigensolver };

std::string_view to_string(ScfFailure failure);

struct ScfResult {
    StationaryState state;
    int iterations = 0;
    std::vector<double> mu_history;
    std::vector<double> overlap_history;  // |<psi_k|psi_{k-1}>|, one per iteration
    bool converged = false;
    bool oscillation_detected = false;
    ScfFailure failure = ScfFailure::None;
    std::string message;
    int domain_enlargements = 0;
};

/// Thrown by solve_state; carries the partial result (histories, last iterate).
class ScfError : public ConvergenceError {
public:
    ScfError(const std::string& what, ScfResult result)
        : ConvergenceError(what), result_(std::move(result)) {}
    const ScfResult& result() const { return result_; }

private:
    ScfResult result_;
};

/**
 * Self-consistent solve for the n-th stationary state.
 *
 * Starts from a constant density, rebuilds the operator from the state's own
 * density each iteration and takes the (n+1)-th lowest eigenpair. Stops once
 * both the chemical potential and the state overlap meet their tolerances.
 * The returned state has its energy filled in.
 *
 * Throws ScfError (failure MaxIterationsExceeded or DomainTooSmall).
 */
ScfResult solve_state(const Grid& grid, const TrapConfig& trap, int n, const ScfConfig& cfg = {});

/// Independent solve_state runs for n = 0..k-1. Failures are recorded in the
/// corresponding entry (converged == false) instead of being thrown.
std::vector<ScfResult> solve_spectrum(const Grid& grid, const TrapConfig& trap, int k,
                                      const ScfConfig& cfg = {});

/// True when the tail of a non-converged mu history repeats with period two.
bool detect_two_cycle(const std::vector<double>& mu_history, double tol_mu);

/// Largest |psi| on nodes with |x| >= 0.9 L.
double edge_amplitude(const Grid& grid, const std::vector<double>& psi);

/// Discrete L2 norm of A(|psi|^2) psi - mu psi over the interior nodes.
double gp_residual(const StationaryState& state);

}  // namespace gpdwell
