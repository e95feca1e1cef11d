#include "gpdwell/critical.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "gpdwell/error.hpp"
#include "gpdwell/hamiltonian.hpp"

namespace gpdwell {
namespace {

constexpr int kMaxDampingRetries = 4;

struct Probe {
    double curvature;
    ScfResult result;
};

Probe probe_curvature(double a, double beta, const Grid& grid, const ScfConfig& cfg,
                      int* damped = nullptr) {
    // Plain iteration can lock into a two-cycle at strong coupling; the fixed
    // point does not depend on the mixing, so retry with damping.
    ScfConfig attempt = cfg;
    for (int retry = 0;; ++retry) {
        try {
            ScfResult r = solve_state(grid, TrapConfig{a, beta}, 0, attempt);
            if (retry > 0 && damped) ++*damped;
            const Grid& g = r.state.grid;
            double c = second_derivative_at(g, r.state.psi, g.center_index());
            if (r.state.psi[static_cast<std::size_t>(g.center_index())] < 0.0) c = -c;
            return {c, std::move(r)};
        } catch (const ScfError& e) {
            if (retry == kMaxDampingRetries ||
                e.result().failure != ScfFailure::MaxIterationsExceeded) {
                throw;
            }
            attempt.mixing *= 0.5;
        }
    }
}

}  // namespace

double curvature_sign(const TrapConfig& trap, const Grid& grid, const ScfConfig& cfg) {
    trap.validate();
    return probe_curvature(trap.a, trap.beta, grid, cfg).curvature;
}

CriticalResult find_critical_a(double beta, std::pair<double, double> bracket, double tol,
                               const Grid& grid, const ScfConfig& cfg) {
    auto [lo, hi] = bracket;
    if (!(lo > 0.0) || !(hi > lo)) {
        throw ValidationError("find_critical_a: bracket must satisfy 0 < a_lo < a_hi");
    }
    if (!(tol > 0.0)) throw ValidationError("find_critical_a: tolerance must be positive");

    CriticalResult out;
    out.beta = beta;
    out.tolerance = tol;

    double c_lo = probe_curvature(lo, beta, grid, cfg, &out.damped_probes).curvature;
    double c_hi = probe_curvature(hi, beta, grid, cfg, &out.damped_probes).curvature;
    out.probes = 2;
    if ((c_lo < 0.0) == (c_hi < 0.0)) {
        throw ValidationError("find_critical_a: curvature has the same sign at a = " +
                              std::to_string(lo) + " and a = " + std::to_string(hi));
    }

    while (hi - lo >= tol) {
        double mid = 0.5 * (lo + hi);
        double c_mid = 0.0;
        try {
            c_mid = probe_curvature(mid, beta, grid, cfg, &out.damped_probes).curvature;
        } catch (const ScfError&) {
            // Fall back to a neighbouring point inside the bracket.
            ++out.skipped_probes;
            mid = lo + 0.25 * (hi - lo);
            c_mid = probe_curvature(mid, beta, grid, cfg, &out.damped_probes).curvature;
        }
        ++out.probes;
        if ((c_mid < 0.0) == (c_lo < 0.0)) {
            lo = mid;
            c_lo = c_mid;
        } else {
            hi = mid;
            c_hi = c_mid;
        }
    }

    out.bracket = {lo, hi};
    out.a_c = 0.5 * (lo + hi);
    Probe at = probe_curvature(out.a_c, beta, grid, cfg, &out.damped_probes);
    ++out.probes;
    out.curvature_at_ac = at.curvature;
    out.E_c = at.result.state.energy;
    return out;
}

QuadraticFit fit_quadratic(std::span<const std::pair<double, double>> points) {
    if (points.size() < 4) {
        throw ValidationError("fit_quadratic: need at least 4 points, got " +
                              std::to_string(points.size()));
    }
    std::vector<double> xs;
    for (const auto& [x, y] : points) {
        if (!std::isfinite(x) || !std::isfinite(y)) {
            throw ValidationError("fit_quadratic: non-finite input");
        }
        xs.push_back(x);
    }
    std::sort(xs.begin(), xs.end());
    if (std::unique(xs.begin(), xs.end()) - xs.begin() < 3) {
        throw ValidationError("fit_quadratic: need at least three distinct abscissae");
    }

    // QR by modified Gram-Schmidt on the centred Vandermonde
    // columns; centring keeps the columns well conditioned.
    const std::size_t n = points.size();
    double shift = 0.0;
    for (const auto& p : points) shift += p.first;
    shift /= static_cast<double>(n);

    std::array<std::vector<double>, 3> q;
    for (auto& col : q) col.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = points[i].first - shift;
        q[0][i] = 1.0;
        q[1][i] = t;
        q[2][i] = t * t;
    }
    std::array<std::array<double, 3>, 3> r{};
    for (std::size_t j = 0; j < 3; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            double d = 0.0;
            for (std::size_t i = 0; i < n; ++i) d += q[k][i] * q[j][i];
            r[k][j] = d;
            for (std::size_t i = 0; i < n; ++i) q[j][i] -= d * q[k][i];
        }
        double norm = 0.0;
        for (double v : q[j]) norm += v * v;
        norm = std::sqrt(norm);
        if (norm <= 1e-12 * std::sqrt(static_cast<double>(n))) {
            throw ValidationError("fit_quadratic: design matrix is rank deficient");
        }
        r[j][j] = norm;
        for (auto& v : q[j]) v /= norm;
    }
    std::array<double, 3> qty{};
    for (std::size_t k = 0; k < 3; ++k) {
        for (std::size_t i = 0; i < n; ++i) qty[k] += q[k][i] * points[i].second;
    }
    std::array<double, 3> coef{};
    for (std::size_t kk = 3; kk-- > 0;) {
        double v = qty[kk];
        for (std::size_t j = kk + 1; j < 3; ++j) v -= r[kk][j] * coef[j];
        coef[kk] = v / r[kk][kk];
    }
    // Undo the centring: c0 + c1 (x - s) + c2 (x - s)^2.
    QuadraticFit fit;
    fit.c2 = coef[2];
    fit.c1 = coef[1] - 2.0 * coef[2] * shift;
    fit.c0 = coef[0] - coef[1] * shift + coef[2] * shift * shift;

    double ss = 0.0;
    for (const auto& [x, y] : points) {
        const double e = y - fit(x);
        ss += e * e;
    }
    fit.residual_rms = std::sqrt(ss / static_cast<double>(n));
    return fit;
}

}  // namespace gpdwell
