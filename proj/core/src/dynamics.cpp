#include "gpdwell/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gpdwell/error.hpp"
#include "gpdwell/hamiltonian.hpp"

namespace gpdwell {
namespace {

constexpr Complex kI{0.0, 1.0};

// Thomas factorization of the constant matrix (1 + i dt/2 H) on interior nodes.
class CrankNicolsonStepper {
public:
    CrankNicolsonStepper(const TridiagonalOperator& h, double dt)
        : h_(h), half_dt_(0.5 * dt), pivot_(h.size()), upper_(h.size()) {
        const std::size_t n = h.size();
        const Complex off = kI * half_dt_;
        for (std::size_t i = 0; i < n; ++i) {
            Complex diag = 1.0 + kI * half_dt_ * h.diag[i];
            if (i > 0) diag -= off * h.offdiag[i - 1] * upper_[i - 1];
            if (std::abs(diag) == 0.0) {
                throw ConvergenceError("Crank-Nicolson factorization broke down at node " +
                                       std::to_string(i) + "; reduce dt");
            }
            pivot_[i] = diag;
            if (i + 1 < n) upper_[i] = off * h.offdiag[i] / diag;
        }
    }

    // Advances the interior samples by one step in place.
    void step(std::vector<Complex>& psi) const {
        const std::size_t n = psi.size();
        std::vector<Complex> rhs(n);
        for (std::size_t i = 0; i < n; ++i) {
            Complex hpsi = h_.diag[i] * psi[i];
            if (i > 0) hpsi += h_.offdiag[i - 1] * psi[i - 1];
            if (i + 1 < n) hpsi += h_.offdiag[i] * psi[i + 1];
            rhs[i] = psi[i] - kI * half_dt_ * hpsi;
        }
        const Complex off = kI * half_dt_;
        for (std::size_t i = 0; i < n; ++i) {
            Complex v = rhs[i];
            if (i > 0) v -= off * h_.offdiag[i - 1] * rhs[i - 1];
            rhs[i] = v / pivot_[i];
        }
        for (std::size_t i = n; i-- > 0;) {
            if (i + 1 < n) rhs[i] -= upper_[i] * rhs[i + 1];
        }
        psi = std::move(rhs);
    }

private:
    TridiagonalOperator h_;
    double half_dt_;
    std::vector<Complex> pivot_;
    std::vector<Complex> upper_;
};

TridiagonalOperator linear_hamiltonian(const Grid& grid, double a) {
    return assemble(grid, TrapConfig{a, 0.0}, std::vector<double>(grid.interior_size(), 0.0));
}

}  // namespace

double WavePacket::norm() const {
    double s = 0.0;
    for (std::size_t i = 1; i < values.size(); ++i) s += std::norm(values[i]);
    return grid.spacing() * s;
}

Moments moments(const WavePacket& packet) {
    const Grid& grid = packet.grid;
    const auto& psi = packet.values;
    const double h = grid.spacing();
    const double norm = packet.norm();

    double mx = 0.0;
    double mx2 = 0.0;
    for (std::size_t i = 1; i < psi.size(); ++i) {
        const double w = std::norm(psi[i]);
        mx += grid.node(i) * w;
        mx2 += grid.node(i) * grid.node(i) * w;
    }
    mx *= h / norm;
    mx2 *= h / norm;

    // <p> = sum conj(psi_i) (-i) (psi_{i+1} - psi_i), real part; <p^2> = sum |psi_{i+1} - psi_i|^2 / h.
    Complex forward{0.0, 0.0};
    double mp2 = 0.0;
    for (std::size_t i = 0; i + 1 < psi.size(); ++i) {
        const Complex d = psi[i + 1] - psi[i];
        forward += std::conj(psi[i]) * d;
        mp2 += std::norm(d);
    }
    const double mp = (-kI * forward).real() / norm;
    mp2 /= h * norm;

    return {mx, mx2 - mx * mx, mp, mp2 - mp * mp};
}

WavePacket coherent_state(const Grid& grid, double x0, double p0, double position_variance) {
    if (!(std::abs(x0) < grid.half_width())) {
        throw ValidationError("coherent_state: centre x0 = " + std::to_string(x0) +
                              " outside the domain");
    }
    if (!(position_variance > 0.0)) {
        throw ValidationError("coherent_state: position variance must be positive");
    }
    const double amplitude = std::pow(2.0 * std::numbers::pi * position_variance, -0.25);
    auto envelope = [&](double x) {
        const double d = x - x0;
        return amplitude * std::exp(-d * d / (4.0 * position_variance));
    };
    const double L = grid.half_width();
    if (envelope(-L) > 1e-3 || envelope(L) > 1e-3) {
        throw ValidationError("coherent_state: packet tail exceeds 1e-3 at the walls");
    }
    WavePacket packet{grid, std::vector<Complex>(grid.size(), Complex{0.0, 0.0})};
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        const double x = grid.node(i);
        packet.values[i] = envelope(x) * std::exp(kI * (p0 * (x - x0)));
    }
    const double scale = 1.0 / std::sqrt(packet.norm());
    for (auto& v : packet.values) v *= scale;
    return packet;
}

Propagation propagate(const Grid& grid, double a, const WavePacket& initial, double dt, int steps,
                      int stride) {
    if (!(initial.grid == grid) || initial.values.size() != grid.size()) {
        throw ValidationError("propagate: packet does not live on this grid");
    }
    if (!(dt > 0.0) || steps < 0 || stride < 1) {
        throw ValidationError("propagate: need dt > 0, steps >= 0 and stride >= 1");
    }
    const auto h = linear_hamiltonian(grid, a);
    const CrankNicolsonStepper stepper(h, dt);

    Propagation run;
    run.times.push_back(0.0);
    run.snapshots.push_back(initial);

    std::vector<Complex> interior(initial.values.begin() + 1, initial.values.end() - 1);
    for (int s = 1; s <= steps; ++s) {
        stepper.step(interior);
        if (s % stride == 0 || s == steps) {
            WavePacket snap{grid, std::vector<Complex>(grid.size(), Complex{0.0, 0.0})};
            std::copy(interior.begin(), interior.end(), snap.values.begin() + 1);
            run.times.push_back(static_cast<double>(s) * dt);
            run.snapshots.push_back(std::move(snap));
        }
    }
    return run;
}

double expected_energy(const WavePacket& packet, double a) {
    const Grid& grid = packet.grid;
    const auto h = linear_hamiltonian(grid, a);
    const std::size_t n = grid.interior_size();
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Complex v = packet.values[i + 1];
        Complex hv = h.diag[i] * v;
        if (i > 0) hv += h.offdiag[i - 1] * packet.values[i];
        if (i + 1 < n) hv += h.offdiag[i] * packet.values[i + 2];
        e += (std::conj(v) * hv).real();
    }
    return grid.spacing() * e / packet.norm();
}

FotocSeries fotoc(const Propagation& run) {
    if (run.snapshots.size() < 10) {
        throw ValidationError("fotoc: need at least 10 snapshots, got " +
                              std::to_string(run.snapshots.size()));
    }
    FotocSeries series;
    series.times = run.times;
    for (const auto& snap : run.snapshots) {
        const Moments m = moments(snap);
        series.var_x.push_back(m.var_x);
        series.var_p.push_back(m.var_p);
        series.F.push_back(m.var_x + m.var_p);
        series.norm.push_back(snap.norm());
    }
    return series;
}

double growth_rate(FotocSeries& series, FitWindow window) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        const double t = series.times[i];
        if (t < window.t_lo || t > window.t_hi) continue;
        const double y = std::log(series.F[i]);
        sx += t;
        sy += y;
        sxx += t * t;
        sxy += t * y;
        syy += y * y;
        ++count;
    }
    if (count < 4) {
        throw ValidationError("growth_rate: window [" + std::to_string(window.t_lo) + ", " +
                              std::to_string(window.t_hi) + "] holds fewer than 4 samples");
    }
    const double n = count;
    const double cov = sxy - sx * sy / n;
    const double var_t = sxx - sx * sx / n;
    const double var_y = syy - sy * sy / n;
    const double slope = cov / var_t;
    series.fit_rate = slope;
    series.fit_window = window;
    series.fit_r2 = var_y > 0.0 ? (cov * cov) / (var_t * var_y) : 1.0;
    return slope;
}

}  // namespace gpdwell
