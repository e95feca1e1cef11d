#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>

#include "commands.hpp"
#include "gpdwell/dynamics.hpp"
#include "gpdwell/parallel.hpp"
#include "gpdwell/semiclassics.hpp"
#include "gpdwell_tools/cli.hpp"

namespace gpdwell::cli {
namespace {

class DynamicsCommand : public Command {
public:
    std::string name() const override { return "dynamics"; }

    CLI::App* attach(CLI::App& app) override {
        auto* sub = app.add_subcommand(
            "dynamics", "Crank-Nicolson evolution of a coherent state and its FOTOC growth");
        sub->add_option("--a", a_, "Well-depth parameter a > 0")->capture_default_str();
        sub->add_option("--x0", x0_, "Initial packet centre")->capture_default_str();
        sub->add_option("--p0", p0_, "Initial packet momentum")->capture_default_str();
        sub->add_option("--variance", variance_, "Initial position variance")->capture_default_str();
        sub->add_option("--tmax", t_max_, "Final time")->capture_default_str();
        sub->add_option("--dt", dt_, "Time step")->capture_default_str();
        sub->add_option("--sample-dt", sample_dt_, "Spacing of the stored samples")
            ->capture_default_str();
        sub->add_option("--fit-lo", fit_lo_, "Start of the fit window (default tmax/3)");
        sub->add_option("--fit-hi", fit_hi_, "End of the fit window (default tmax)");
        grid_.D = 2000;
        add_grid_options(sub, grid_);
        add_output_options(sub, output_);
        return sub;
    }

    int execute(std::ostream& out, std::ostream& err) override {
        TrapConfig{a_, 0.0}.validate();
        if (!(dt_ > 0.0) || !(t_max_ > 0.0) || !(sample_dt_ >= dt_)) {
            throw ValidationError("need dt > 0, tmax > 0 and sample-dt >= dt");
        }
        const Grid grid = grid_.grid();
        const int steps = static_cast<int>(std::lround(t_max_ / dt_));
        const int stride = std::max(1, static_cast<int>(std::lround(sample_dt_ / dt_)));
        if (std::abs(steps * dt_ - t_max_) > 1e-9 * t_max_) {
            throw ValidationError("tmax must be a whole number of time steps");
        }
        const FitWindow window{fit_lo_ ? *fit_lo_ : t_max_ / 3.0, fit_hi_ ? *fit_hi_ : t_max_};
        if (!(window.t_lo < window.t_hi) || window.t_lo < 0.0 || window.t_hi > t_max_ + 1e-12) {
            throw ValidationError("fit window must satisfy 0 <= fit-lo < fit-hi <= tmax");
        }
        Context ctx(output_, out, err);

        Provenance prov{"dynamics", {}};
        echo(prov.config, "a", a_);
        echo(prov.config, "x0", x0_);
        echo(prov.config, "p0", p0_);
        echo(prov.config, "variance", variance_);
        echo(prov.config, "tmax", t_max_);
        echo(prov.config, "dt", dt_);
        echo(prov.config, "sample_dt", sample_dt_);
        echo(prov.config, "fit_lo", window.t_lo);
        echo(prov.config, "fit_hi", window.t_hi);
        echo_grid(prov.config, grid_);

        const WavePacket initial = coherent_state(grid, x0_, p0_, variance_);
        const Propagation run = propagate(grid, a_, initial, dt_, steps, stride);
        FotocSeries series = fotoc(run);
        growth_rate(series, window);

        double norm_drift = 0.0;
        for (double n : series.norm) norm_drift = std::max(norm_drift, std::abs(n - series.norm.front()));
        const double e0 = expected_energy(run.snapshots.front(), a_);
        const double e1 = expected_energy(run.snapshots.back(), a_);
        const double lambda = lyapunov_exponent(a_);

        io::CsvDocument table;
        table.columns = {"t", "F", "var_x", "var_p", "norm"};
        for (std::size_t i = 0; i < series.times.size(); ++i) {
            table.rows.push_back(
                {series.times[i], series.F[i], series.var_x[i], series.var_p[i], series.norm[i]});
        }
        table.footer.push_back("fit_rate: " + io::format_real(series.fit_rate));
        table.footer.push_back("fit_r2: " + io::format_real(series.fit_r2));
        table.footer.push_back("lyapunov: " + io::format_real(lambda));
        ctx.write_csv("dynamics.csv", prov, std::move(table));

        Json results;
        results["F0"] = series.F.front();
        results["fit"] = {{"rate", series.fit_rate},
                          {"r2", series.fit_r2},
                          {"t_lo", series.fit_window.t_lo},
                          {"t_hi", series.fit_window.t_hi}};
        results["lyapunov"] = lambda;
        results["two_lyapunov"] = 2.0 * lambda;
        results["rate_over_lyapunov"] = series.fit_rate / lambda;
        results["norm_drift"] = norm_drift;
        results["energy_drift"] = std::abs(e1 - e0) / std::max(1.0, std::abs(e0));
        results["samples"] = series.times.size();
        ctx.write_json("dynamics.json", prov, std::move(results));

        if (!output_.quiet) {
            out << "F(0)=" << io::format_real(series.F.front())
                << " rate=" << io::format_real(series.fit_rate)
                << " r2=" << io::format_real(series.fit_r2) << " lambda=" << io::format_real(lambda)
                << " 2lambda=" << io::format_real(2.0 * lambda) << '\n';
        }
        return kSuccess;
    }

private:
    double a_ = 10.0;
    double x0_ = 0.0;
    double p0_ = 0.0;
    double variance_ = 0.5;
    double t_max_ = 0.3;
    double dt_ = 1e-4;
    double sample_dt_ = 0.005;
    std::optional<double> fit_lo_;
    std::optional<double> fit_hi_;
    GridOptions grid_;
    OutputOptions output_;
};

class ClassicalCommand : public Command {
public:
    std::string name() const override { return "classical"; }

    CLI::App* attach(CLI::App& app) override {
        auto* sub = app.add_subcommand("classical",
                                       "Classical double-well trajectories and the separatrix");
        sub->add_option("--a", a_, "Well-depth parameter a > 0")->capture_default_str();
        sub->add_option("--x0", x0_, "Initial positions (list or range)")->capture_default_str();
        sub->add_option("--p0", p0_, "Initial momenta (one value or one per x0)")
            ->capture_default_str();
        sub->add_option("--dt", dt_, "RK4 step")->capture_default_str();
        sub->add_option("--tmax", t_max_, "Final time")->capture_default_str();
        sub->add_option("--stride", stride_, "Store every k-th step")->capture_default_str();
        sub->add_option("--separatrix-points", separatrix_points_,
                        "Samples of the separatrix curve to write (0: none)")
            ->capture_default_str();
        add_output_options(sub, output_);
        return sub;
    }

    int execute(std::ostream& out, std::ostream& err) override {
        const auto x0 = parse_range(x0_);
        auto p0 = parse_range(p0_);
        if (p0.size() == 1) p0.resize(x0.size(), p0.front());
        if (p0.size() != x0.size()) throw ValidationError("--p0 needs one value or one per --x0");
        if (stride_ < 1 || separatrix_points_ < 0) {
            throw ValidationError("--stride must be >= 1 and --separatrix-points >= 0");
        }
        lyapunov_exponent(a_);
        Context ctx(output_, out, err);

        Provenance prov{"classical", {}};
        echo(prov.config, "a", a_);
        echo(prov.config, "x0", x0_);
        echo(prov.config, "p0", p0_);
        echo(prov.config, "dt", dt_);
        echo(prov.config, "tmax", t_max_);
        echo(prov.config, "stride", stride_);
        echo(prov.config, "separatrix_points", separatrix_points_);

        auto paths = parallel_map(x0.size(), ctx.workers(), [&](std::size_t i) {
            return classical_trajectory(a_, x0[i], p0[i], dt_, t_max_, stride_);
        });

        io::CsvDocument table;
        table.columns = {"trajectory", "t", "x", "p", "H"};
        Json list = Json::array();
        for (std::size_t k = 0; k < paths.size(); ++k) {
            const auto& path = paths[k];
            bool crosses = false;
            for (std::size_t i = 0; i < path.points.size(); ++i) {
                const auto [x, p] = path.points[i];
                if (i && (x > 0.0) != (path.points[i - 1].first > 0.0)) crosses = true;
                table.rows.push_back({static_cast<std::int64_t>(k), path.times[i], x, p,
                                      classical_energy(a_, x, p)});
            }
            Json j;
            j["x0"] = x0[k];
            j["p0"] = p0[k];
            j["energy"] = path.energy;
            j["max_energy_drift"] = path.max_energy_drift();
            j["crosses_origin"] = crosses;
            j["below_separatrix"] = path.energy < 0.0;
            list.push_back(std::move(j));
            if (!output_.quiet) {
                out << "trajectory " << k << ": E=" << io::format_real(path.energy)
                    << " drift=" << io::format_real(path.max_energy_drift())
                    << " crosses_origin=" << (crosses ? "yes" : "no") << '\n';
            }
        }
        ctx.write_csv("classical.csv", prov, std::move(table));

        if (separatrix_points_ > 0) {
            io::CsvDocument sep;
            sep.columns = {"x", "p"};
            const double edge = std::sqrt(a_);
            for (int i = 0; i <= separatrix_points_; ++i) {
                const double x = -edge + 2.0 * edge * i / separatrix_points_;
                sep.rows.push_back({x, separatrix_momentum(a_, x)});
            }
            ctx.write_csv("classical_separatrix.csv", prov, std::move(sep));
        }

        Json results;
        results["lyapunov"] = lyapunov_exponent(a_);
        results["trajectories"] = std::move(list);
        ctx.write_json("classical.json", prov, std::move(results));
        return kSuccess;
    }

private:
    double a_ = 10.0;
    std::string x0_ = "0.5,1,2,3,3.3";
    std::string p0_ = "0";
    double dt_ = 1e-4;
    double t_max_ = 5.0;
    int stride_ = 100;
    int separatrix_points_ = 200;
    OutputOptions output_;
};

}  // namespace

std::unique_ptr<Command> make_dynamics_command() { return std::make_unique<DynamicsCommand>(); }
std::unique_ptr<Command> make_classical_command() { return std::make_unique<ClassicalCommand>(); }

}  // namespace gpdwell::cli
