#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "commands.hpp"
#include "gpdwell/observables.hpp"
#include "gpdwell/parallel.hpp"
#include "gpdwell/semiclassics.hpp"
#include "gpdwell/wigner.hpp"
#include "gpdwell_tools/cli.hpp"

namespace gpdwell::cli {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct SweepTally {
    std::size_t ok = 0;
    std::size_t invalid = 0;

    void count(const std::string& status) {
        ok += status == "ok";
        invalid += status == "invalid";
    }
};

/// Options every beta-sweep command shares.
struct SweepOptions {
    double a = 0.0;
    std::string betas = "0";
    GridOptions grid;
    ScfOptions scf;
    OutputOptions output;

    void attach(CLI::App* sub) {
        sub->add_option("--a", a, "Well-depth parameter a > 0")->required();
        sub->add_option("--betas,--beta", betas, "beta values: start:stop:step, a,b,c or one value")
            ->capture_default_str();
        add_grid_options(sub, grid);
        add_scf_options(sub, scf);
        add_output_options(sub, output);
    }

    std::vector<double> validated_betas() const {
        auto values = parse_range(betas);
        for (double b : values) TrapConfig{a, b}.validate();
        return values;
    }

    void echo_into(ConfigEcho& cfg) const {
        echo(cfg, "a", a);
        echo(cfg, "betas", betas);
        echo_grid(cfg, grid);
        echo_scf(cfg, scf);
    }
};

class WignerCommand : public Command {
public:
    std::string name() const override { return "wigner"; }

    CLI::App* attach(CLI::App& app) override {
        auto* sub = app.add_subcommand("wigner", "Wigner function and negativity volume of a state");
        opts_.attach(sub);
        sub->add_option("--state", state_, "Quantum index n")->capture_default_str();
        sub->add_option("--P", P_, "Momentum intervals (even; 0 picks the default)")
            ->capture_default_str();
        sub->add_option("--p-max", p_max_, "Momentum extent (0 picks the default)")
            ->capture_default_str();
        sub->add_option("--x-stride", x_stride_, "Write every k-th x node (0: about 200 rows)")
            ->capture_default_str();
        sub->add_option("--p-stride", p_stride_, "Write every k-th momentum node")
            ->capture_default_str();
        sub->add_flag("--refine", refine_, "Also evaluate the negativity with P doubled");
        return sub;
    }

    int execute(std::ostream& out, std::ostream& err) override {
        const auto betas = opts_.validated_betas();
        const Grid grid = opts_.grid.grid();
        const ScfConfig cfg = opts_.scf.config();
        if (state_ < 0) throw ValidationError("--state must be >= 0");
        if (p_max_ < 0.0 || P_ < 0 || x_stride_ < 0 || p_stride_ < 1) {
            throw ValidationError("--P, --p-max and --x-stride must be >= 0, --p-stride >= 1");
        }
        const double p_max = p_max_ > 0.0 ? p_max_ : default_momentum_extent(grid);
        const int P = P_ > 0 ? P_ : default_momentum_points(p_max);
        if (P % 2 != 0) throw ValidationError("--P must be even");
        if (p_max > max_resolvable_momentum(grid)) {
            throw ValidationError("--p-max exceeds pi/delta = " +
                                  io::format_real(max_resolvable_momentum(grid)));
        }
        Context ctx(opts_.output, out, err);

        Provenance prov{"wigner", {}};
        opts_.echo_into(prov.config);
        echo(prov.config, "state", state_);
        echo(prov.config, "P", P);
        echo(prov.config, "p_max", p_max);
        echo(prov.config, "refine", std::string(refine_ ? "true" : "false"));

        struct Point {
            std::string status = "ok";
            std::string message;
            double delta = kNaN, integral = kNaN, marginal_error = kNaN, delta_refined = kNaN;
            WignerField field;
        };
        const bool keep_field = betas.size() == 1;
        auto points = parallel_map(betas.size(), ctx.workers(), [&](std::size_t i) {
            Point p;
            try {
                const auto r = solve_state(grid, TrapConfig{opts_.a, betas[i]}, state_, cfg);
                const auto& g = r.state.grid;
                WignerField field = wigner_transform(g, r.state.psi, p_max, P);
                p.delta = negativity(field);
                p.integral = phase_space_integral(field);
                const auto marginal = position_marginal(field);
                p.marginal_error = 0.0;
                for (std::size_t k = 0; k < marginal.size(); ++k) {
                    p.marginal_error = std::max(
                        p.marginal_error, std::abs(marginal[k] - r.state.psi[k] * r.state.psi[k]));
                }
                if (refine_) p.delta_refined = negativity(wigner_transform(g, r.state.psi, p_max, 2 * P));
                if (keep_field) p.field = std::move(field);
            } catch (const Error& e) {
                p.status = status_of(e);
                p.message = single_line(e.what());
            }
            return p;
        });

        io::CsvDocument summary;
        summary.columns = {"beta", "n", "delta", "integral", "marginal_error", "delta_2P", "status",
                           "message"};
        SweepTally tally;
        for (std::size_t i = 0; i < betas.size(); ++i) {
            const auto& p = points[i];
            tally.count(p.status);
            summary.rows.push_back({betas[i], std::int64_t{state_}, p.delta, p.integral,
                                    p.marginal_error, p.delta_refined, p.status, p.message});
        }
        ctx.write_csv("wigner_summary.csv", prov, std::move(summary));

        if (keep_field && points[0].status == "ok") {
            const WignerField& f = points[0].field;
            const std::size_t xs = x_stride_ > 0
                                       ? static_cast<std::size_t>(x_stride_)
                                       : std::max<std::size_t>(1, (f.x_count() - 1) / 200);
            io::CsvDocument table;
            table.columns = {"x", "p", "W"};
            for (std::size_t i = 0; i < f.x_count(); i += xs) {
                for (std::size_t j = 0; j < f.p_count(); j += static_cast<std::size_t>(p_stride_)) {
                    table.rows.push_back({f.x_nodes[i], f.p_nodes[j], f.at(i, j)});
                }
            }
            table.footer.push_back("delta: " + io::format_real(points[0].delta));
            table.footer.push_back("integral: " + io::format_real(points[0].integral));
            table.footer.push_back("x_stride: " + std::to_string(xs));
            ctx.write_csv("wigner_grid.csv", prov, std::move(table));
        }

        if (!opts_.output.quiet) {
            for (std::size_t i = 0; i < betas.size(); ++i) {
                out << "beta=" << io::format_real(betas[i]) << " n=" << state_
                    << " delta=" << io::format_real(points[i].delta)
                    << " status=" << points[i].status << '\n';
            }
        }
        for (std::size_t i = 0; i < betas.size(); ++i) {
            if (points[i].status != "ok") err << "beta " << betas[i] << ": " << points[i].message << '\n';
        }
        return sweep_exit(tally.ok, betas.size(), tally.invalid);
    }

private:
    SweepOptions opts_;
    int state_ = 0;
    int P_ = 0;
    double p_max_ = 0.0;
    int x_stride_ = 0;
    int p_stride_ = 1;
    bool refine_ = false;
};

class WkbCommand : public Command {
public:
    std::string name() const override { return "wkb"; }

    CLI::App* attach(CLI::App& app) override {
        auto* sub = app.add_subcommand(
            "wkb", "WKB transmission of the ground state and the lowest splitting over beta");
        opts_.attach(sub);
        return sub;
    }

    int execute(std::ostream& out, std::ostream& err) override {
        const auto betas = opts_.validated_betas();
        const Grid grid = opts_.grid.grid();
        const ScfConfig cfg = opts_.scf.config();
        Context ctx(opts_.output, out, err);

        Provenance prov{"wkb", {}};
        opts_.echo_into(prov.config);

        struct Point {
            std::string status = "ok";
            std::string message;
            double mu0 = kNaN, E0 = kNaN, E1 = kNaN, x1 = kNaN, x2 = kNaN, gamma = kNaN, T0 = kNaN;
        };
        auto points = parallel_map(betas.size(), ctx.workers(), [&](std::size_t i) {
            Point p;
            const TrapConfig trap{opts_.a, betas[i]};
            try {
                const auto r0 = solve_state(grid, trap, 0, cfg);
                const auto r1 = solve_state(grid, trap, 1, cfg);
                const auto& s = r0.state;
                const auto veff = effective_potential(s.grid, trap, s.psi);
                const auto tp = turning_points(s.grid, veff, s.mu);
                p.mu0 = s.mu;
                p.E0 = s.energy;
                p.E1 = r1.state.energy;
                p.x1 = tp.x1;
                p.x2 = tp.x2;
                p.gamma = barrier_action(s.grid, veff, s.mu, tp);
                p.T0 = transmission(s.grid, s, trap);
            } catch (const Error& e) {
                p.status = status_of(e);
                p.message = single_line(e.what());
            }
            return p;
        });

        io::CsvDocument table;
        table.columns = {"beta", "mu0", "E0", "E1", "delta_E", "x1", "x2", "gamma", "T0",
                         "status", "message"};
        SweepTally tally;
        for (std::size_t i = 0; i < betas.size(); ++i) {
            const auto& p = points[i];
            tally.count(p.status);
            table.rows.push_back({betas[i], p.mu0, p.E0, p.E1, p.E1 - p.E0, p.x1, p.x2, p.gamma,
                                  p.T0, p.status, p.message});
            if (!opts_.output.quiet) {
                out << "beta=" << io::format_real(betas[i]) << " T0=" << io::format_real(p.T0)
                    << " delta_E=" << io::format_real(p.E1 - p.E0) << " status=" << p.status
                    << '\n';
            }
            if (p.status != "ok") err << "beta " << betas[i] << ": " << p.message << '\n';
        }
        ctx.write_csv("wkb.csv", prov, std::move(table));
        return sweep_exit(tally.ok, betas.size(), tally.invalid);
    }

private:
    SweepOptions opts_;
};

class OverlapsCommand : public Command {
public:
    std::string name() const override { return "overlaps"; }

    CLI::App* attach(CLI::App& app) override {
        auto* sub = app.add_subcommand("overlaps",
                                       "Overlap matrix C_ij of independently converged states");
        opts_.attach(sub);
        sub->add_option("--states", states_, "Number of states")->capture_default_str();
        return sub;
    }

    int execute(std::ostream& out, std::ostream& err) override {
        const auto betas = opts_.validated_betas();
        const Grid grid = opts_.grid.grid();
        const ScfConfig cfg = opts_.scf.config();
        if (states_ < 2) throw ValidationError("--states must be at least 2");
        Context ctx(opts_.output, out, err);

        Provenance prov{"overlaps", {}};
        opts_.echo_into(prov.config);
        echo(prov.config, "states", states_);

        struct Point {
            std::string status = "ok";
            std::string message;
            OverlapMatrix matrix;
            std::vector<double> energies;
        };
        auto points = parallel_map(betas.size(), ctx.workers(), [&](std::size_t i) {
            Point p;
            const TrapConfig trap{opts_.a, betas[i]};
            try {
                std::vector<StationaryState> states;
                for (int n = 0; n < states_; ++n) {
                    states.push_back(solve_state(grid, trap, n, cfg).state);
                    p.energies.push_back(states.back().energy);
                }
                p.matrix = overlap_matrix(states.front().grid, states);
            } catch (const Error& e) {
                p.status = status_of(e);
                p.message = single_line(e.what());
            }
            return p;
        });

        io::CsvDocument table;
        table.columns = {"beta", "i", "j", "C", "E_i", "E_j", "status", "message"};
        SweepTally tally;
        for (std::size_t b = 0; b < betas.size(); ++b) {
            const auto& p = points[b];
            tally.count(p.status);
            if (p.status != "ok") {
                table.rows.push_back({betas[b], std::int64_t{-1}, std::int64_t{-1}, kNaN, kNaN,
                                      kNaN, p.status, p.message});
                err << "beta " << betas[b] << ": " << p.message << '\n';
                continue;
            }
            for (int i = 0; i < states_; ++i) {
                for (int j = 0; j < states_; ++j) {
                    table.rows.push_back({betas[b], std::int64_t{i}, std::int64_t{j}, p.matrix(i, j),
                                          p.energies[static_cast<std::size_t>(i)],
                                          p.energies[static_cast<std::size_t>(j)], p.status,
                                          std::string()});
                }
            }
            if (!opts_.output.quiet && states_ >= 4) {
                out << "beta=" << io::format_real(betas[b]) << " C01=" << io::format_real(p.matrix(0, 1))
                    << " C02=" << io::format_real(p.matrix(0, 2))
                    << " C13=" << io::format_real(p.matrix(1, 3)) << '\n';
            }
        }
        ctx.write_csv("overlaps.csv", prov, std::move(table));
        return sweep_exit(tally.ok, betas.size(), tally.invalid);
    }

private:
    SweepOptions opts_;
    int states_ = 4;
};

}  // namespace

std::unique_ptr<Command> make_wigner_command() { return std::make_unique<WignerCommand>(); }
std::unique_ptr<Command> make_wkb_command() { return std::make_unique<WkbCommand>(); }
std::unique_ptr<Command> make_overlaps_command() { return std::make_unique<OverlapsCommand>(); }

}  // namespace gpdwell::cli
