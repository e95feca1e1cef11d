#include <cmath>
#include <ostream>

#include "commands.hpp"
#include "gpdwell/observables.hpp"
#include "gpdwell/parallel.hpp"
#include "gpdwell_tools/cli.hpp"

namespace gpdwell::cli {
namespace {

struct Outcome {
    ScfResult result;
    std::string status = "ok";
    double residual = 0.0;
};

Json state_json(const Outcome& o) {
    const ScfResult& r = o.result;
    Json j;
    j["n"] = r.state.n;
    j["mu"] = r.state.mu;
    j["energy"] = r.state.energy;
    j["parity"] = std::string(to_string(r.state.parity));
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["oscillation_detected"] = r.oscillation_detected;
    j["domain_enlargements"] = r.domain_enlargements;
    j["L"] = r.state.grid.half_width();
    j["D"] = r.state.grid.intervals();
    j["gp_residual"] = o.residual;
    j["status"] = o.status;
    if (!r.converged) {
        Json err;
        err["failure"] = std::string(to_string(r.failure));
        err["message"] = r.message;
        const std::size_t tail = std::min<std::size_t>(4, r.mu_history.size());
        err["mu_tail"] = std::vector<double>(r.mu_history.end() - static_cast<long>(tail),
                                             r.mu_history.end());
        j["error"] = std::move(err);
    }
    return j;
}

class SolveCommand : public Command {
public:
    std::string name() const override { return "solve"; }

    CLI::App* attach(CLI::App& app) override {
        auto* sub = app.add_subcommand("solve", "Self-consistent stationary states for one (a, beta)");
        sub->add_option("--a", a_, "Well-depth parameter a > 0")->required();
        sub->add_option("--beta", beta_, "Interaction strength beta >= 0")->capture_default_str();
        sub->add_option("--states", states_, "Number of states n = 0..k-1")->capture_default_str();
        sub->add_flag("--psi", write_psi_, "Also write the wavefunction samples");
        add_grid_options(sub, grid_);
        add_scf_options(sub, scf_);
        add_output_options(sub, output_);
        return sub;
    }

    int execute(std::ostream& out, std::ostream& err) override {
        const TrapConfig trap{a_, beta_};
        trap.validate();
        const Grid grid = grid_.grid();
        const ScfConfig cfg = scf_.config();
        if (states_ < 1 || static_cast<std::size_t>(states_) > grid.interior_size()) {
            throw ValidationError("--states must lie in [1, D - 1]");
        }
        Context ctx(output_, out, err);

        Provenance prov{"solve", {}};
        echo(prov.config, "a", a_);
        echo(prov.config, "beta", beta_);
        echo(prov.config, "states", states_);
        echo_grid(prov.config, grid_);
        echo_scf(prov.config, scf_);

        auto outcomes = parallel_map(static_cast<std::size_t>(states_), ctx.workers(),
                                     [&](std::size_t n) {
                                         Outcome o;
                                         try {
                                             o.result = solve_state(grid, trap, static_cast<int>(n), cfg);
                                         } catch (const ScfError& e) {
                                             o.result = e.result();
                                             o.status = status_of(e);
                                         }
                                         o.residual = gp_residual(o.result.state);
                                         return o;
                                     });

        bool all_converged = true;
        io::CsvDocument table;
        table.columns = {"n", "mu", "energy", "parity", "iterations", "converged",
                         "oscillation", "domain_enlargements", "L", "gp_residual", "status"};
        Json states = Json::array();
        std::vector<StationaryState> solved;
        for (const auto& o : outcomes) {
            const ScfResult& r = o.result;
            all_converged = all_converged && r.converged;
            table.rows.push_back({std::int64_t{r.state.n}, r.state.mu, r.state.energy,
                                  std::string(to_string(r.state.parity)),
                                  std::int64_t{r.iterations}, std::int64_t{r.converged},
                                  std::int64_t{r.oscillation_detected},
                                  std::int64_t{r.domain_enlargements},
                                  r.state.grid.half_width(), o.residual, o.status});
            states.push_back(state_json(o));
            solved.push_back(r.state);
        }

        Json results;
        results["states"] = std::move(states);
        results["all_converged"] = all_converged;
        if (all_converged && solved.size() >= 2) {
            results["splittings"] = splitting(solved);
        }
        ctx.write_csv("solve_summary.csv", prov, std::move(table));
        ctx.write_json("solve.json", prov, std::move(results));

        if (write_psi_) {
            io::CsvDocument psi;
            psi.columns = {"n", "x", "psi"};
            for (const auto& s : solved) {
                for (std::size_t i = 0; i < s.psi.size(); ++i) {
                    psi.rows.push_back({std::int64_t{s.n}, s.grid.node(i), s.psi[i]});
                }
            }
            ctx.write_csv("solve_psi.csv", prov, std::move(psi));
        }

        if (!output_.quiet) {
            for (const auto& o : outcomes) {
                const auto& s = o.result.state;
                out << "n=" << s.n << " mu=" << io::format_real(s.mu)
                    << " E=" << io::format_real(s.energy) << " parity=" << to_string(s.parity)
                    << " iterations=" << o.result.iterations << " status=" << o.status << '\n';
            }
        }
        for (const auto& o : outcomes) {
            if (!o.result.converged) err << "state " << o.result.state.n << ": " << o.result.message << '\n';
        }
        return all_converged ? kSuccess : kConvergence;
    }

private:
    double a_ = 0.0;
    double beta_ = 0.0;
    int states_ = 1;
    bool write_psi_ = false;
    GridOptions grid_;
    ScfOptions scf_;
    OutputOptions output_;
};

}  // namespace

std::unique_ptr<Command> make_solve_command() { return std::make_unique<SolveCommand>(); }

}  // namespace gpdwell::cli
