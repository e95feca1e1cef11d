#include <limits>
#include <ostream>

#include "commands.hpp"
#include "gpdwell/critical.hpp"
#include "gpdwell/parallel.hpp"
#include "gpdwell_tools/cli.hpp"

namespace gpdwell::cli {
namespace {

struct Point {
    CriticalResult result;
    std::string status = "ok";
    std::string message;
};

Json fit_json(const QuadraticFit& fit) {
    Json j;
    j["c0"] = fit.c0;
    j["c1"] = fit.c1;
    j["c2"] = fit.c2;
    j["residual_rms"] = fit.residual_rms;
    return j;
}

std::string fit_line(const std::string& label, const QuadraticFit& fit) {
    return "fit " + label + ": c0=" + io::format_real(fit.c0) + " c1=" + io::format_real(fit.c1) +
           " c2=" + io::format_real(fit.c2) + " residual_rms=" + io::format_real(fit.residual_rms);
}

class ScanCriticalCommand : public Command {
public:
    std::string name() const override { return "scan-critical"; }

    CLI::App* attach(CLI::App& app) override {
        auto* sub = app.add_subcommand("scan-critical",
                                       "Critical depth a_c and energy E_c over a beta sweep");
        sub->add_option("--betas,--beta", betas_, "beta values: start:stop:step or a,b,c")
            ->capture_default_str();
        sub->add_option("--a-lo", a_lo_, "Lower end of the bisection bracket")->capture_default_str();
        sub->add_option("--a-hi", a_hi_, "Upper end of the bisection bracket")->capture_default_str();
        sub->add_option("--tol", tol_, "Bracket width at which bisection stops")->capture_default_str();
        add_grid_options(sub, grid_);
        add_scf_options(sub, scf_);
        add_output_options(sub, output_);
        return sub;
    }

    int execute(std::ostream& out, std::ostream& err) override {
        const auto betas = parse_range(betas_);
        for (double b : betas) TrapConfig{1.0, b}.validate();
        if (!(a_lo_ > 0.0) || !(a_hi_ > a_lo_)) {
            throw ValidationError("--a-lo and --a-hi must satisfy 0 < a_lo < a_hi");
        }
        if (!(tol_ > 0.0)) throw ValidationError("--tol must be positive");
        const Grid grid = grid_.grid();
        const ScfConfig cfg = scf_.config();
        Context ctx(output_, out, err);

        Provenance prov{"scan-critical", {}};
        echo(prov.config, "betas", betas_);
        echo(prov.config, "a_lo", a_lo_);
        echo(prov.config, "a_hi", a_hi_);
        echo(prov.config, "tol", tol_);
        echo_grid(prov.config, grid_);
        echo_scf(prov.config, scf_);

        auto points = parallel_map(betas.size(), ctx.workers(), [&](std::size_t i) {
            Point p;
            p.result.beta = betas[i];
            try {
                p.result = find_critical_a(betas[i], {a_lo_, a_hi_}, tol_, grid, cfg);
            } catch (const Error& e) {
                p.status = status_of(e);
                p.message = single_line(e.what());
            }
            return p;
        });

        io::CsvDocument table;
        table.columns = {"beta", "a_c", "E_c", "curvature_at_ac", "a_lo", "a_hi", "probes",
                         "skipped_probes", "damped_probes", "status", "message"};
        Json rows = Json::array();
        std::vector<std::pair<double, double>> ac_points, ec_points;
        std::size_t ok = 0, invalid = 0;
        for (const auto& p : points) {
            const auto& r = p.result;
            const bool good = p.status == "ok";
            ok += good;
            invalid += p.status == "invalid";
            const double nan = std::numeric_limits<double>::quiet_NaN();
            table.rows.push_back({r.beta, good ? r.a_c : nan, good ? r.E_c : nan,
                                  good ? r.curvature_at_ac : nan, good ? r.bracket.first : nan,
                                  good ? r.bracket.second : nan, std::int64_t{r.probes},
                                  std::int64_t{r.skipped_probes}, std::int64_t{r.damped_probes},
                                  p.status, p.message});
            Json j;
            j["beta"] = r.beta;
            j["status"] = p.status;
            if (good) {
                j["a_c"] = r.a_c;
                j["E_c"] = r.E_c;
                j["curvature_at_ac"] = r.curvature_at_ac;
                j["bracket"] = {r.bracket.first, r.bracket.second};
                j["probes"] = r.probes;
                j["skipped_probes"] = r.skipped_probes;
                j["damped_probes"] = r.damped_probes;
                ac_points.emplace_back(r.beta, r.a_c);
                ec_points.emplace_back(r.beta, r.E_c);
            } else {
                j["message"] = p.message;
            }
            rows.push_back(std::move(j));
        }

        Json results;
        results["points"] = std::move(rows);
        results["fits"] = nullptr;
        if (ac_points.size() >= 4) {
            try {
                const QuadraticFit ac_fit = fit_quadratic(ac_points);
                const QuadraticFit ec_fit = fit_quadratic(ec_points);
                table.footer.push_back(fit_line("a_c", ac_fit));
                table.footer.push_back(fit_line("E_c", ec_fit));
                results["fits"] = {{"a_c", fit_json(ac_fit)}, {"E_c", fit_json(ec_fit)}};
                if (!output_.quiet) {
                    out << fit_line("a_c", ac_fit) << '\n' << fit_line("E_c", ec_fit) << '\n';
                }
            } catch (const ValidationError& e) {
                table.footer.push_back("fit unavailable: " + single_line(e.what()));
            }
        } else {
            table.footer.push_back("fit unavailable: fewer than 4 converged points");
        }
        ctx.write_csv("scan_critical.csv", prov, std::move(table));
        ctx.write_json("scan_critical.json", prov, std::move(results));

        if (!output_.quiet) {
            for (const auto& p : points) {
                out << "beta=" << io::format_real(p.result.beta);
                if (p.status == "ok") {
                    out << " a_c=" << io::format_real(p.result.a_c)
                        << " E_c=" << io::format_real(p.result.E_c);
                }
                out << " status=" << p.status << '\n';
            }
        }
        for (const auto& p : points) {
            if (p.status != "ok") err << "beta " << p.result.beta << ": " << p.message << '\n';
        }
        return sweep_exit(ok, points.size(), invalid);
    }

private:
    std::string betas_ = "0:4:0.5";
    double a_lo_ = 0.5;
    double a_hi_ = 3.0;
    double tol_ = 1e-4;
    GridOptions grid_;
    ScfOptions scf_;
    OutputOptions output_;
};

}  // namespace

std::unique_ptr<Command> make_scan_critical_command() {
    return std::make_unique<ScanCriticalCommand>();
}

}  // namespace gpdwell::cli
