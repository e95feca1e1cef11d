#include "gpdwell_tools/cli.hpp"

#include <algorithm>
#include <ostream>

#include "commands.hpp"

namespace gpdwell::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Gross-Pitaevskii double-well solver and phase-space toolkit", "gpdwell"};
    app.set_version_flag("--version", tool_version());
    app.require_subcommand(1);

    std::vector<std::unique_ptr<Command>> commands;
    commands.push_back(make_solve_command());
    commands.push_back(make_scan_critical_command());
    commands.push_back(make_wigner_command());
    commands.push_back(make_wkb_command());
    commands.push_back(make_overlaps_command());
    commands.push_back(make_dynamics_command());
    commands.push_back(make_classical_command());

    std::vector<CLI::App*> subs;
    for (auto& c : commands) subs.push_back(c->attach(app));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kValidation;
    }

    for (std::size_t i = 0; i < commands.size(); ++i) {
        if (!subs[i]->parsed()) continue;
        try {
            return commands[i]->execute(out, err);
        } catch (const ValidationError& e) {
            err << "error: " << e.what() << '\n';
            return kValidation;
        } catch (const ConvergenceError& e) {
            err << "error: " << e.what() << '\n';
            return kConvergence;
        } catch (const std::exception& e) {
            err << "error: " << e.what() << '\n';
            return kInternalError;
        }
    }
    err << "error: no subcommand given\n";
    return kValidation;
}

}  // namespace gpdwell::cli
