#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>

#include "gpdwell/grid.hpp"
#include "gpdwell/scf.hpp"
#include "gpdwell_tools/document.hpp"

namespace gpdwell::cli {

struct GridOptions {
    double L = 6.0;
    int D = 4000;

    Grid grid() const { return Grid(L, D); }
};

struct ScfOptions {
    double tol_mu = 1e-9;
    double tol_state = 1e-4;
    int max_iter = 500;
    double mixing = 1.0;
    int max_enlargements = 3;

    ScfConfig config() const;
};

struct OutputOptions {
    std::string dir = ".";
    int threads = 0;
    bool quiet = false;
};

void add_grid_options(CLI::App* app, GridOptions& opts);
void add_scf_options(CLI::App* app, ScfOptions& opts);
void add_output_options(CLI::App* app, OutputOptions& opts);

void echo(ConfigEcho& cfg, std::string key, double value);
void echo(ConfigEcho& cfg, std::string key, int value);
void echo(ConfigEcho& cfg, std::string key, std::string value);
void echo_grid(ConfigEcho& cfg, const GridOptions& opts);
void echo_scf(ConfigEcho& cfg, const ScfOptions& opts);

/// Where a command reports to and writes its files.
class Context {
public:
    Context(const OutputOptions& opts, std::ostream& out, std::ostream& err);

    std::ostream& out() { return out_; }
    std::ostream& err() { return err_; }
    unsigned workers() const;

    /// Writes `contents` to <dir>/<name> and notes the path on `out`.
    void write(const std::string& name, std::string_view contents);
    /// Renders a CSV table with the provenance preamble and writes it.
    void write_csv(const std::string& name, const Provenance& prov, io::CsvDocument doc);
    void write_json(const std::string& name, const Provenance& prov, Json results);

    const std::vector<std::string>& written() const { return written_; }

private:
    OutputOptions opts_;
    std::ostream& out_;
    std::ostream& err_;
    std::vector<std::string> written_;
};

/// Short machine-readable failure name for a caught exception.
std::string status_of(const std::exception& e);

/// Exit code for a sweep: success, partial failure, or all points failed
/// (validation if every failure was a validation error).
int sweep_exit(std::size_t ok, std::size_t total, std::size_t invalid);

class Command {
public:
    virtual ~Command() = default;
    virtual std::string name() const = 0;
    /// Registers the subcommand and its options on `app`.
    virtual CLI::App* attach(CLI::App& app) = 0;
    virtual int execute(std::ostream& out, std::ostream& err) = 0;
};

std::unique_ptr<Command> make_solve_command();
std::unique_ptr<Command> make_scan_critical_command();
std::unique_ptr<Command> make_wigner_command();
std::unique_ptr<Command> make_wkb_command();
std::unique_ptr<Command> make_overlaps_command();
std::unique_ptr<Command> make_dynamics_command();
std::unique_ptr<Command> make_classical_command();

}  // namespace gpdwell::cli
