#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <ostream>

#include "commands.hpp"
#include "gpdwell/parallel.hpp"
#include "gpdwell/table_io.hpp"
#include "gpdwell_tools/cli.hpp"

namespace gpdwell::cli {

ScfConfig ScfOptions::config() const {
    ScfConfig cfg;
    cfg.tol_mu = tol_mu;
    cfg.tol_state = tol_state;
    cfg.max_iter = max_iter;
    cfg.mixing = mixing;
    cfg.max_domain_enlargements = max_enlargements;
    cfg.validate();
    return cfg;
}

void add_grid_options(CLI::App* app, GridOptions& opts) {
    app->add_option("--L", opts.L, "Half-width of the domain [-L, L]")->capture_default_str();
    app->add_option("--D", opts.D, "Number of subintervals (even, >= 8)")->capture_default_str();
}

void add_scf_options(CLI::App* app, ScfOptions& opts) {
    app->add_option("--tol-mu", opts.tol_mu, "Chemical-potential tolerance")->capture_default_str();
    app->add_option("--tol-state", opts.tol_state, "State-overlap tolerance")->capture_default_str();
    app->add_option("--max-iter", opts.max_iter, "Iteration cap")->capture_default_str();
    app->add_option("--mixing", opts.mixing, "Density mixing in (0, 1]")->capture_default_str();
    app->add_option("--max-enlargements", opts.max_enlargements,
                    "Automatic 1.5x domain enlargements allowed")
        ->capture_default_str();
}

void add_output_options(CLI::App* app, OutputOptions& opts) {
    app->add_option("--out", opts.dir, "Output directory")->capture_default_str();
    app->add_option("--threads", opts.threads,
                    "Worker threads (0: GPDWELL_THREADS or hardware default)")
        ->capture_default_str();
    app->add_flag("--quiet", opts.quiet, "Suppress the stdout summary");
}

void echo(ConfigEcho& cfg, std::string key, double value) {
    cfg.emplace_back(std::move(key), io::format_real(value));
}

void echo(ConfigEcho& cfg, std::string key, int value) {
    cfg.emplace_back(std::move(key), std::to_string(value));
}

void echo(ConfigEcho& cfg, std::string key, std::string value) {
    cfg.emplace_back(std::move(key), std::move(value));
}

void echo_grid(ConfigEcho& cfg, const GridOptions& opts) {
    echo(cfg, "L", opts.L);
    echo(cfg, "D", opts.D);
    echo(cfg, "delta", 2.0 * opts.L / opts.D);
}

void echo_scf(ConfigEcho& cfg, const ScfOptions& opts) {
    echo(cfg, "tol_mu", opts.tol_mu);
    echo(cfg, "tol_state", opts.tol_state);
    echo(cfg, "max_iter", opts.max_iter);
    echo(cfg, "mixing", opts.mixing);
    echo(cfg, "max_enlargements", opts.max_enlargements);
}

Context::Context(const OutputOptions& opts, std::ostream& out, std::ostream& err)
    : opts_(opts), out_(out), err_(err) {}

unsigned Context::workers() const {
    if (opts_.threads < 0) throw ValidationError("--threads must be >= 0");
    return resolve_workers(opts_.threads);
}

void Context::write(const std::string& name, std::string_view contents) {
    std::filesystem::path dir(opts_.dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error("cannot create output directory '" + opts_.dir + "': " + ec.message());
    const std::string path = (dir / name).string();
    io::write_text_file(path, contents);
    written_.push_back(path);
    if (!opts_.quiet) out_ << "wrote " << path << '\n';
}

void Context::write_csv(const std::string& name, const Provenance& prov, io::CsvDocument doc) {
    auto lines = provenance_lines(prov);
    doc.preamble.insert(doc.preamble.begin(), lines.begin(), lines.end());
    write(name, io::render_csv(doc));
}

void Context::write_json(const std::string& name, const Provenance& prov, Json results) {
    write(name, render_json(prov, std::move(results)));
}

std::string status_of(const std::exception& e) {
    if (const auto* scf = dynamic_cast<const ScfError*>(&e)) {
        return std::string(to_string(scf->result().failure));
    }
    if (dynamic_cast<const ValidationError*>(&e)) return "invalid";
    if (dynamic_cast<const ConvergenceError*>(&e)) return "not_converged";
    return "error";
}

int sweep_exit(std::size_t ok, std::size_t total, std::size_t invalid) {
    if (ok == total) return kSuccess;
    if (ok > 0) return kPartialSweep;
    return invalid == total ? kValidation : kConvergence;
}

unsigned resolve_workers(int requested) {
    if (requested > 0) return capped_workers(static_cast<unsigned>(requested));
    return default_worker_count();
}

std::vector<double> parse_range(std::string_view text) {
    auto number = [&](std::string_view s) {
        std::string buf(s);
        char* end = nullptr;
        const double v = std::strtod(buf.c_str(), &end);
        if (buf.empty() || end != buf.c_str() + buf.size() || !std::isfinite(v)) {
            throw ValidationError("range: '" + std::string(text) + "' is not a number list");
        }
        return v;
    };
    auto snap = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return std::strtod(buf, nullptr);
    };

    std::vector<double> values;
    if (text.find(':') != std::string_view::npos) {
        const auto c1 = text.find(':');
        const auto c2 = text.find(':', c1 + 1);
        if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos) {
            throw ValidationError("range: expected start:stop:step, got '" + std::string(text) +
                                  "'");
        }
        const double start = number(text.substr(0, c1));
        const double stop = number(text.substr(c1 + 1, c2 - c1 - 1));
        const double step = number(text.substr(c2 + 1));
        if (!(step > 0.0)) throw ValidationError("range: step must be positive");
        if (stop < start) throw ValidationError("range: stop lies below start");
        const double count = std::floor((stop - start) / step + 0.5);
        if (count > 1e6) throw ValidationError("range: more than one million values");
        for (long i = 0; i <= static_cast<long>(count); ++i) {
            values.push_back(snap(start + static_cast<double>(i) * step));
        }
        return values;
    }
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        values.push_back(number(text.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return values;
}

}  // namespace gpdwell::cli
