#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <sstream>

#include "gpdwell/error.hpp"
#include "gpdwell/table_io.hpp"
#include "gpdwell_tools/cli.hpp"
#include "gpdwell_tools/document.hpp"

using namespace gpdwell;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("gpdwell_unit_" + name);
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("real formatting round-trips exactly") {
    for (double v : {0.1, -1.0 / 3.0, 1e-300, 6.02214076e23, 0.0, -0.0, 1.0,
                     std::numeric_limits<double>::denorm_min(), std::numeric_limits<double>::max()}) {
        const auto s = io::format_real(v);
        const double back = std::strtod(s.c_str(), nullptr);
        CHECK(back == v);
        CHECK(std::signbit(back) == std::signbit(v));
    }
    CHECK(io::format_real(0.1) == "0.10000000000000001");
    CHECK(io::format_real(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(io::format_cell(io::Cell{std::int64_t{-7}}) == "-7");
}

TEST_CASE("CSV quoting follows RFC 4180") {
    CHECK(io::format_cell(io::Cell{std::string("plain")}) == "plain");
    CHECK(io::format_cell(io::Cell{std::string("a,b")}) == "\"a,b\"");
    CHECK(io::format_cell(io::Cell{std::string("say \"hi\"")}) == "\"say \"\"hi\"\"\"");
}

TEST_CASE("CSV render/parse round-trip") {
    io::CsvDocument doc;
    doc.preamble = {"gpdwell test", "config: a=5"};
    doc.columns = {"n", "x", "label"};
    doc.rows = {{std::int64_t{0}, 0.1, std::string("a,b")},
                {std::int64_t{1}, std::numeric_limits<double>::quiet_NaN(), std::string("q\"uote")},
                {std::int64_t{2}, -2.5e-17, std::string("")}};
    doc.footer = {"fit: c0=1"};
    const auto text = io::render_csv(doc);
    CHECK(text.find("content-hash: fnv1a64:") != std::string::npos);
    auto parsed = io::parse_csv(text);
    CHECK(parsed.columns == doc.columns);
    REQUIRE(parsed.rows.size() == 3);
    CHECK(parsed.number(0, "x") == 0.1);
    CHECK(std::isnan(parsed.number(1, "x")));
    CHECK(parsed.text(0, "label") == "a,b");
    CHECK(parsed.text(1, "label") == "q\"uote");
    CHECK(parsed.footer == doc.footer);
    CHECK(io::render_csv(parsed) == text);
    CHECK(cli::verify_round_trip(text).identical);

    auto tampered = text;
    tampered.replace(tampered.find("0.10000000000000001"), 3, "0.2");
    CHECK_THROWS_AS(io::parse_csv(tampered), ValidationError);
    CHECK_THROWS_AS(io::parse_csv("a,b\n1\n"), ValidationError);
}

TEST_CASE("FNV-1a reference values") {
    CHECK(io::fnv1a64("") == "cbf29ce484222325");
    CHECK(io::fnv1a64("a") == "af63dc4c8601ec8c");
}

TEST_CASE("JSON documents carry a verified hash") {
    cli::Provenance prov{"solve", {{"a", "5"}}};
    cli::Json results;
    results["mu"] = 0.1;
    results["list"] = {1, 2, 3};
    const auto text = cli::render_json(prov, results);
    const auto j = cli::parse_json_document(text);
    CHECK(j["command"] == "solve");
    CHECK(j["results"]["mu"].get<double>() == 0.1);
    CHECK(j["content_hash"].get<std::string>().rfind("fnv1a64:", 0) == 0);
    CHECK(cli::verify_round_trip(text).identical);
    CHECK(cli::render_json(prov, results) == text);
    auto tampered = text;
    tampered.replace(tampered.find("\"solve\""), 7, "\"other\"");
    CHECK_THROWS_AS(cli::parse_json_document(tampered), ValidationError);
}

TEST_CASE("parse_range") {
    CHECK(cli::parse_range("0:0.5:0.1") == std::vector<double>{0.0, 0.1, 0.2, 0.3, 0.4, 0.5});
    CHECK(cli::parse_range("1,2.5,4") == std::vector<double>{1.0, 2.5, 4.0});
    CHECK(cli::parse_range("3") == std::vector<double>{3.0});
    CHECK(cli::parse_range("0:4:0.5").size() == 9);
    CHECK_THROWS_AS(cli::parse_range("0:1:0"), ValidationError);
    CHECK_THROWS_AS(cli::parse_range("1:0:0.1"), ValidationError);
    CHECK_THROWS_AS(cli::parse_range("x"), ValidationError);
    CHECK_THROWS_AS(cli::parse_range(""), ValidationError);
}

TEST_CASE("CLI exit codes") {
    CHECK(run_cli({}).code == cli::kValidation);
    CHECK(run_cli({"bogus"}).code == cli::kValidation);
    CHECK(run_cli({"--help"}).code == cli::kSuccess);
    CHECK(run_cli({"--version"}).code == cli::kSuccess);
    CHECK(run_cli({"solve"}).code == cli::kValidation);
    const auto dir = scratch("codes");
    CHECK(run_cli({"solve", "--a", "-1", "--out", dir.string()}).code == cli::kValidation);
    CHECK(run_cli({"solve", "--a", "2", "--D", "9", "--out", dir.string()}).code == cli::kValidation);
    CHECK(run_cli({"scan-critical", "--beta", "0", "--a-lo", "3", "--a-hi", "4", "--D", "400",
                   "--out", dir.string()})
              .code == cli::kValidation);
    const auto strong = run_cli({"solve", "--a", "5", "--beta", "9", "--states", "1", "--D", "1000",
                                 "--max-iter", "100", "--out", dir.string(), "--quiet"});
    CHECK(strong.code == cli::kConvergence);
    const auto csv = io::parse_csv(io::read_text_file((dir / "solve_summary.csv").string()));
    CHECK(csv.text(0, "status") == "max_iterations_exceeded");
    CHECK(csv.number(0, "oscillation") == 1.0);
}

TEST_CASE("solve writes parseable outputs with provenance") {
    const auto dir = scratch("solve");
    const auto r = run_cli({"solve", "--a", "5", "--beta", "0.1", "--states", "2", "--D", "1000",
                            "--psi", "--out", dir.string(), "--quiet"});
    REQUIRE(r.code == cli::kSuccess);
    for (const char* name : {"solve_summary.csv", "solve.json", "solve_psi.csv"}) {
        const auto text = io::read_text_file((dir / name).string());
        CHECK(cli::verify_round_trip(text).identical);
    }
    const auto csv = io::parse_csv(io::read_text_file((dir / "solve_summary.csv").string()));
    bool has_a = false;
    for (const auto& line : csv.preamble) has_a = has_a || line == "config: a=5";
    CHECK(has_a);
    CHECK(csv.rows.size() == 2);
    CHECK(csv.text(1, "parity") == "odd");
    const auto j = cli::parse_json_document(io::read_text_file((dir / "solve.json").string()));
    CHECK(j["results"]["all_converged"].get<bool>());
}

TEST_CASE("worker resolution") {
    CHECK(cli::resolve_workers(3) >= 1);
    CHECK(cli::resolve_workers(0) >= 1);
}
