#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace gpdwell::cli {

enum ExitCode : int {
    kSuccess = 0,
    kInternalError = 1,
    kValidation = 2,
    kConvergence = 3,
    kPartialSweep = 4,
};

/**
 * Runs one gpdwell command line in-process. `args` excludes the program name,
 * e.g. {"solve", "--a", "5", "--beta", "0.1"}. Progress and summaries go to
 * `out`, diagnostics to `err`; data files go under the --out directory.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/**
 * Expands "start:stop:step" (endpoints inclusive within half a step), a comma
 * list "a,b,c" or a single number. Throws ValidationError on malformed input,
 * non-positive steps or more than one million values.
 */
std::vector<double> parse_range(std::string_view text);

/// Worker count: the explicit request if positive, else the GPDWELL_THREADS /
/// hardware default; never above the GPDWELL_THREADS cap when it is set.
unsigned resolve_workers(int requested);

}  // namespace gpdwell::cli
