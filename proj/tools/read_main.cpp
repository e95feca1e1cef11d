// gpdwell-read: re-parses emitted CSV/JSON files and checks they re-render
// byte for byte. Exit 0 when every file round-trips, 2 otherwise.
#include <iostream>
#include <string>

#include "gpdwell/error.hpp"
#include "gpdwell/table_io.hpp"
#include "gpdwell_tools/document.hpp"

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: gpdwell-read FILE...\n";
        return 2;
    }
    int status = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string path = argv[i];
        try {
            const auto rt = gpdwell::cli::verify_round_trip(gpdwell::io::read_text_file(path));
            std::cout << (rt.identical ? "ok " : "MISMATCH ") << rt.kind << ' ' << path
                      << " records=" << rt.records << '\n';
            if (!rt.identical) status = 2;
        } catch (const std::exception& e) {
            std::cout << "FAIL " << path << ": " << e.what() << '\n';
            status = 2;
        }
    }
    return status;
}
