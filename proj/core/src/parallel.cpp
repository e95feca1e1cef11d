#include "gpdwell/parallel.hpp"

#include <cstdlib>
#include <string>

namespace gpdwell {

unsigned worker_cap() {
    if (const char* env = std::getenv("GPDWELL_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return 0;
}

unsigned default_worker_count() {
    const unsigned cap = worker_cap();
    return cap ? cap : std::max(1u, std::thread::hardware_concurrency());
}

unsigned capped_workers(unsigned requested) {
    const unsigned cap = worker_cap();
    requested = std::max(1u, requested);
    return cap ? std::min(requested, cap) : requested;
}

}  // namespace gpdwell
