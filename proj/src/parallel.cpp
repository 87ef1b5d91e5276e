#include "nlheat/parallel.hpp"

#include <cstdlib>
#include <string>

namespace nlheat {

std::size_t thread_budget() {
    const char* env = std::getenv("NONLOCAL_HEAT_THREADS");
    if (env == nullptr) {
        const unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : hw;
    }
    try {
        const long v = std::stol(env);
        return v > 0 ? static_cast<std::size_t>(v) : 0;
    } catch (const std::exception&) {
        return 0;
    }
}

}  // namespace nlheat
