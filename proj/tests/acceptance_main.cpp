// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>

#include "levywn/verify.hpp"

int main(int argc, char** argv) {
    std::uint64_t seed = 4;
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::strcmp(argv[i], "--seed") == 0) {
            seed = std::strtoull(argv[i + 1], nullptr, 10);
        }
    }

    int failures = 0;
    int index = 0;
    for (const std::string& name : levywn::acceptance_check_names()) {
        ++index;
        try {
            const levywn::CheckResult result = levywn::run_acceptance_check(name, seed);
            std::printf("[%s] %2d %-28s %s (%.1fs)\n", result.passed ? "PASS" : "FAIL", index,
                        name.c_str(), result.detail.c_str(), result.seconds);
            if (!result.passed) ++failures;
        } catch (const std::exception& e) {
            std::printf("[FAIL] %2d %-28s exception: %s\n", index, name.c_str(), e.what());
            ++failures;
        }
        std::fflush(stdout);
    }
    if (failures > 0) {
        std::printf("%d of %d acceptance criteria failed (seed %llu)\n", failures, index,
                    static_cast<unsigned long long>(seed));
        return 1;
    }
    std::printf("all %d acceptance criteria passed (seed %llu)\n", index,
                static_cast<unsigned long long>(seed));
    return 0;
}
