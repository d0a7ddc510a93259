#pragma once
#include <array>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>

#include "gravistoch/linalg.hpp"

namespace testutil {

inline std::mt19937_64 engine(std::uint64_t seed = 12345) { return std::mt19937_64(seed); }

inline gravistoch::Vec3 random_nonzero_vec3(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (;;) {
        gravistoch::Vec3 v{u(rng), u(rng), u(rng)};
        if (gravistoch::norm(v) > 1e-3) return v;
    }
}

struct CommandResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

// Run a shell command, capturing combined output.
inline CommandResult run_command(const std::string& cmd) {
    CommandResult r;
    FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) r.output.append(buf, n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace testutil
