#pragma once
#include <stdexcept>
#include <string>

namespace gravistoch {

// Invalid configuration or arguments; the CLI maps this to exit code 2.
struct config_error : std::invalid_argument {
    explicit config_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Violated numerical guard (step-size bound, insufficient modes, ...);
// exit code 3.
struct guard_error : std::runtime_error {
    explicit guard_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace gravistoch
