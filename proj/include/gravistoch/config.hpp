#pragma once
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gravistoch/constants.hpp"

namespace gravistoch::cli {

// Fully resolved run configuration. Flag values override config-file values;
// the resolved form (including defaults) is what gets hashed and echoed.
struct RunConfig {
    std::string command;

    // constants
    double hbar = 1.0;
    double G = kNaturalG;
    std::optional<double> nu;    // mutually exclusive with beta
    std::optional<double> beta;

    // lattice
    double box_length = 2.0 * kPi;
    int nmax = 1;

    // sde
    std::optional<double> dt;  // default: the stability guard value
    std::uint64_t steps = 2000;
    std::uint64_t members = 16;

    std::uint64_t seed = 1;
    std::string out = "out";
    std::string format = "csv";  // trajectory format: csv | json | binary
    bool assert_mode = false;
    bool force_dt = false;
    bool exact_stepper = false;
    bool no_trajectories = false;

    // command-specific
    std::array<double, 3> kvec{0.0, 0.0, 1.0};      // polarization
    int bins = 24;                                  // spectrum
    double omega = 1.0;                             // covariance / radiation / acceleration-check
    double tau_max = 3.0;                           // covariance / radiation lag grid
    double tau_step = 0.05;
    std::uint64_t samples = 100000;                 // radiation
    std::string input;                              // wick-check trajectory directory
    int order = 4;                                  // wick-check moment order
    std::vector<double> lags{0.5, 1.0};             // wick-check / simulate estimator lags
    std::string source;                             // retarded source description (JSON)
    std::array<double, 4> at{0.0, 0.0, 0.0, 0.0};   // retarded evaluation point (x, y, z, t)
    int discretize = 0;                             // retarded: cells per axis (0 = closed form)

    // Resolve the constants block (Nelson default when neither nu nor beta is
    // given); throws config_error on conflicts or invalid values.
    PhysicalConstants constants() const;

    void validate() const;
    std::string canonical_json() const;  // resolved config, sorted keys
    std::uint64_t hash() const;
};

// Parse argv, apply an optional --config JSON file (flat schema, unknown keys
// rejected, flags win), validate. Throws config_error on bad input. A request
// for --help is reported via the returned exit_now/exit_code fields.
struct ParseResult {
    RunConfig config;
    bool exit_now = false;
    int exit_code = 0;
};
ParseResult parse_config(int argc, const char* const* argv);

// Execute the configured command. Returns the process exit code
// (0 ok, 4 failed statistical assertion under --assert).
int run(const RunConfig& cfg);

}  // namespace gravistoch::cli
