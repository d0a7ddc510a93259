#include "gravistoch/config.hpp"

#include <functional>
#include <set>
#include <vector>

#include "CLI11.hpp"
#include "gravistoch/errors.hpp"
#include "gravistoch/io.hpp"
#include "json.hpp"

namespace gravistoch::cli {

using nlohmann::json;

PhysicalConstants RunConfig::constants() const {
    if (nu && beta)
        throw config_error("nu and beta are mutually exclusive parameterizations; set one");
    if (beta) return PhysicalConstants::from_beta(*beta, hbar, G);
    if (nu) return PhysicalConstants::from_nu(*nu, hbar, G);
    return PhysicalConstants::from_nu(16.0 * kPi * G * hbar, hbar, G);
}

void RunConfig::validate() const {
    static const std::set<std::string> commands{"polarization", "spectrum",    "simulate",
                                                "covariance",   "radiation",   "wick-check",
                                                "retarded",     "acceleration-check"};
    if (!commands.count(command)) throw config_error("unknown command: " + command);
    constants();  // checks hbar, G, nu, beta ranges and exclusivity
    if (format != "csv" && format != "json" && format != "binary")
        throw config_error("format must be csv, json or binary (got " + format + ")");
    if (!(box_length > 0.0)) throw config_error("L must be > 0");
    if (dt && !(*dt > 0.0)) throw config_error("dt must be > 0");
    if (!(tau_step > 0.0)) throw config_error("tau_step must be > 0");
    if (tau_max < 0.0) throw config_error("tau_max must be >= 0");
    if (order < 1 || order > 12) throw config_error("order must be in [1, 12]");
    if (members == 0) throw config_error("members must be >= 1");
    if (steps == 0) throw config_error("steps must be >= 1");
}

std::string RunConfig::canonical_json() const {
    json j;
    j["command"] = command;
    j["hbar"] = hbar;
    j["G"] = G;
    j["nu"] = nu ? json(*nu) : json();
    j["beta"] = beta ? json(*beta) : json();
    j["nu_effective"] = constants().nu;
    j["L"] = box_length;
    j["nmax"] = nmax;
    j["dt"] = dt ? json(*dt) : json();
    j["steps"] = steps;
    j["members"] = members;
    j["seed"] = seed;
    j["out"] = out;
    j["format"] = format;
    j["assert"] = assert_mode;
    j["force_dt"] = force_dt;
    j["exact"] = exact_stepper;
    j["no_trajectories"] = no_trajectories;
    j["k"] = kvec;
    j["bins"] = bins;
    j["omega"] = omega;
    j["tau_max"] = tau_max;
    j["tau_step"] = tau_step;
    j["samples"] = samples;
    j["input"] = input;
    j["order"] = order;
    j["lags"] = lags;
    j["source"] = source;
    j["at"] = at;
    j["discretize"] = discretize;
    return j.dump();
}

std::uint64_t RunConfig::hash() const { return io::fnv1a(canonical_json()); }

namespace {

// One row per config key: how to read it from JSON and which CLI option
// shadows it.
struct KeyBinding {
    const char* key;
    std::function<void(RunConfig&, const json&)> apply;
};

const std::vector<KeyBinding>& key_bindings() {
    static const std::vector<KeyBinding> bindings{
        {"hbar", [](RunConfig& c, const json& v) { c.hbar = v.get<double>(); }},
        {"G", [](RunConfig& c, const json& v) { c.G = v.get<double>(); }},
        {"nu", [](RunConfig& c, const json& v) { c.nu = v.get<double>(); }},
        {"beta", [](RunConfig& c, const json& v) { c.beta = v.get<double>(); }},
        {"L", [](RunConfig& c, const json& v) { c.box_length = v.get<double>(); }},
        {"nmax", [](RunConfig& c, const json& v) { c.nmax = v.get<int>(); }},
        {"dt", [](RunConfig& c, const json& v) { c.dt = v.get<double>(); }},
        {"steps", [](RunConfig& c, const json& v) { c.steps = v.get<std::uint64_t>(); }},
        {"members", [](RunConfig& c, const json& v) { c.members = v.get<std::uint64_t>(); }},
        {"seed", [](RunConfig& c, const json& v) { c.seed = v.get<std::uint64_t>(); }},
        {"out", [](RunConfig& c, const json& v) { c.out = v.get<std::string>(); }},
        {"format", [](RunConfig& c, const json& v) { c.format = v.get<std::string>(); }},
        {"assert", [](RunConfig& c, const json& v) { c.assert_mode = v.get<bool>(); }},
        {"force_dt", [](RunConfig& c, const json& v) { c.force_dt = v.get<bool>(); }},
        {"exact", [](RunConfig& c, const json& v) { c.exact_stepper = v.get<bool>(); }},
        {"no_trajectories",
         [](RunConfig& c, const json& v) { c.no_trajectories = v.get<bool>(); }},
        {"k", [](RunConfig& c, const json& v) { c.kvec = v.get<std::array<double, 3>>(); }},
        {"bins", [](RunConfig& c, const json& v) { c.bins = v.get<int>(); }},
        {"omega", [](RunConfig& c, const json& v) { c.omega = v.get<double>(); }},
        {"tau_max", [](RunConfig& c, const json& v) { c.tau_max = v.get<double>(); }},
        {"tau_step", [](RunConfig& c, const json& v) { c.tau_step = v.get<double>(); }},
        {"samples", [](RunConfig& c, const json& v) { c.samples = v.get<std::uint64_t>(); }},
        {"input", [](RunConfig& c, const json& v) { c.input = v.get<std::string>(); }},
        {"order", [](RunConfig& c, const json& v) { c.order = v.get<int>(); }},
        {"lags", [](RunConfig& c, const json& v) { c.lags = v.get<std::vector<double>>(); }},
        {"source", [](RunConfig& c, const json& v) { c.source = v.get<std::string>(); }},
        {"at", [](RunConfig& c, const json& v) { c.at = v.get<std::array<double, 4>>(); }},
        {"discretize", [](RunConfig& c, const json& v) { c.discretize = v.get<int>(); }},
    };
    return bindings;
}

void apply_json_file(RunConfig& cfg, const std::string& path,
                     const std::set<std::string>& cli_set) {
    json j;
    try {
        j = json::parse(io::read_text_file(path));
    } catch (const json::exception& e) {
        throw config_error("config file " + path + ": " + e.what());
    }
    if (!j.is_object()) throw config_error("config file " + path + ": expected a JSON object");
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const auto& b : key_bindings()) {
            if (key == b.key) {
                known = true;
                if (!cli_set.count(key)) {
                    try {
                        b.apply(cfg, value);
                    } catch (const json::exception& e) {
                        throw config_error("config file " + path + ": key '" + key +
                                           "': " + e.what());
                    }
                }
                break;
            }
        }
        if (!known) throw config_error("config file " + path + ": unknown key '" + key + "'");
    }
}

}  // namespace

ParseResult parse_config(int argc, const char* const* argv) {
    ParseResult result;
    RunConfig& cfg = result.config;

    CLI::App app{"diffusion-process simulator and verifier for weak-field gravity"};
    app.require_subcommand(1);

    std::string config_file;
    double nu_flag = 0.0, beta_flag = 0.0, dt_flag = 0.0;
    std::vector<double> k_flag, at_flag;

    struct Tracked {
        CLI::Option* opt;
        const char* key;
    };
    std::vector<Tracked> tracked;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_file, "JSON config file; flags override its values");
        tracked.push_back({sub->add_option("--hbar", cfg.hbar, "action scale"), "hbar"});
        tracked.push_back({sub->add_option("--G", cfg.G, "gravitational constant"), "G"});
        tracked.push_back({sub->add_option("--nu", nu_flag, "diffusion parameter"), "nu"});
        tracked.push_back(
            {sub->add_option("--beta", beta_flag, "dynamical parameter (< 2)"), "beta"});
        tracked.push_back({sub->add_option("--seed", cfg.seed, "RNG seed"), "seed"});
        tracked.push_back({sub->add_option("--out", cfg.out, "output directory"), "out"});
        tracked.push_back(
            {sub->add_flag("--assert", cfg.assert_mode, "exit 4 on statistical failure"),
             "assert"});
    };

    auto* pol = app.add_subcommand("polarization", "print polarization tensors for a wavevector");
    add_common(pol);
    tracked.push_back({pol->add_option("--k", k_flag, "wavevector components x,y,z")
                           ->delimiter(',')
                           ->expected(3),
                       "k"});

    auto* spec = app.add_subcommand("spectrum", "vacuum spectral energy density on a lattice");
    add_common(spec);
    tracked.push_back({spec->add_option("--nmax", cfg.nmax, "lattice cutoff"), "nmax"});
    tracked.push_back({spec->add_option("--L", cfg.box_length, "box length"), "L"});
    tracked.push_back({spec->add_option("--bins", cfg.bins, "frequency bins"), "bins"});

    auto* sim = app.add_subcommand("simulate", "integrate the ground-state diffusion ensemble");
    add_common(sim);
    tracked.push_back({sim->add_option("--nmax", cfg.nmax, "lattice cutoff"), "nmax"});
    tracked.push_back({sim->add_option("--L", cfg.box_length, "box length"), "L"});
    tracked.push_back({sim->add_option("--dt", dt_flag, "time step"), "dt"});
    tracked.push_back({sim->add_option("--steps", cfg.steps, "steps per member"), "steps"});
    tracked.push_back({sim->add_option("--members", cfg.members, "ensemble size"), "members"});
    tracked.push_back(
        {sim->add_option("--format", cfg.format, "trajectory format: csv|json|binary"),
         "format"});
    tracked.push_back({sim->add_flag("--force-dt", cfg.force_dt, "override the step guard"),
                       "force_dt"});
    tracked.push_back(
        {sim->add_flag("--exact", cfg.exact_stepper, "exact linear-process stepper"), "exact"});
    tracked.push_back({sim->add_flag("--no-trajectories", cfg.no_trajectories,
                                     "skip trajectory files, keep estimators"),
                       "no_trajectories"});
    tracked.push_back({sim->add_option("--lags", cfg.lags, "estimator lags")->delimiter(','),
                       "lags"});

    auto* cov = app.add_subcommand("covariance", "analytic covariance kernel table");
    add_common(cov);
    tracked.push_back({cov->add_option("--omega", cfg.omega, "mode frequency"), "omega"});
    tracked.push_back({cov->add_option("--tau-max", cfg.tau_max, "largest lag"), "tau_max"});
    tracked.push_back({cov->add_option("--tau-step", cfg.tau_step, "lag step"), "tau_step"});

    auto* rad = app.add_subcommand("radiation", "random-phase ensemble statistics");
    add_common(rad);
    tracked.push_back({rad->add_option("--nmax", cfg.nmax, "largest scan cutoff"), "nmax"});
    tracked.push_back({rad->add_option("--L", cfg.box_length, "box length"), "L"});
    tracked.push_back({rad->add_option("--samples", cfg.samples, "phase draws"), "samples"});
    tracked.push_back({rad->add_option("--omega", cfg.omega, "single-mode frequency"), "omega"});
    tracked.push_back({rad->add_option("--tau-max", cfg.tau_max, "largest lag"), "tau_max"});
    tracked.push_back({rad->add_option("--tau-step", cfg.tau_step, "lag step"), "tau_step"});

    auto* wick = app.add_subcommand("wick-check", "Gaussian-moment check of stored trajectories");
    add_common(wick);
    tracked.push_back(
        {wick->add_option("--input", cfg.input, "simulate output directory"), "input"});
    tracked.push_back({wick->add_option("--order", cfg.order, "moment order"), "order"});
    tracked.push_back({wick->add_option("--lags", cfg.lags, "moment lags")->delimiter(','),
                       "lags"});

    auto* ret = app.add_subcommand("retarded", "retarded field of compact sources");
    add_common(ret);
    tracked.push_back(
        {ret->add_option("--source", cfg.source, "JSON source description"), "source"});
    tracked.push_back({ret->add_option("--at", at_flag, "evaluation point x,y,z,t")
                           ->delimiter(',')
                           ->expected(4),
                       "at"});
    tracked.push_back({ret->add_option("--discretize", cfg.discretize,
                                       "cells per axis for the quadrature route"),
                       "discretize"});

    auto* acc = app.add_subcommand("acceleration-check", "mean-acceleration identity residual");
    add_common(acc);
    tracked.push_back({acc->add_option("--omega", cfg.omega, "mode frequency"), "omega"});

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        result.exit_code = app.exit(e);
        // CLI11 returns 0 for --help; anything else is a usage error
        if (result.exit_code != 0) result.exit_code = 2;
        result.exit_now = true;
        return result;
    }

    for (auto* sub : {pol, spec, sim, cov, rad, wick, ret, acc})
        if (sub->parsed()) cfg.command = sub->get_name();

    std::set<std::string> cli_set;
    for (const auto& t : tracked)
        if (t.opt->count() > 0) cli_set.insert(t.key);

    if (cli_set.count("nu")) cfg.nu = nu_flag;
    if (cli_set.count("beta")) cfg.beta = beta_flag;
    if (cli_set.count("dt")) cfg.dt = dt_flag;
    if (cli_set.count("k")) cfg.kvec = {k_flag[0], k_flag[1], k_flag[2]};
    if (cli_set.count("at")) cfg.at = {at_flag[0], at_flag[1], at_flag[2], at_flag[3]};

    if (!config_file.empty()) apply_json_file(cfg, config_file, cli_set);
    cfg.validate();
    return result;
}

}  // namespace gravistoch::cli
