#include "gravistoch/commands.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gravistoch/errors.hpp"
#include "gravistoch/ground_state.hpp"
#include "gravistoch/io.hpp"
#include "gravistoch/kernels.hpp"
#include "gravistoch/lattice.hpp"
#include "gravistoch/linear_field.hpp"
#include "gravistoch/moments.hpp"
#include "gravistoch/parallel.hpp"
#include "gravistoch/polarization.hpp"
#include "gravistoch/radiation.hpp"
#include "gravistoch/rng.hpp"
#include "gravistoch/stats.hpp"
#include "json.hpp"

namespace gravistoch::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json meta_json(const RunConfig& cfg) {
    return json{{"version", io::kToolVersion},
                {"config_hash", io::hex64(cfg.hash())},
                {"seed", cfg.seed}};
}

json mat3_json(const Mat3& m) {
    json rows = json::array();
    for (int i = 0; i < 3; ++i) rows.push_back({m[i][0], m[i][1], m[i][2]});
    return rows;
}

json sym4_json(const linear_field::Sym4& t) {
    json rows = json::array();
    for (int mu = 0; mu < 4; ++mu) {
        json row = json::array();
        for (int nu = 0; nu < 4; ++nu) row.push_back(t.at(mu, nu));
        rows.push_back(row);
    }
    return rows;
}

void write_config_echo(const RunConfig& cfg) {
    json j = json::parse(cfg.canonical_json());
    j["config_hash"] = io::hex64(cfg.hash());
    j["version"] = io::kToolVersion;
    io::write_text_file(fs::path(cfg.out) / "config.json", j.dump(2) + "\n");
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string member_file_name(std::uint64_t member, const std::string& format) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "member_%04llu", static_cast<unsigned long long>(member));
    const char* ext = format == "binary" ? ".bin" : format == "json" ? ".json" : ".csv";
    return std::string(buf) + ext;
}

double lowest_omega(const lattice::ModeGrid& grid) {
    double w = grid.entry(0).omega;
    for (const auto& e : grid.entries()) w = std::min(w, e.omega);
    return w;
}

}  // namespace

void write_trajectory(const sde::Trajectory& traj, const fs::path& path,
                      const std::string& format, std::uint64_t config_hash,
                      std::uint64_t grid_hash) {
    if (format == "csv") {
        io::CsvWriter csv(path, config_hash, traj.seed);
        csv.raw_meta("grid_hash", io::hex64(grid_hash));
        csv.raw_meta("member", std::to_string(traj.member));
        csv.raw_meta("n_entries", std::to_string(traj.n_entries));
        std::vector<std::string> cols{"t"};
        for (std::size_t e = 0; e < traj.n_entries; ++e) {
            cols.push_back("re_" + std::to_string(e));
            cols.push_back("im_" + std::to_string(e));
        }
        csv.header(cols);
        std::vector<double> row(1 + 2 * traj.n_entries);
        for (std::size_t n = 0; n <= traj.steps; ++n) {
            row[0] = traj.time_at(n);
            for (std::size_t c = 0; c < 2 * traj.n_entries; ++c) row[1 + c] = traj.comps[c][n];
            csv.row(row);
        }
        return;
    }
    if (format == "json") {
        json j;
        j["meta"] = {{"version", io::kToolVersion},
                     {"config_hash", io::hex64(config_hash)},
                     {"grid_hash", io::hex64(grid_hash)},
                     {"seed", traj.seed},
                     {"member", traj.member}};
        j["t0"] = traj.t0;
        j["dt"] = traj.dt;
        j["steps"] = traj.steps;
        j["n_entries"] = traj.n_entries;
        j["comps"] = traj.comps;
        io::write_text_file(path, j.dump() + "\n");
        return;
    }
    if (format == "binary") {
        static_assert(std::endian::native == std::endian::little,
                      "binary trajectory layout is little-endian");
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + path.string());
        const char magic[4] = {'G', 'S', 'T', 'B'};
        const std::uint32_t version = 1;
        f.write(magic, 4);
        f.write(reinterpret_cast<const char*>(&version), 4);
        const std::uint64_t header[6] = {config_hash, grid_hash,         traj.seed,
                                         traj.member, traj.n_entries,    traj.steps};
        f.write(reinterpret_cast<const char*>(header), sizeof header);
        f.write(reinterpret_cast<const char*>(&traj.t0), 8);
        f.write(reinterpret_cast<const char*>(&traj.dt), 8);
        std::vector<double> frame(2 * traj.n_entries);
        for (std::size_t n = 0; n <= traj.steps; ++n) {
            for (std::size_t c = 0; c < 2 * traj.n_entries; ++c) frame[c] = traj.comps[c][n];
            f.write(reinterpret_cast<const char*>(frame.data()),
                    static_cast<std::streamsize>(frame.size() * 8));
        }
        return;
    }
    throw config_error("unknown trajectory format: " + format);
}

sde::Trajectory read_trajectory(const fs::path& path) {
    sde::Trajectory traj;
    const std::string ext = path.extension().string();
    if (ext == ".bin") {
        std::ifstream f(path, std::ios::binary);
        if (!f) throw config_error("cannot open " + path.string());
        char magic[4];
        std::uint32_t version = 0;
        f.read(magic, 4);
        f.read(reinterpret_cast<char*>(&version), 4);
        if (std::memcmp(magic, "GSTB", 4) != 0 || version != 1)
            throw config_error(path.string() + ": not a trajectory file");
        std::uint64_t header[6];
        f.read(reinterpret_cast<char*>(header), sizeof header);
        traj.seed = header[2];
        traj.member = header[3];
        traj.n_entries = header[4];
        traj.steps = header[5];
        f.read(reinterpret_cast<char*>(&traj.t0), 8);
        f.read(reinterpret_cast<char*>(&traj.dt), 8);
        traj.comps.assign(2 * traj.n_entries, std::vector<double>(traj.steps + 1));
        std::vector<double> frame(2 * traj.n_entries);
        for (std::size_t n = 0; n <= traj.steps; ++n) {
            f.read(reinterpret_cast<char*>(frame.data()),
                   static_cast<std::streamsize>(frame.size() * 8));
            if (!f) throw config_error(path.string() + ": truncated trajectory");
            for (std::size_t c = 0; c < 2 * traj.n_entries; ++c) traj.comps[c][n] = frame[c];
        }
        return traj;
    }
    if (ext == ".json") {
        const json j = json::parse(io::read_text_file(path));
        traj.t0 = j.at("t0").get<double>();
        traj.dt = j.at("dt").get<double>();
        traj.steps = j.at("steps").get<std::size_t>();
        traj.n_entries = j.at("n_entries").get<std::size_t>();
        traj.seed = j.at("meta").at("seed").get<std::uint64_t>();
        traj.member = j.at("meta").at("member").get<std::uint64_t>();
        traj.comps = j.at("comps").get<std::vector<std::vector<double>>>();
        return traj;
    }
    if (ext == ".csv") {
        std::ifstream f(path);
        if (!f) throw config_error("cannot open " + path.string());
        std::string line;
        std::vector<std::vector<double>> rows;
        while (std::getline(f, line)) {
            if (line.empty()) continue;
            if (line[0] == '#') {
                if (line.rfind("# member=", 0) == 0) traj.member = std::stoull(line.substr(9));
                if (line.rfind("# seed=", 0) == 0) traj.seed = std::stoull(line.substr(7));
                if (line.rfind("# n_entries=", 0) == 0)
                    traj.n_entries = std::stoull(line.substr(12));
                continue;
            }
            if (line.rfind("t,", 0) == 0) continue;
            std::vector<double> row;
            std::istringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
            rows.push_back(std::move(row));
        }
        if (rows.size() < 2 || traj.n_entries == 0 || rows[0].size() != 1 + 2 * traj.n_entries)
            throw config_error(path.string() + ": malformed trajectory csv");
        traj.steps = rows.size() - 1;
        traj.t0 = rows[0][0];
        traj.dt = rows[1][0] - rows[0][0];
        traj.comps.assign(2 * traj.n_entries, std::vector<double>(traj.steps + 1));
        for (std::size_t n = 0; n < rows.size(); ++n)
            for (std::size_t c = 0; c < 2 * traj.n_entries; ++c)
                traj.comps[c][n] = rows[n][1 + c];
        return traj;
    }
    throw config_error(path.string() + ": unknown trajectory extension");
}

int cmd_polarization(const RunConfig& cfg) {
    const auto basis = polarization::basis_for(cfg.kvec);
    const auto res = polarization::check_invariants(basis);
    json j;
    j["meta"] = meta_json(cfg);
    j["k"] = cfg.kvec;
    j["plus"] = mat3_json(basis.plus.components);
    j["cross"] = mat3_json(basis.cross.components);
    j["projector"] = mat3_json(polarization::transverse_projector(cfg.kvec));
    j["residuals"] = {{"symmetry", res.symmetry},
                      {"trace", res.trace},
                      {"transversality", res.transversality},
                      {"normalization", res.normalization},
                      {"orthogonality", res.orthogonality},
                      {"sum_rule", res.sum_rule},
                      {"max", res.max()}};
    print_json(j);
    return 0;
}

int cmd_spectrum(const RunConfig& cfg) {
    const auto c = cfg.constants();
    const auto grid = lattice::enumerate_modes(cfg.box_length, cfg.nmax);
    const double omega_sphere = 2.0 * kPi * cfg.nmax / cfg.box_length;
    const double bin_width = omega_sphere / cfg.bins;
    const auto res = lattice::vacuum_spectrum(grid, c, bin_width);

    write_config_echo(cfg);
    io::CsvWriter csv(fs::path(cfg.out) / "spectrum.csv", cfg.hash(), cfg.seed);
    csv.header({"omega", "rho", "count"});
    for (const auto& bin : res.bins)
        csv.row({bin.omega_mean, bin.rho, static_cast<double>(bin.count)});

    json j;
    j["meta"] = meta_json(cfg);
    j["fit_exponent"] = res.fit_exponent;
    j["fit_coefficient"] = res.fit_coefficient;
    j["reference_coefficient"] = res.reference_coefficient;
    j["coefficient_ratio"] = res.fit_coefficient / res.reference_coefficient;
    j["fit_bins"] = res.fit_bins;
    io::write_text_file(fs::path(cfg.out) / "spectrum_fit.json", j.dump(2) + "\n");
    print_json(j);

    if (cfg.assert_mode) {
        const bool ok = std::abs(res.fit_exponent - 3.0) <= 0.05 &&
                        std::abs(res.fit_coefficient / res.reference_coefficient - 1.0) <= 0.05;
        if (!ok) return 4;
    }
    return 0;
}

int cmd_simulate(const RunConfig& cfg) {
    const auto c = cfg.constants();
    const auto grid = lattice::enumerate_modes(cfg.box_length, cfg.nmax);
    const double dt = cfg.dt ? *cfg.dt : sde::stability_limit(grid, c);
    sde::IntegrateOptions opts;
    opts.use_exact_kernel = cfg.exact_stepper;
    opts.override_stability_guard = cfg.force_dt;

    const double omega_target = lowest_omega(grid);
    const auto entries = sde::matching_entries(grid, omega_target);
    const auto law = ground_state::mode_law(omega_target, c);

    // estimator lags snapped to whole steps (always including zero lag)
    std::vector<double> lag_list{0.0};
    for (double lag : cfg.lags)
        if (lag > 0.0) lag_list.push_back(lag);
    std::vector<std::size_t> lag_steps;
    for (double lag : lag_list) {
        auto m = static_cast<std::size_t>(std::llround(lag / dt));
        if (lag > 0.0 && m == 0) m = 1;
        if (m > cfg.steps / 2)
            throw config_error("simulate: lag " + io::format_double(lag) +
                               " exceeds half the trajectory length");
        lag_steps.push_back(m);
    }
    const auto diffs = sde::lag_step_diffs(lag_steps);

    write_config_echo(cfg);
    const std::uint64_t config_hash = cfg.hash();

    std::vector<std::vector<double>> member_means(diffs.size(),
                                                  std::vector<double>(cfg.members));
    parallel_for(cfg.members, worker_count(), [&](std::size_t m) {
        const auto init = sde::sample_stationary(grid, c, cfg.seed, m);
        const auto traj = sde::integrate(init, grid, c, dt, cfg.steps, cfg.seed, m, opts);
        if (!cfg.no_trajectories)
            write_trajectory(traj, fs::path(cfg.out) / member_file_name(m, cfg.format),
                             cfg.format, config_hash, grid.hash());
        const auto means = sde::trajectory_lagged_means(traj, entries, diffs);
        for (std::size_t di = 0; di < diffs.size(); ++di) member_means[di][m] = means[di];
    });

    const std::size_t n_batches = std::min<std::size_t>(20, cfg.members);
    const auto cov = sde::covariance_from_member_means(member_means, lag_steps, diffs, dt,
                                                       omega_target, c, n_batches);

    io::CsvWriter csv(fs::path(cfg.out) / "covariance.csv", config_hash, cfg.seed);
    csv.header({"tau", "estimate", "stderr", "analytic"});
    json zrows = json::array();
    bool all_within_3 = true;
    for (std::size_t i = 0; i < lag_steps.size(); ++i) {
        const double tau = static_cast<double>(lag_steps[i]) * dt;
        const double est = cov.at(0, i);
        const double se = cov.se_at(0, i);
        const double ref = cov.reference_at(0, i);
        csv.row({tau, est, se, ref});
        const double z = se > 0.0 ? (est - ref) / se : 0.0;
        all_within_3 = all_within_3 && std::abs(z) <= 3.0;
        zrows.push_back({{"tau", tau}, {"estimate", est}, {"stderr", se}, {"analytic", ref},
                         {"z", z}});
    }

    json j;
    j["meta"] = meta_json(cfg);
    j["backend"] = kernels::active_ops().name;
    j["dt"] = dt;
    j["dt_guard"] = sde::stability_limit(grid, c);
    j["members"] = cfg.members;
    j["steps"] = cfg.steps;
    j["omega"] = omega_target;
    j["gamma"] = law.gamma;
    j["variance_analytic"] = law.variance;
    j["covariance"] = zrows;
    j["all_z_within_3"] = all_within_3;
    io::write_text_file(fs::path(cfg.out) / "summary.json", j.dump(2) + "\n");
    print_json(j);
    return cfg.assert_mode && !all_within_3 ? 4 : 0;
}

int cmd_covariance(const RunConfig& cfg) {
    const auto c = cfg.constants();
    write_config_echo(cfg);
    io::CsvWriter csv(fs::path(cfg.out) / "covariance_kernels.csv", cfg.hash(), cfg.seed);
    csv.header({"tau", "stochastic", "quantum_re", "quantum_im", "schwinger_residual"});
    const auto n = static_cast<std::size_t>(std::floor(cfg.tau_max / cfg.tau_step)) + 1;
    for (std::size_t i = 0; i < n; ++i) {
        const double tau = static_cast<double>(i) * cfg.tau_step;
        const auto q = ground_state::quantum_mode_propagator(cfg.omega, tau, c);
        const double residual = c.nu > 0.0
                                    ? ground_state::schwinger_check(cfg.omega, tau, c)
                                    : std::numeric_limits<double>::quiet_NaN();
        csv.row({tau, ground_state::stochastic_mode_covariance(cfg.omega, tau, c), q.real(),
                 q.imag(), residual});
    }
    return 0;
}

int cmd_radiation(const RunConfig& cfg) {
    const auto c = cfg.constants();
    write_config_echo(cfg);

    // Monte Carlo lagged covariance of a single random-phase mode.
    const double omega = cfg.omega;
    const double amp = std::sqrt(32.0 * kPi * c.G * c.hbar / omega);
    const auto n_lags = static_cast<std::size_t>(std::floor(cfg.tau_max / cfg.tau_step)) + 1;
    std::vector<double> acc(n_lags, 0.0), acc2(n_lags, 0.0);
    for (std::size_t s = 0; s < cfg.samples; ++s) {
        rng::CounterStream stream(cfg.seed, s);
        const double theta = 2.0 * kPi * stream.uniform2(rng::Domain::phase, 0, 0)[0];
        const double x0 = amp * std::cos(theta);
        for (std::size_t i = 0; i < n_lags; ++i) {
            const double tau = static_cast<double>(i) * cfg.tau_step;
            const double p = x0 * amp * std::cos(omega * tau + theta);
            acc[i] += p;
            acc2[i] += p * p;
        }
    }
    io::CsvWriter csv(fs::path(cfg.out) / "theta_covariance.csv", cfg.hash(), cfg.seed);
    csv.header({"tau", "covariance", "stderr", "analytic"});
    bool cov_within_3 = true;
    const double ns = static_cast<double>(cfg.samples);
    for (std::size_t i = 0; i < n_lags; ++i) {
        const double tau = static_cast<double>(i) * cfg.tau_step;
        const double mean = acc[i] / ns;
        const double var = std::max(0.0, acc2[i] / ns - mean * mean);
        const double se = std::sqrt(var / ns);
        const double ref = radiation::theta_mode_covariance(omega, tau, c);
        csv.row({tau, mean, se, ref});
        if (se > 0.0 && std::abs(mean - ref) > 3.0 * se) cov_within_3 = false;
    }

    // Gaussianity scan: single mode plus grids up to nmax.
    std::vector<int> scan_sizes{0};
    for (int n = 1; n <= cfg.nmax; ++n) scan_sizes.push_back(n);
    const auto scan =
        radiation::gaussianity_scan(scan_sizes, cfg.samples, cfg.seed, c, cfg.box_length);

    json j;
    j["meta"] = meta_json(cfg);
    j["covariance_within_3se"] = cov_within_3;
    json pts = json::array();
    bool kurtosis_ok = true;
    for (const auto& pt : scan) {
        pts.push_back({{"n_max", pt.n_max},
                       {"modes", pt.modes},
                       {"samples", pt.samples},
                       {"excess_kurtosis", pt.excess_kurtosis},
                       {"stderr", pt.se}});
        if (pt.n_max == 0) {
            // fixed-amplitude phasor: raw kurtosis 3/2, excess -3/2
            kurtosis_ok = kurtosis_ok && std::abs(pt.excess_kurtosis + 1.5) <= 3.0 * pt.se;
        }
    }
    if (!scan.empty() && scan.back().n_max >= 4)
        kurtosis_ok = kurtosis_ok && std::abs(scan.back().excess_kurtosis) < 0.05;
    j["kurtosis_scan"] = pts;
    j["kurtosis_ok"] = kurtosis_ok;
    io::write_text_file(fs::path(cfg.out) / "kurtosis_scan.json", j.dump(2) + "\n");
    print_json(j);
    return cfg.assert_mode && !(cov_within_3 && kurtosis_ok) ? 4 : 0;
}

int cmd_wick_check(const RunConfig& cfg) {
    if (cfg.input.empty()) throw config_error("wick-check: --input directory required");
    const json stored = json::parse(io::read_text_file(fs::path(cfg.input) / "config.json"));
    const double hbar = stored.at("hbar").get<double>();
    const double g_const = stored.at("G").get<double>();
    const double nu_eff = stored.at("nu_effective").get<double>();
    const auto c = PhysicalConstants::from_nu(nu_eff, hbar, g_const);
    const auto grid = lattice::enumerate_modes(stored.at("L").get<double>(),
                                               stored.at("nmax").get<int>());
    const std::string format = stored.at("format").get<std::string>();
    const std::uint64_t members = stored.at("members").get<std::uint64_t>();

    if (static_cast<int>(cfg.lags.size()) > cfg.order)
        throw config_error("wick-check: more lags than the moment order");

    // first trajectory fixes dt and the step layout
    const auto first =
        read_trajectory(fs::path(cfg.input) / member_file_name(0, format));
    const double dt = first.dt;
    std::vector<std::size_t> offsets(cfg.order, 0);
    for (std::size_t i = 0; i < cfg.lags.size(); ++i) {
        offsets[cfg.order - cfg.lags.size() + i] = sde::lag_to_steps(cfg.lags[i], dt);
    }
    const std::size_t max_offset = *std::max_element(offsets.begin(), offsets.end());
    if (max_offset >= first.steps)
        throw config_error("wick-check: lag exceeds the stored trajectory length");

    const double omega_target = lowest_omega(grid);
    const auto entries = sde::matching_entries(grid, omega_target);
    const auto law = ground_state::mode_law(omega_target, c);

    moments::SampleTable table;
    table.n_cols = offsets.size();
    const std::size_t rows_per_comp = first.steps + 1 - max_offset;
    table.n_rows = members * entries.size() * 2 * rows_per_comp;
    table.data.reserve(table.n_rows * table.n_cols);
    for (std::uint64_t m = 0; m < members; ++m) {
        const auto traj =
            m == 0 ? first : read_trajectory(fs::path(cfg.input) / member_file_name(m, format));
        for (const std::size_t e : entries) {
            for (std::size_t comp = 2 * e; comp <= 2 * e + 1; ++comp) {
                const auto& x = traj.comps[comp];
                for (std::size_t n = 0; n + max_offset <= traj.steps; ++n)
                    for (const std::size_t off : offsets) table.data.push_back(x[n + off]);
            }
        }
    }

    const auto estimate = moments::sample_moment(table, members);

    // analytic covariance over the offset labels
    moments::CovarianceEstimate cov;
    const std::size_t n = offsets.size();
    cov.labels.resize(n);
    cov.matrix.resize(n * n);
    cov.se.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        cov.labels[i] = {0, static_cast<double>(offsets[i]) * dt};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double tau = std::abs(static_cast<double>(offsets[i]) -
                                        static_cast<double>(offsets[j])) * dt;
            cov.matrix[i * n + j] = law.variance * std::exp(-law.gamma * tau);
        }
    std::vector<int> indices(n);
    for (std::size_t i = 0; i < n; ++i) indices[i] = static_cast<int>(i);
    const auto predicted = moments::wick_moment(cov, indices);

    const double z = estimate.se > 0.0 ? (estimate.value - predicted.value) / estimate.se : 0.0;
    json j;
    j["meta"] = meta_json(cfg);
    j["order"] = cfg.order;
    json label_times = json::array();
    for (const std::size_t off : offsets) label_times.push_back(static_cast<double>(off) * dt);
    j["label_times"] = label_times;
    j["predicted"] = predicted.value;
    j["odd_moment"] = predicted.odd;
    j["estimated"] = estimate.value;
    j["stderr"] = estimate.se;
    j["z"] = z;
    j["samples"] = estimate.samples;
    io::write_text_file(fs::path(cfg.out) / "wick_check.json", j.dump(2) + "\n");
    print_json(j);
    return cfg.assert_mode && std::abs(z) > 3.0 ? 4 : 0;
}

int cmd_retarded(const RunConfig& cfg) {
    if (cfg.source.empty()) throw config_error("retarded: --source file required");
    const json src = json::parse(io::read_text_file(cfg.source));
    std::vector<linear_field::PointMass> masses;
    for (const auto& pm : src.at("point_masses")) {
        linear_field::PointMass p;
        p.mass = pm.at("mass").get<double>();
        p.position = pm.at("position").get<Vec3>();
        masses.push_back(p);
    }
    const auto c = cfg.constants();
    const Vec3 x{cfg.at[0], cfg.at[1], cfg.at[2]};
    const double t = cfg.at[3];
    const auto closed = linear_field::retarded_solution(masses, x, t, c);

    json j;
    j["meta"] = meta_json(cfg);
    j["closed_form"] = sym4_json(closed);

    int cells = cfg.discretize;
    if (cells == 0 && src.contains("grid")) cells = src.at("grid").value("cells", 0);
    if (cells > 0) {
        double extent = 0.0;
        for (const auto& m : masses)
            for (double comp : m.position) extent = std::max(extent, std::abs(comp));
        extent += 1.0;
        if (src.contains("grid")) extent = src.at("grid").value("extent", extent);
        linear_field::GridGeometry geom;
        const double dx = 2.0 * extent / cells;
        geom.shape = {1, static_cast<std::size_t>(cells), static_cast<std::size_t>(cells),
                      static_cast<std::size_t>(cells)};
        geom.dt = 1.0;
        geom.dx = dx;
        geom.origin = {0.0, -extent + dx / 2.0, -extent + dx / 2.0, -extent + dx / 2.0};
        double ball_radius = 1.6 * dx;
        if (src.contains("grid")) ball_radius = src.at("grid").value("ball_radius", ball_radius);
        const auto source_field = linear_field::discretize_point_masses(masses, geom, ball_radius);
        const auto quad = linear_field::retarded_solution(source_field, x, t, c, dx / 2.0);
        j["quadrature"] = sym4_json(quad);
        j["cells"] = cells;
        j["relative_error_00"] =
            closed.at(0, 0) != 0.0 ? std::abs(quad.at(0, 0) - closed.at(0, 0)) /
                                         std::abs(closed.at(0, 0))
                                   : 0.0;
    }
    print_json(j);
    return 0;
}

int cmd_acceleration_check(const RunConfig& cfg) {
    PhysicalConstants base;
    base.hbar = cfg.hbar;
    base.G = cfg.G;
    const double beta = cfg.beta.value_or(0.0);
    const auto check = sde::mean_acceleration_check(cfg.omega, beta, base);
    json j;
    j["meta"] = meta_json(cfg);
    j["omega"] = cfg.omega;
    j["beta"] = beta;
    j["nu"] = check.nu;
    j["gamma"] = check.gamma;
    j["lhs_coefficient"] = check.lhs_coefficient;
    j["residual"] = check.residual;
    print_json(j);
    return 0;
}

}  // namespace gravistoch::cli

namespace gravistoch::cli {

int run(const RunConfig& cfg) {
    if (cfg.command == "polarization") return cmd_polarization(cfg);
    if (cfg.command == "spectrum") return cmd_spectrum(cfg);
    if (cfg.command == "simulate") return cmd_simulate(cfg);
    if (cfg.command == "covariance") return cmd_covariance(cfg);
    if (cfg.command == "radiation") return cmd_radiation(cfg);
    if (cfg.command == "wick-check") return cmd_wick_check(cfg);
    if (cfg.command == "retarded") return cmd_retarded(cfg);
    if (cfg.command == "acceleration-check") return cmd_acceleration_check(cfg);
    throw config_error("unknown command: " + cfg.command);
}

}  // namespace gravistoch::cli
