#include "gravistoch/sde.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "gravistoch/errors.hpp"
#include "gravistoch/ground_state.hpp"
#include "gravistoch/kernels.hpp"
#include "gravistoch/parallel.hpp"
#include "gravistoch/rng.hpp"
#include "gravistoch/stats.hpp"

namespace gravistoch {

int worker_count() {
    if (const char* env = std::getenv("GRAVISTOCH_THREADS")) {
        const long v = std::atol(env);
        return std::max(1, static_cast<int>(v));
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    threads = std::max(1, threads);
    if (threads == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const int n = std::min<std::size_t>(threads, count);
    pool.reserve(n);
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace gravistoch

namespace gravistoch::sde {

double WienerSpec::component_sd() const { return std::sqrt(2.0 * nu * dt); }

double Trajectory::time_at(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }

lattice::ModeState Trajectory::state_at(std::size_t i) const {
    lattice::ModeState s;
    s.t = time_at(i);
    s.q.resize(n_entries);
    for (std::size_t e = 0; e < n_entries; ++e)
        s.q[e] = {comps[2 * e][i], comps[2 * e + 1][i]};
    return s;
}

lattice::ModeState sample_stationary(const lattice::ModeGrid& grid, const PhysicalConstants& c,
                                     std::uint64_t seed, std::uint64_t member) {
    rng::CounterStream stream(seed, member);
    lattice::ModeState state;
    state.t = 0.0;
    state.q.resize(grid.size());
    for (std::size_t e = 0; e < grid.size(); ++e) {
        const double sd = std::sqrt(ground_state::mode_law(grid.entry(e).omega, c).variance);
        const auto z = stream.normal2(rng::Domain::init, 0, static_cast<std::uint32_t>(e));
        state.q[e] = {sd * z[0], sd * z[1]};
    }
    return state;
}

double stability_limit(const lattice::ModeGrid& grid, const PhysicalConstants& c) {
    double gamma_max = 0.0;
    for (const auto& e : grid.entries()) gamma_max = std::max(gamma_max, c.decay_rate(e.omega));
    return gamma_max > 0.0 ? 0.1 / gamma_max : std::numeric_limits<double>::infinity();
}

Trajectory integrate(const lattice::ModeState& initial, const lattice::ModeGrid& grid,
                     const PhysicalConstants& c, double dt, std::size_t steps,
                     std::uint64_t seed, std::uint64_t member, const IntegrateOptions& opts) {
    if (initial.q.size() != grid.size())
        throw config_error("sde: initial state does not match grid");
    if (!(dt > 0.0)) throw config_error("sde: dt must be > 0");
    if (steps == 0) throw config_error("sde: steps must be >= 1");

    const double dt_max = stability_limit(grid, c);
    if (!opts.override_stability_guard && dt > dt_max * (1.0 + 1e-12))
        throw guard_error("sde: dt = " + std::to_string(dt) +
                          " exceeds the stability guard 0.1/gamma_max = " + std::to_string(dt_max) +
                          "; reduce dt or override the guard");

    const std::size_t nc = 2 * grid.size();
    Trajectory traj;
    traj.t0 = initial.t;
    traj.dt = dt;
    traj.steps = steps;
    traj.seed = seed;
    traj.member = member;
    traj.n_entries = grid.size();
    traj.comps.assign(nc, std::vector<double>(steps + 1));

    // per-component decay factor and noise scale
    std::vector<double> decay(nc), noise_sd(nc);
    const double euler_sd = WienerSpec{c.nu, dt}.component_sd();
    for (std::size_t e = 0; e < grid.size(); ++e) {
        const auto law = ground_state::mode_law(grid.entry(e).omega, c);
        double a, sd;
        if (opts.disable_drift) {
            a = 1.0;
            sd = euler_sd;
        } else if (opts.use_exact_kernel) {
            // exact one-step transition of the linear process
            a = std::exp(-law.gamma * dt);
            sd = std::sqrt(law.variance * (1.0 - a * a));
        } else {
            a = 1.0 - law.gamma * dt;
            sd = euler_sd;
        }
        decay[2 * e] = decay[2 * e + 1] = a;
        noise_sd[2 * e] = noise_sd[2 * e + 1] = sd;
    }

    std::vector<double> x(nc), noise(nc);
    for (std::size_t e = 0; e < grid.size(); ++e) {
        x[2 * e] = initial.q[e].real();
        x[2 * e + 1] = initial.q[e].imag();
    }
    for (std::size_t i = 0; i < nc; ++i) traj.comps[i][0] = x[i];

    rng::CounterStream stream(seed, member);
    const auto& ops = kernels::active_ops();
    for (std::size_t n = 1; n <= steps; ++n) {
        for (std::size_t e = 0; e < grid.size(); ++e) {
            const auto z = stream.normal2(rng::Domain::noise, n, static_cast<std::uint32_t>(e));
            noise[2 * e] = noise_sd[2 * e] * z[0];
            noise[2 * e + 1] = noise_sd[2 * e + 1] * z[1];
        }
        ops.decay_add(x.data(), decay.data(), noise.data(), nc);
        for (std::size_t i = 0; i < nc; ++i) traj.comps[i][n] = x[i];
    }
    return traj;
}

std::vector<Trajectory> run_ensemble(const lattice::ModeGrid& grid, const PhysicalConstants& c,
                                     double dt, std::size_t steps, std::size_t members,
                                     std::uint64_t seed, const IntegrateOptions& opts,
                                     int threads) {
    if (members == 0) throw config_error("sde: members must be >= 1");
    std::vector<Trajectory> out(members);
    parallel_for(members, threads <= 0 ? worker_count() : threads, [&](std::size_t m) {
        const auto init = sample_stationary(grid, c, seed, m);
        out[m] = integrate(init, grid, c, dt, steps, seed, m, opts);
    });
    return out;
}

std::vector<std::size_t> matching_entries(const lattice::ModeGrid& grid, double omega) {
    std::vector<std::size_t> idx;
    for (std::size_t e = 0; e < grid.size(); ++e)
        if (std::abs(grid.entry(e).omega - omega) <= 1e-12 * std::max(1.0, omega))
            idx.push_back(e);
    if (idx.empty())
        throw config_error("sde: no grid entries at omega = " + std::to_string(omega));
    return idx;
}

std::size_t lag_to_steps(double lag, double dt) {
    const double ratio = lag / dt;
    const auto m = static_cast<std::size_t>(std::llround(ratio));
    if (std::abs(ratio - static_cast<double>(m)) > 1e-9 * std::max(1.0, ratio))
        throw config_error("sde: lag " + std::to_string(lag) +
                           " is not a multiple of dt = " + std::to_string(dt));
    return m;
}

std::vector<double> trajectory_lagged_means(const Trajectory& traj,
                                            const std::vector<std::size_t>& entries,
                                            const std::vector<std::size_t>& diffs) {
    const auto& ops = kernels::active_ops();
    const std::size_t len = traj.steps + 1;
    std::vector<double> out(diffs.size());
    for (std::size_t di = 0; di < diffs.size(); ++di) {
        const std::size_t d = diffs[di];
        if (d >= len) throw config_error("sde: lag exceeds trajectory length");
        double s = 0.0;
        for (std::size_t e : entries) {
            s += ops.lagged_dot(traj.comps[2 * e].data(), len, d);
            s += ops.lagged_dot(traj.comps[2 * e + 1].data(), len, d);
        }
        out[di] = s / (2.0 * static_cast<double>(entries.size()) * static_cast<double>(len - d));
    }
    return out;
}

DriftEstimate estimate_forward_backward(const std::vector<Trajectory>& ensemble,
                                        const lattice::ModeGrid& grid,
                                        const PhysicalConstants& c, double omega, double lag_h,
                                        int n_bins) {
    if (ensemble.empty()) throw config_error("sde: empty ensemble");
    if (n_bins < 3) throw config_error("sde: need at least 3 bins");
    const double dt = ensemble.front().dt;
    const std::size_t m = lag_to_steps(lag_h, dt);
    if (m == 0) throw config_error("sde: lag must be at least one step");
    const auto entries = matching_entries(grid, omega);
    const auto law = ground_state::mode_law(omega, c);
    const double sigma = std::sqrt(law.variance);
    const double q_range = 4.0 * sigma;

    struct BinAcc {
        std::size_t count = 0;
        double sum_q = 0, sum_f = 0, sum_f2 = 0, sum_b = 0, sum_b2 = 0;
    };
    std::vector<BinAcc> acc(n_bins);

    DriftEstimate est;
    est.lag_h = static_cast<double>(m) * dt;
    est.gamma = law.gamma;
    for (const auto& traj : ensemble) {
        if (traj.steps <= 2 * m) throw config_error("sde: trajectory shorter than 2*lag");
        for (std::size_t e : entries) {
            for (std::size_t comp = 2 * e; comp <= 2 * e + 1; ++comp) {
                const auto& x = traj.comps[comp];
                for (std::size_t n = m; n + m <= traj.steps; ++n) {
                    const double q = x[n];
                    const double bf = (x[n + m] - q) / est.lag_h;
                    const double bb = (q - x[n - m]) / est.lag_h;
                    const double rel = (q + q_range) / (2.0 * q_range);
                    if (rel < 0.0 || rel >= 1.0) {
                        ++est.dropped;
                        continue;
                    }
                    auto& bin = acc[static_cast<std::size_t>(rel * n_bins)];
                    ++bin.count;
                    bin.sum_q += q;
                    bin.sum_f += bf;
                    bin.sum_f2 += bf * bf;
                    bin.sum_b += bb;
                    bin.sum_b2 += bb * bb;
                    ++est.samples;
                }
            }
        }
    }

    est.bins.resize(n_bins);
    std::vector<double> qx, fy, fse, by, bse, oy, ose;
    for (int b = 0; b < n_bins; ++b) {
        DriftBin& bin = est.bins[b];
        bin.q_lo = -q_range + 2.0 * q_range * b / n_bins;
        bin.q_hi = -q_range + 2.0 * q_range * (b + 1) / n_bins;
        bin.count = acc[b].count;
        if (bin.count < 2) continue;  // reported empty, never extrapolated
        const double n = static_cast<double>(bin.count);
        bin.q_mean = acc[b].sum_q / n;
        bin.forward_mean = acc[b].sum_f / n;
        bin.backward_mean = acc[b].sum_b / n;
        bin.forward_se =
            std::sqrt(std::max(0.0, acc[b].sum_f2 / n - bin.forward_mean * bin.forward_mean) /
                      (n - 1.0));
        bin.backward_se =
            std::sqrt(std::max(0.0, acc[b].sum_b2 / n - bin.backward_mean * bin.backward_mean) /
                      (n - 1.0));
        // osmotic defect: (b - b~) should equal -2 gamma q
        bin.osmotic_residual = (bin.forward_mean - bin.backward_mean) + 2.0 * law.gamma * bin.q_mean;
        bin.osmotic_se = std::sqrt(bin.forward_se * bin.forward_se +
                                   bin.backward_se * bin.backward_se);
        if (bin.count < 10) continue;  // too noisy for the slope fits
        qx.push_back(bin.q_mean);
        fy.push_back(bin.forward_mean);
        fse.push_back(bin.forward_se);
        by.push_back(bin.backward_mean);
        bse.push_back(bin.backward_se);
        oy.push_back(bin.forward_mean - bin.backward_mean);
        ose.push_back(bin.osmotic_se);
    }

    const auto ffit = stats::weighted_line_fit(qx, fy, fse);
    const auto bfit = stats::weighted_line_fit(qx, by, bse);
    const auto ofit = stats::weighted_line_fit(qx, oy, ose);
    est.forward_slope = ffit.slope;
    est.forward_slope_se = ffit.slope_se;
    est.backward_slope = bfit.slope;
    est.backward_slope_se = bfit.slope_se;
    est.osmotic_slope = ofit.slope;
    est.osmotic_slope_se = ofit.slope_se;
    return est;
}

AccelerationCheck mean_acceleration_check(double omega, double beta,
                                          const PhysicalConstants& base) {
    if (!(omega > 0.0)) throw config_error("acceleration check: omega must be > 0");
    PhysicalConstants c = PhysicalConstants::from_beta(beta, base.hbar, base.G);
    const double gamma = c.decay_rate(omega);

    // Linear observables q -> coeff*q are closed under the forward and
    // backward derivatives of the stationary process: D multiplies the
    // coefficient by -gamma, D~ by +gamma.
    const auto forward = [gamma](double coeff) { return -gamma * coeff; };
    const auto backward = [gamma](double coeff) { return +gamma * coeff; };

    const double dd_star = forward(backward(1.0));   // D D~ q
    const double d_star_d = backward(forward(1.0));  // D~ D q
    const double sym = 0.5 * (dd_star + d_star_d);
    // (D - D~)^2 on a linear observable
    const double diff_once = forward(1.0) - backward(1.0);
    const double diff_twice = forward(diff_once) - backward(diff_once);
    const double lhs = sym + beta / 8.0 * diff_twice;
    const double rhs = -omega * omega;  // harmonic restoring coefficient

    AccelerationCheck out;
    out.nu = c.nu;
    out.gamma = gamma;
    out.lhs_coefficient = lhs;
    out.residual = std::abs(lhs - rhs) / (omega * omega);
    return out;
}

std::vector<std::size_t> lag_step_diffs(const std::vector<std::size_t>& lag_steps) {
    std::vector<std::size_t> diffs;
    for (std::size_t i = 0; i < lag_steps.size(); ++i)
        for (std::size_t j = 0; j < lag_steps.size(); ++j) {
            const std::size_t d = lag_steps[i] > lag_steps[j] ? lag_steps[i] - lag_steps[j]
                                                              : lag_steps[j] - lag_steps[i];
            if (std::find(diffs.begin(), diffs.end(), d) == diffs.end()) diffs.push_back(d);
        }
    std::sort(diffs.begin(), diffs.end());
    return diffs;
}

moments::CovarianceEstimate covariance_from_member_means(
    const std::vector<std::vector<double>>& member_means,
    const std::vector<std::size_t>& lag_steps, const std::vector<std::size_t>& diffs, double dt,
    double omega, const PhysicalConstants& c, std::size_t n_batches) {
    if (member_means.size() != diffs.size())
        throw config_error("sde: member means do not match requested separations");
    const auto law = ground_state::mode_law(omega, c);

    std::vector<double> value(diffs.size()), se(diffs.size());
    for (std::size_t di = 0; di < diffs.size(); ++di) {
        const auto ms = stats::batch_means(member_means[di], n_batches);
        value[di] = ms.mean;
        se[di] = ms.se;
    }

    moments::CovarianceEstimate cov;
    const std::size_t n = lag_steps.size();
    cov.labels.resize(n);
    cov.matrix.resize(n * n);
    cov.se.resize(n * n);
    cov.reference.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        cov.labels[i] = {0, static_cast<double>(lag_steps[i]) * dt};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t d = lag_steps[i] > lag_steps[j] ? lag_steps[i] - lag_steps[j]
                                                              : lag_steps[j] - lag_steps[i];
            const std::size_t di = static_cast<std::size_t>(
                std::find(diffs.begin(), diffs.end(), d) - diffs.begin());
            cov.matrix[i * n + j] = value[di];
            cov.se[i * n + j] = se[di];
            cov.reference[i * n + j] =
                law.variance * std::exp(-law.gamma * static_cast<double>(d) * dt);
        }
    }
    cov.validate();
    return cov;
}

moments::CovarianceEstimate covariance_estimator(const std::vector<Trajectory>& ensemble,
                                                 const std::vector<double>& lags,
                                                 const lattice::ModeGrid& grid,
                                                 const PhysicalConstants& c, double omega,
                                                 std::size_t n_batches) {
    if (ensemble.empty()) throw config_error("sde: empty ensemble");
    if (lags.empty()) throw config_error("sde: no lags requested");
    if (n_batches < 10)
        throw guard_error("sde: covariance estimator needs at least 10 batches");
    if (ensemble.size() < n_batches)
        throw guard_error("sde: " + std::to_string(ensemble.size()) +
                          " members cannot fill " + std::to_string(n_batches) + " batches");

    const double dt = ensemble.front().dt;
    const auto entries = matching_entries(grid, omega);

    std::vector<std::size_t> lag_steps(lags.size());
    for (std::size_t i = 0; i < lags.size(); ++i) lag_steps[i] = lag_to_steps(lags[i], dt);
    const auto diffs = lag_step_diffs(lag_steps);

    std::vector<std::vector<double>> member_means(diffs.size(),
                                                  std::vector<double>(ensemble.size()));
    for (std::size_t m = 0; m < ensemble.size(); ++m) {
        const auto means = trajectory_lagged_means(ensemble[m], entries, diffs);
        for (std::size_t di = 0; di < diffs.size(); ++di) member_means[di][m] = means[di];
    }
    return covariance_from_member_means(member_means, lag_steps, diffs, dt, omega, c, n_batches);
}

}  // namespace gravistoch::sde
