#pragma once
#include <cstddef>
#include <cstdint>
#include <vector>

#include "gravistoch/constants.hpp"
#include "gravistoch/lattice.hpp"
#include "gravistoch/moments.hpp"

namespace gravistoch::sde {

// Wiener increments: each real amplitude component receives an independent
// increment of variance 2*nu*dt per step.
struct WienerSpec {
    double nu;
    double dt;
    double component_sd() const;
};

struct IntegrateOptions {
    bool use_exact_kernel = false;  // exact linear-process transition instead of Euler
    bool disable_drift = false;     // pure Wiener motion, for calibration tests
    bool override_stability_guard = false;
};

// One ensemble member's sampled path; reproducible bit-exactly from
// (seed, member, configuration).
struct Trajectory {
    double t0 = 0.0;
    double dt = 0.0;
    std::size_t steps = 0;
    std::uint64_t seed = 0;
    std::uint64_t member = 0;
    std::size_t n_entries = 0;
    // comps[2e] and comps[2e+1] are the real/imaginary series of entry e,
    // each with steps+1 values
    std::vector<std::vector<double>> comps;

    double time_at(std::size_t i) const;
    lattice::ModeState state_at(std::size_t i) const;
};

// Draw from the stationary ground-state law (independent Gaussian components
// with the per-mode variance).
lattice::ModeState sample_stationary(const lattice::ModeGrid& grid, const PhysicalConstants& c,
                                     std::uint64_t seed, std::uint64_t member);

// Largest dt accepted by the stability guard, 0.1 / max gamma.
double stability_limit(const lattice::ModeGrid& grid, const PhysicalConstants& c);

// Euler-Maruyama (or exact-kernel) integration of the ground-state diffusion,
// recording every step. Throws guard_error when dt violates the stability
// guard and the override is not set.
Trajectory integrate(const lattice::ModeState& initial, const lattice::ModeGrid& grid,
                     const PhysicalConstants& c, double dt, std::size_t steps,
                     std::uint64_t seed, std::uint64_t member,
                     const IntegrateOptions& opts = {});

// Stationary-start ensemble, parallel over members (threads <= 0 means the
// configured worker count). Member m is always integrated with RNG stream
// (seed, m); results do not depend on scheduling.
std::vector<Trajectory> run_ensemble(const lattice::ModeGrid& grid, const PhysicalConstants& c,
                                     double dt, std::size_t steps, std::size_t members,
                                     std::uint64_t seed, const IntegrateOptions& opts = {},
                                     int threads = 0);

struct DriftBin {
    double q_lo = 0.0, q_hi = 0.0;
    double q_mean = 0.0;
    std::size_t count = 0;
    double forward_mean = 0.0, forward_se = 0.0;
    double backward_mean = 0.0, backward_se = 0.0;
    double osmotic_residual = 0.0, osmotic_se = 0.0;
};

struct DriftEstimate {
    std::vector<DriftBin> bins;
    double lag_h = 0.0;
    double gamma = 0.0;  // analytic decay rate for reference
    double forward_slope = 0.0, forward_slope_se = 0.0;
    double backward_slope = 0.0, backward_slope_se = 0.0;
    // slope of (forward - backward) vs q; the density-gradient relation
    // predicts -2*gamma
    double osmotic_slope = 0.0, osmotic_slope_se = 0.0;
    std::size_t samples = 0;
    std::size_t dropped = 0;
};

// Conditional-increment estimators of the forward and backward drifts at
// finite lag h (a multiple of dt), binned by the conditioning value. The
// finite-h bias is reported as-is, never extrapolated; empty bins stay empty.
DriftEstimate estimate_forward_backward(const std::vector<Trajectory>& ensemble,
                                        const lattice::ModeGrid& grid,
                                        const PhysicalConstants& c, double omega, double lag_h,
                                        int n_bins = 21);

struct AccelerationCheck {
    double residual = 0.0;  // |lhs + omega^2| / omega^2
    double lhs_coefficient = 0.0;
    double gamma = 0.0;
    double nu = 0.0;
};

// Closed-form evaluation of the mean-acceleration law for the stationary
// linear process: the symmetric second derivative plus the beta-weighted
// squared difference of forward/backward derivatives must reduce to the
// harmonic restoring force, independent of beta. nu is derived from beta.
AccelerationCheck mean_acceleration_check(double omega, double beta,
                                          const PhysicalConstants& base);

// Lagged second moments of the mode components at omega, pooled over matching
// entries and both real components, time-averaged per member, with
// batch-means errors over members and the analytic exponential reference.
// The returned matrix covers all label pairs (stationarity: entry (i,j)
// depends on |tau_i - tau_j| only).
moments::CovarianceEstimate covariance_estimator(const std::vector<Trajectory>& ensemble,
                                                 const std::vector<double>& lags,
                                                 const lattice::ModeGrid& grid,
                                                 const PhysicalConstants& c, double omega,
                                                 std::size_t n_batches = 20);

// Streaming building blocks of covariance_estimator, for callers that cannot
// keep a whole ensemble in memory.
std::vector<std::size_t> matching_entries(const lattice::ModeGrid& grid, double omega);
std::size_t lag_to_steps(double lag, double dt);
std::vector<std::size_t> lag_step_diffs(const std::vector<std::size_t>& lag_steps);
std::vector<double> trajectory_lagged_means(const Trajectory& traj,
                                            const std::vector<std::size_t>& entries,
                                            const std::vector<std::size_t>& diffs);
moments::CovarianceEstimate covariance_from_member_means(
    const std::vector<std::vector<double>>& member_means,
    const std::vector<std::size_t>& lag_steps, const std::vector<std::size_t>& diffs, double dt,
    double omega, const PhysicalConstants& c, std::size_t n_batches);

}  // namespace gravistoch::sde
