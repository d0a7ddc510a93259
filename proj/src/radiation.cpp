#include "gravistoch/radiation.hpp"

#include <cmath>
#include <string>

#include "gravistoch/errors.hpp"
#include "gravistoch/ground_state.hpp"
#include "gravistoch/rng.hpp"
#include "gravistoch/stats.hpp"

namespace gravistoch::radiation {

PhaseAssignment sample_phases(const lattice::ModeGrid& grid, std::uint64_t seed,
                              std::uint64_t member) {
    rng::CounterStream stream(seed, member);
    PhaseAssignment out;
    out.seed = seed;
    out.member = member;
    out.theta1.resize(grid.size());
    out.theta2.resize(grid.size());
    for (std::size_t e = 0; e < grid.size(); ++e) {
        const auto u = stream.uniform2(rng::Domain::phase, 0, static_cast<std::uint32_t>(e));
        out.theta1[e] = 2.0 * kPi * u[0];
        out.theta2[e] = 2.0 * kPi * u[1];
    }
    return out;
}

PhasePair phases_at(const PhaseAssignment& phases, std::size_t entry, bool negated_k) {
    PhasePair p{phases.theta1[entry], phases.theta2[entry]};
    if (negated_k) p.theta2 = std::fmod(p.theta2 + kPi, 2.0 * kPi);
    return p;
}

std::complex<double> evaluate_amplitude(const PhaseAssignment& phases,
                                        const lattice::ModeGrid& grid, std::size_t entry,
                                        double t, const PhysicalConstants& c) {
    const auto& e = grid.entry(entry);
    if (!(e.omega > 0.0)) throw config_error("radiation: omega must be > 0");
    const double amp = std::sqrt(32.0 * kPi * c.G * c.hbar / e.omega);
    const double wt = e.omega * t;
    return {amp * std::cos(wt + phases.theta1[entry]), amp * std::cos(wt + phases.theta2[entry])};
}

lattice::ModeState phase_state(const PhaseAssignment& phases, const lattice::ModeGrid& grid,
                               double t, const PhysicalConstants& c) {
    lattice::ModeState s;
    s.t = t;
    s.q.resize(grid.size());
    for (std::size_t e = 0; e < grid.size(); ++e)
        s.q[e] = evaluate_amplitude(phases, grid, e, t, c);
    return s;
}

double theta_mode_covariance(double omega, double tau, const PhysicalConstants& c) {
    if (!(omega > 0.0)) throw config_error("radiation: omega must be > 0");
    return c.sixteen_pi_G() * c.hbar / omega * std::cos(omega * tau);
}

double symmetrized_quantum_covariance(double omega, double tau, const PhysicalConstants& c) {
    return ground_state::quantum_mode_propagator(omega, std::abs(tau), c).real();
}

std::vector<KurtosisPoint> gaussianity_scan(const std::vector<int>& n_max_list,
                                            std::size_t samples, std::uint64_t seed,
                                            const PhysicalConstants& c, double box_length) {
    if (samples < 10000)
        throw guard_error("gaussianity scan: need at least 10^4 samples (got " +
                          std::to_string(samples) + ")");
    std::vector<KurtosisPoint> out;
    std::vector<double> values(samples);

    for (int n_max : n_max_list) {
        KurtosisPoint pt;
        pt.n_max = n_max;
        pt.samples = samples;
        if (n_max == 0) {
            // single fixed-amplitude phasor at omega = 1
            pt.modes = 1;
            const double amp = std::sqrt(32.0 * kPi * c.G * c.hbar);
            rng::CounterStream stream(seed, 0);
            for (std::size_t s = 0; s < samples; ++s) {
                const auto u = stream.uniform2(rng::Domain::phase, s, 0);
                values[s] = amp * std::cos(2.0 * kPi * u[0]);
            }
        } else {
            const auto grid = lattice::enumerate_modes(box_length, n_max);
            pt.modes = 2 * grid.size();
            // h_11(0, 0): each stored entry and its partner contribute
            // coherently through the first phase only.
            std::vector<double> coeff(grid.size());
            const double scale =
                2.0 / (std::sqrt(2.0) * box_length * std::sqrt(box_length));
            for (std::size_t e = 0; e < grid.size(); ++e) {
                const auto& entry = grid.entry(e);
                coeff[e] = scale * entry.eps[0][0] *
                           std::sqrt(32.0 * kPi * c.G * c.hbar / entry.omega);
            }
            for (std::size_t s = 0; s < samples; ++s) {
                rng::CounterStream stream(seed, s);
                double h = 0.0;
                for (std::size_t e = 0; e < grid.size(); ++e) {
                    const auto u =
                        stream.uniform2(rng::Domain::phase, 0, static_cast<std::uint32_t>(e));
                    h += coeff[e] * std::cos(2.0 * kPi * u[0]);
                }
                values[s] = h;
            }
        }
        const auto k = stats::excess_kurtosis(values, 100);
        pt.excess_kurtosis = k.excess;
        pt.se = k.se;
        out.push_back(pt);
    }
    return out;
}

}  // namespace gravistoch::radiation
